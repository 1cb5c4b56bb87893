//! Two-bridge knot group presentations `<a, b | a w = w b>`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: char,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: char, exponent: i8) -> Self {
        Self {
            generator,
            inverse: exponent < 0,
        }
    }

    pub fn inv(self) -> Self {
        Self {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

pub type Word = Vec<Letter>;

pub fn word_to_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Parses whitespace separated letters such as `a b^-1 a`.
pub fn parse_word(s: &str) -> Result<Word> {
    s.split_whitespace()
        .map(|tok| {
            let (g, inverse) = match tok.strip_suffix("^-1") {
                Some(g) => (g, true),
                None => (tok, false),
            };
            let mut chars = g.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_alphabetic() => Ok(Letter {
                    generator: c,
                    inverse,
                }),
                _ => Err(Error::InvalidKnot(format!("bad word letter '{tok}'"))),
            }
        })
        .collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// Exponent sum of one generator.
pub fn exponent_sum(w: &[Letter], generator: char) -> i32 {
    w.iter()
        .filter(|l| l.generator == generator)
        .map(|l| l.exponent())
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub p: u64,
    pub q: u64,
    /// `eps_i = (-1)^floor(i q / p)` for `i = 1..p-1`, with `q - p` in place
    /// of an even `q`.
    pub signs: Vec<i8>,
    pub w: Word,
    /// `a w b^-1 w^-1`.
    pub relator: Word,
    /// `w w* a^(-2 sigma)` with `w*` the letters of `w` reversed and
    /// `sigma` the sum of the signs.
    pub longitude: Word,
}

impl GroupPresentation {
    pub fn sigma(&self) -> i32 {
        self.signs.iter().map(|&s| i32::from(s)).sum()
    }
}

impl Serialize for GroupPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GroupPresentation", 5)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("signs", &self.signs)?;
        st.serialize_field("relator", &word_to_string(&self.relator))?;
        st.serialize_field("longitude", &word_to_string(&self.longitude))?;
        st.end()
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn validate_two_bridge(p: u64, q: u64) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidKnot(format!(
            "two-bridge p must be odd and at least 3, got {p}"
        )));
    }
    if q == 0 || q >= p {
        return Err(Error::InvalidKnot(format!(
            "two-bridge q must satisfy 0 < q < p, got q = {q}"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::InvalidKnot("p and q must be coprime".to_string()));
    }
    Ok(())
}

pub fn two_bridge_presentation(p: u64, q: u64) -> Result<GroupPresentation> {
    validate_two_bridge(p, q)?;
    // The sign sequence is palindromic only for odd q; K(p/q) = K(p/(q-p)).
    let (pi, qi) = (p as i64, if q % 2 == 0 { q as i64 - p as i64 } else { q as i64 });
    let signs: Vec<i8> = (1..pi)
        .map(|i| if (i * qi).div_euclid(pi) % 2 == 0 { 1 } else { -1 })
        .collect();
    let w: Word = signs
        .iter()
        .enumerate()
        .map(|(i, &e)| Letter::new(if i % 2 == 0 { 'b' } else { 'a' }, e))
        .collect();
    let mut relator = vec![Letter::new('a', 1)];
    relator.extend(&w);
    relator.push(Letter::new('b', -1));
    relator.extend(invert(&w));
    let relator = free_reduce(&relator);

    let sigma: i32 = signs.iter().map(|&s| i32::from(s)).sum();
    let mut longitude = w.clone();
    longitude.extend(w.iter().rev());
    let correction = Letter::new('a', if sigma > 0 { -1 } else { 1 });
    longitude.extend(std::iter::repeat(correction).take(2 * sigma.unsigned_abs() as usize));
    let longitude = free_reduce(&longitude);

    Ok(GroupPresentation {
        p,
        q,
        signs,
        w,
        relator,
        longitude,
    })
}
