//! Recursive-descent parser for polynomial expressions in `M` and `L`.
//!
//! Accepts the canonical term grammar (`[coeff]['*']['M'['^'n]]['*']['L'['^'n]]`
//! joined by `+`/`-`) and a superset of it: variables in either order,
//! juxtaposition as multiplication, parentheses, and `^` on any factor.
//!
//! ```text
//! expr    := ['-'] product (('+' | '-') product)*
//! product := power (['*'] power)*
//! power   := atom ['^' uint]
//! atom    := uint | 'M' | 'L' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::BivarPoly;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before
            .rfind('\n')
            .map_or(before.chars().count(), |i| before[i + 1..].chars().count())
            + 1;
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> char {
        let c = self.src[self.pos..].chars().next().expect("bump past end");
        self.pos += c.len_utf8();
        c
    }

    fn describe(c: Option<char>) -> String {
        match c {
            Some(c) => format!("unexpected '{c}'"),
            None => "unexpected end of input".to_string(),
        }
    }

    fn uint(&mut self) -> Result<(BigInt, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            let c = self.peek();
            return Err(self.error_at(start, format!("{}, expected an integer", Self::describe(c))));
        }
        let n = self.src[start..self.pos].parse().expect("digits parse");
        Ok((n, start))
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let negate = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let first = self.product()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = &acc + &self.product()?;
                }
                Some('-') => {
                    self.bump();
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(c: Option<char>) -> bool {
        matches!(c, Some('M' | 'L' | '(')) || c.is_some_and(|c| c.is_ascii_digit())
    }

    fn product(&mut self) -> Result<BivarPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = &acc * &self.power()?;
                }
                c if Self::starts_atom(c) => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<BivarPoly> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let (e, at) = self.uint()?;
        let e = u32::try_from(e).map_err(|_| self.error_at(at, "exponent too large"))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<BivarPoly> {
        let c = self.peek();
        match c {
            Some('M') => {
                self.bump();
                Ok(BivarPoly::m())
            }
            Some('L') => {
                self.bump();
                Ok(BivarPoly::l())
            }
            Some('(') => {
                let open = self.pos;
                self.bump();
                let inner = self.expr()?;
                match self.peek() {
                    Some(')') => {
                        self.bump();
                        Ok(inner)
                    }
                    other => {
                        let at = self.pos;
                        let (line, column) = self.location(open);
                        Err(self.error_at(
                            at,
                            format!(
                                "{}, expected ')' to close '(' at {line}:{column}",
                                Self::describe(other)
                            ),
                        ))
                    }
                }
            }
            Some(d) if d.is_ascii_digit() => Ok(BivarPoly::constant(self.uint()?.0)),
            other => Err(self.error_at(
                self.pos,
                format!("{}, expected a number, 'M', 'L' or '('", Self::describe(other)),
            )),
        }
    }
}

/// Parses a polynomial expression. The result is exact and not normalized.
pub fn parse_poly(text: &str) -> Result<BivarPoly> {
    let mut p = Parser::new(text);
    let out = p.expr()?;
    match p.peek() {
        None => Ok(out),
        other => Err(p.error_at(p.pos, Parser::describe(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bp(terms: &[(i64, u32, u32)]) -> BivarPoly {
        BivarPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(parse_poly("L - 1").unwrap(), bp(&[(1, 0, 1), (-1, 0, 0)]));
        let trefoil = bp(&[(1, 6, 2), (-1, 6, 1), (1, 0, 1), (-1, 0, 0)]);
        assert_eq!(parse_poly("L^2*M^6 - L*M^6 + L - 1").unwrap(), trefoil);
        assert_eq!(parse_poly("M^6L^2 - M^6*L + L - 1").unwrap(), trefoil);
        assert_eq!(parse_poly("(L-1)*(L*M^6+1)").unwrap(), trefoil);
        assert_eq!(parse_poly("-3M^2L").unwrap(), bp(&[(-3, 2, 1)]));
        assert_eq!(parse_poly("2*3").unwrap(), bp(&[(6, 0, 0)]));
        assert_eq!(parse_poly("(L+1)^2").unwrap(), bp(&[(1, 0, 2), (2, 0, 1), (1, 0, 0)]));
    }

    #[test]
    fn big_coefficients() {
        let p = parse_poly("123456789012345678901234567890 L").unwrap();
        assert_eq!(
            p.coeff(0, 1),
            "123456789012345678901234567890".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn double_plus_is_rejected_at_the_second_plus() {
        let err = parse_poly("L + + 1").unwrap_err();
        let Error::Syntax { line, column, .. } = err else {
            panic!("expected a syntax error");
        };
        assert_eq!((line, column), (1, 5));
    }

    #[test]
    fn error_positions() {
        let Error::Syntax { line, column, message } = parse_poly("L +\n  (M - 1").unwrap_err() else {
            panic!();
        };
        assert_eq!((line, column), (2, 9));
        assert!(message.contains("expected ')'"), "{message}");
        assert!(matches!(parse_poly(""), Err(Error::Syntax { line: 1, column: 1, .. })));
        assert!(matches!(parse_poly("L^"), Err(Error::Syntax { column: 3, .. })));
        assert!(matches!(parse_poly("L x"), Err(Error::Syntax { column: 3, .. })));
        assert!(matches!(parse_poly("L^99999999999"), Err(Error::Syntax { .. })));
    }

    fn arb_poly() -> impl Strategy<Value = BivarPoly> {
        proptest::collection::vec((-50i64..=50, 0u32..6, 0u32..6), 0..8)
            .prop_map(|t| BivarPoly::from_terms(t))
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(p in arb_poly()) {
            prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p.clone());
            if let Ok(n) = p.normalized() {
                prop_assert_eq!(parse_poly(&n.to_string()).unwrap(), n);
            }
        }
    }
}
