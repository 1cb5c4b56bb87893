//! `Z[M, M^-1, L, t]` and 2x2 matrices over it, enough to evaluate words in
//! the two-bridge representation.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::presentation::Letter;
use crate::error::{Error, Result};
use crate::poly::{big_to_f64, BivarPoly, TriPolyInT};

/// Exponent key `(m, l, t)`; only `m` may be negative.
type Key = (i32, u32, u32);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<Key, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(1, 0, 0, 0)
    }

    pub fn term(c: i64, m: i32, l: u32, t: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((m, l, t), BigInt::from(c));
        p
    }

    /// `M^k` for any integer `k`.
    pub fn m_pow(k: i32) -> Self {
        Self::term(1, k, 0, 0)
    }

    pub fn t() -> Self {
        Self::term(1, 0, 0, 1)
    }

    pub fn l() -> Self {
        Self::term(1, 0, 1, 0)
    }

    fn add_term(&mut self, k: Key, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0, 0)).is_some_and(One::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_t(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.2).max()
    }

    pub fn eval_complex(&self, m: Complex64, l: Complex64, t: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(i, j, k), c)| big_to_f64(c) * m.powi(i) * l.powu(j) * t.powu(k))
            .sum()
    }

    /// Coefficients in `t` at a fixed numerical `M` and `L`, ascending.
    pub fn t_coefficients_at(&self, m: Complex64, l: Complex64) -> Vec<Complex64> {
        let n = self.degree_t().map_or(0, |d| d as usize + 1);
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (&(i, j, k), c) in &self.terms {
            out[k as usize] += big_to_f64(c) * m.powi(i) * l.powu(j);
        }
        out
    }

    /// Clears negative (and common positive) powers of `M` and splits by
    /// powers of `t`. The cleared power is recorded as the denominator when
    /// it was negative.
    pub fn to_tri(&self) -> TriPolyInT {
        let Some(min_m) = self.terms.keys().map(|k| k.0).min() else {
            return TriPolyInT::from_polynomial(Vec::new());
        };
        let n = self.degree_t().unwrap_or(0) as usize + 1;
        let mut rows = vec![BivarPoly::zero(); n];
        for (&(i, j, k), c) in &self.terms {
            let m = u32::try_from(i - min_m).expect("shifted exponent is nonnegative");
            rows[k as usize] = &rows[k as usize] + &BivarPoly::monomial(c.clone(), m, j);
        }
        TriPolyInT::new(rows, u32::try_from(-min_m).unwrap_or(0))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term((a.0 + b.0, a.1 + b.1, a.2 + b.2), ca * cb);
            }
        }
        out
    }
}

/// Row-major 2x2 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub e: [[LaurentPoly; 2]; 2],
}

impl Mat2 {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        Self { e: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Self::new(
            LaurentPoly::one(),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            LaurentPoly::one(),
        )
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    /// Inverse of a determinant-one matrix.
    pub fn adjugate(&self) -> Self {
        Self::new(
            self.e[1][1].clone(),
            -&self.e[0][1],
            -&self.e[1][0],
            self.e[0][0].clone(),
        )
    }

    pub fn eval_complex(&self, m: Complex64, l: Complex64, t: Complex64) -> [[Complex64; 2]; 2] {
        let f = |p: &LaurentPoly| p.eval_complex(m, l, t);
        [
            [f(&self.e[0][0]), f(&self.e[0][1])],
            [f(&self.e[1][0]), f(&self.e[1][1])],
        ]
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let entry = |i: usize, j: usize| {
            &(&self.e[i][0] * &rhs.e[0][j]) + &(&self.e[i][1] * &rhs.e[1][j])
        };
        Mat2::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: &Mat2) -> Mat2 {
        let entry = |i: usize, j: usize| &self.e[i][j] - &rhs.e[i][j];
        Mat2::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }
}

/// `rho(a) = [[M, 1], [0, 1/M]]`, `rho(b) = [[M, 0], [t, 1/M]]`.
pub fn riley_assignments() -> BTreeMap<char, Mat2> {
    let m = LaurentPoly::m_pow(1);
    let mi = LaurentPoly::m_pow(-1);
    BTreeMap::from([
        ('a', Mat2::new(m.clone(), LaurentPoly::one(), LaurentPoly::zero(), mi.clone())),
        ('b', Mat2::new(m, LaurentPoly::zero(), LaurentPoly::t(), mi)),
    ])
}

/// Product of the assigned matrices along `word`; inverse letters use the
/// adjugate, so every assigned matrix must have determinant one.
pub fn sl2_word_eval(word: &[Letter], assignments: &BTreeMap<char, Mat2>) -> Result<Mat2> {
    let used: BTreeSet<char> = word.iter().map(|l| l.generator).collect();
    let mut inverses = BTreeMap::new();
    for g in used {
        let m = assignments.get(&g).ok_or(Error::UnassignedGenerator(g))?;
        inverses.insert(g, m.adjugate());
    }
    let mut acc = Mat2::identity();
    for letter in word {
        let m = if letter.inverse {
            &inverses[&letter.generator]
        } else {
            &assignments[&letter.generator]
        };
        acc = &acc * m;
    }
    Ok(acc)
}
