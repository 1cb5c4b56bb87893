use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{big_to_f64, print_terms, UnivarPoly};
use crate::error::{Error, Result};

/// Exponent pair of a monomial `M^m L^l`.
///
/// Ordered graded-lexicographically with `L > M`: total degree first, then
/// the `L` exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Exponent {
    pub m: u32,
    pub l: u32,
}

impl Exponent {
    pub const fn new(m: u32, l: u32) -> Self {
        Self { m, l }
    }

    fn total(self) -> u64 {
        u64::from(self.m) + u64::from(self.l)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then(self.l.cmp(&other.l))
            .then(self.m.cmp(&other.m))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `M` and `L` with arbitrary-precision integer
/// coefficients. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

/// What [`BivarPoly::normalize`] removed: `input = sign * content * M^m0 * L^l0 * output`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stripped {
    pub sign: i8,
    pub m0: u32,
    pub l0: u32,
    pub content: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub poly: BivarPoly,
    pub stripped: Stripped,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * M^m * L^l`
    pub fn monomial(c: BigInt, m: u32, l: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponent::new(m, l), c);
        }
        Self { terms }
    }

    pub fn m() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn l() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    /// Builds from `(coefficient, m, l)` triples, summing duplicates.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, u32, u32)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (c, m, l) in terms {
            out.add_term(Exponent::new(m, l), c.into());
        }
        out
    }

    /// Polynomial in `L` alone.
    pub fn from_univar_l(f: &UnivarPoly) -> Self {
        Self::from_terms(
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (c.clone(), 0, k as u32)),
        )
    }

    /// Polynomial in `M` alone.
    pub fn from_univar_m(f: &UnivarPoly) -> Self {
        Self::from_terms(
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (c.clone(), k as u32, 0)),
        )
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, m: u32, l: u32) -> BigInt {
        self.terms
            .get(&Exponent::new(m, l))
            .cloned()
            .unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.m == 0 && e.l == 0)
    }

    /// Leading term under graded-lex with `L > M`.
    pub fn leading_term(&self) -> Option<(Exponent, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn deg_m(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|e| e.m)
            .max()
            .ok_or(Error::UndefinedDegree)
    }

    pub fn deg_l(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|e| e.l)
            .max()
            .ok_or(Error::UndefinedDegree)
    }

    pub fn min_m(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.m).min()
    }

    pub fn min_l(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.l).min()
    }

    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by `M^dm * L^dl`.
    pub fn shift(&self, dm: u32, dl: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponent::new(e.m + dm, e.l + dl), c.clone()))
                .collect(),
        }
    }

    /// Divides by `M^dm * L^dl`; panics if the monomial does not divide.
    pub fn unshift(&self, dm: u32, dl: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponent::new(e.m - dm, e.l - dl), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Reduces to A-normal form: coefficient gcd 1, positive leading
    /// coefficient under graded-lex with `L > M`, and no monomial factor.
    pub fn normalize(&self) -> Result<Normalized> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("normalize"));
        }
        let m0 = self.min_m().unwrap_or(0);
        let l0 = self.min_l().unwrap_or(0);
        let content = self.content();
        let sign: i8 = if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            -1
        } else {
            1
        };
        let divisor = &content * BigInt::from(sign);
        let poly = Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponent::new(e.m - m0, e.l - l0), c / &divisor))
                .collect(),
        };
        Ok(Normalized {
            poly,
            stripped: Stripped {
                sign,
                m0,
                l0,
                content,
            },
        })
    }

    /// Shorthand for the normalized polynomial alone.
    pub fn normalized(&self) -> Result<Self> {
        self.normalize().map(|n| n.poly)
    }

    pub fn is_a_normal(&self) -> bool {
        !self.is_zero()
            && self.content().is_one()
            && self.min_m() == Some(0)
            && self.min_l() == Some(0)
            && self.leading_term().is_some_and(|(_, c)| c.is_positive())
    }

    /// Exact substitution `M = m`.
    pub fn eval_m(&self, m: i64) -> UnivarPoly {
        let mut coeffs: Vec<BigInt> = Vec::new();
        let base = BigInt::from(m);
        for (e, c) in &self.terms {
            let l = e.l as usize;
            if coeffs.len() <= l {
                coeffs.resize(l + 1, BigInt::zero());
            }
            coeffs[l] += c * num_traits::pow(base.clone(), e.m as usize);
        }
        UnivarPoly::from_coeffs(coeffs)
    }

    /// Exact substitution `L = l`, giving a polynomial in `M`.
    pub fn eval_l(&self, l: i64) -> UnivarPoly {
        let mut coeffs: Vec<BigInt> = Vec::new();
        let base = BigInt::from(l);
        for (e, c) in &self.terms {
            let m = e.m as usize;
            if coeffs.len() <= m {
                coeffs.resize(m + 1, BigInt::zero());
            }
            coeffs[m] += c * num_traits::pow(base.clone(), e.l as usize);
        }
        UnivarPoly::from_coeffs(coeffs)
    }

    /// Double-precision evaluation at `M = u`, `L = v`. Terms are summed in
    /// ascending graded-lex order so the result is reproducible.
    pub fn eval_complex(&self, u: Complex64, v: Complex64) -> Complex64 {
        self.terms
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, (e, c)| {
                acc + big_to_f64(c) * u.powu(e.m) * v.powu(e.l)
            })
    }

    /// `sum |c| |u|^m |v|^l`, used to make residuals relative.
    pub fn magnitude_at(&self, u: Complex64, v: Complex64) -> f64 {
        let (ru, rv) = (u.norm(), v.norm());
        self.terms
            .iter()
            .map(|(e, c)| big_to_f64(c).abs() * ru.powi(e.m as i32) * rv.powi(e.l as i32))
            .sum()
    }

    /// Restriction to the line `M = v^(-n)`, `L = v`, with the denominator
    /// cleared: returns `v^(n * deg_m) * p(v^(-n), v)`.
    pub fn substitute_surgery(&self, n: u32) -> Result<UnivarPoly> {
        if n == 0 {
            return Err(Error::ZeroSurgeryCoefficient);
        }
        let dm = self.deg_m()?;
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in &self.terms {
            let k = (n as usize) * ((dm - e.m) as usize) + e.l as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c;
        }
        Ok(UnivarPoly::from_coeffs(coeffs))
    }

    /// Viewed as a polynomial in `L`; `None` unless `deg_m = 0`.
    pub fn as_univar_l(&self) -> Option<UnivarPoly> {
        if self.terms.keys().any(|e| e.m != 0) {
            return None;
        }
        Some(self.eval_m(0))
    }

    /// Coefficients in `Z[M]` of successive powers of `L`.
    pub fn l_coefficients(&self) -> Vec<UnivarPoly> {
        let Ok(dl) = self.deg_l() else {
            return Vec::new();
        };
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); dl as usize + 1];
        for (e, c) in &self.terms {
            let row = &mut rows[e.l as usize];
            if row.len() <= e.m as usize {
                row.resize(e.m as usize + 1, BigInt::zero());
            }
            row[e.m as usize] = c.clone();
        }
        rows.into_iter().map(UnivarPoly::from_coeffs).collect()
    }

    /// Inverse of [`Self::l_coefficients`].
    pub fn from_l_coefficients(rows: &[UnivarPoly]) -> Self {
        let mut out = Self::zero();
        for (l, row) in rows.iter().enumerate() {
            for (m, c) in row.coeffs().iter().enumerate() {
                out.add_term(Exponent::new(m as u32, l as u32), c.clone());
            }
        }
        out
    }

    /// Partial derivative with respect to `L`.
    pub fn derivative_l(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e.l > 0 {
                out.add_term(Exponent::new(e.m, e.l - 1), c * BigInt::from(e.l));
            }
        }
        out
    }

    /// `M^a L^b p(1/M, 1/L)` with `a = min_m + deg_m`, `b = min_l + deg_l`.
    pub fn reciprocal(&self) -> Self {
        let (Ok(dm), Ok(dl)) = (self.deg_m(), self.deg_l()) else {
            return Self::zero();
        };
        let a = dm + self.min_m().unwrap_or(0);
        let b = dl + self.min_l().unwrap_or(0);
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponent::new(a - e.m, b - e.l), c.clone()))
                .collect(),
        }
    }

    /// Mirror image convention: `M^a p(1/M, L)` with `a = min_m + deg_m`.
    pub fn invert_m(&self) -> Self {
        let Ok(dm) = self.deg_m() else {
            return Self::zero();
        };
        let a = dm + self.min_m().unwrap_or(0);
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponent::new(a - e.m, e.l), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient in `Z[M, L]`, `None` if `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lead_e, lead_c) = divisor.leading_term()?;
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.leading_term() {
            if e.m < lead_e.m || e.l < lead_e.l {
                return None;
            }
            let (q, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            let qe = Exponent::new(e.m - lead_e.m, e.l - lead_e.l);
            for (de, dc) in &divisor.terms {
                rem.add_term(Exponent::new(de.m + qe.m, de.l + qe.l), -(&q * dc));
            }
            quot.add_term(qe, q);
        }
        Some(quot)
    }
}

impl fmt::Display for BivarPoly {
    /// Canonical text: descending graded-lex, `L` before `M` within a term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_terms(
            self.terms
                .iter()
                .rev()
                .map(|(e, c)| (c.clone(), vec![('L', e.l), ('M', e.m)])),
        ))
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(Exponent::new(ea.m + eb.m, ea.l + eb.l), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
