use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial in one variable, coefficients stored by ascending
/// exponent. Trailing zeros are never stored, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnivarPoly {
    coeffs: Vec<BigInt>,
}

impl UnivarPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `x - r`
    pub fn linear_root(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for the constants `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn try_degree(&self) -> Result<usize> {
        self.degree().ok_or(Error::UndefinedDegree)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Largest `k` with `x^k` dividing the polynomial.
    pub fn low_degree(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(k <= self.low_degree());
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
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

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in double precision.
    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + big_to_f64(c))
    }

    /// `sum |c_k| |x|^k`, the natural scale for relative residuals.
    pub fn magnitude_at(&self, x: Complex64) -> f64 {
        let r = x.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + big_to_f64(c).abs())
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Quotient when `divisor` divides `self` exactly in `Z[x]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_integral(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Long division that stays inside `Z[x]`; `None` as soon as a quotient
    /// coefficient would be fractional. Panics on a zero divisor.
    pub fn div_rem_integral(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (s, dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + s;
                rem[idx] -= &q * dc;
            }
            quot[k - dd] = q;
        }
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Pseudo-remainder `lc(g)^(deg f - deg g + 1) f mod g`, with the
    /// multiplier applied exactly even when leading terms cancel early.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo-remainder by zero");
        let Some(df) = self.degree() else {
            return Self::zero();
        };
        if df < dd {
            return self.clone();
        }
        let lc = &divisor.coeffs[dd];
        let mut rem = self.clone();
        let mut steps = 0;
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let lr = rem.coeffs[dr].clone();
            let sub = divisor.scale(&lr).shift_up(dr - dd);
            rem = &rem.scale(lc) - &sub;
            steps += 1;
        }
        let missing = (df - dd + 1) - steps;
        rem.scale(&num_traits::pow(lc.clone(), missing))
    }

    /// Renders with the given variable name.
    pub fn display_with(&self, var: char) -> String {
        crate::poly::print_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c.clone(), vec![(var, k as u32)])),
        )
    }
}

/// Greatest common divisor in `Z[x]`, normalized to a positive leading
/// coefficient. Uses a primitive remainder sequence.
pub fn gcd_univar(f: &UnivarPoly, g: &UnivarPoly) -> Result<UnivarPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    if f.is_zero() {
        return Ok(g.primitive_part().scale(&g.content()));
    }
    if g.is_zero() {
        return Ok(f.primitive_part().scale(&f.content()));
    }
    let content = f.content().gcd(&g.content());
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (f.primitive_part(), g.primitive_part())
    } else {
        (g.primitive_part(), f.primitive_part())
    };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive_part();
    }
    Ok(a.primitive_part().scale(&content))
}

/// Square-free part `f / gcd(f, f')`, primitive with positive leading
/// coefficient.
pub fn squarefree_univar(f: &UnivarPoly) -> Result<UnivarPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree_univar"));
    }
    if f.degree() == Some(0) {
        return Ok(UnivarPoly::one());
    }
    let g = gcd_univar(f, &f.derivative())?;
    let q = f
        .primitive_part()
        .div_exact(&g.primitive_part())
        .expect("gcd divides its argument");
    Ok(q.primitive_part())
}

/// Square-free decomposition: returns `(g_k, k)` with `f = ± c * prod g_k^k`
/// for a constant `c`, each `g_k` primitive, square-free, pairwise coprime
/// and nonconstant, ordered by increasing `k`.
pub fn squarefree_decomposition(f: &UnivarPoly) -> Result<Vec<(UnivarPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree_decomposition"));
    }
    // S_j = product of the factors with multiplicity >= j.
    let mut layers = Vec::new();
    let mut rest = f.primitive_part();
    while rest.degree().unwrap_or(0) > 0 {
        let s = squarefree_univar(&rest)?;
        rest = rest.div_exact(&s).expect("square-free part divides");
        layers.push(s);
    }
    let mut out = Vec::new();
    for (j, s) in layers.iter().enumerate() {
        let g = match layers.get(j + 1) {
            Some(next) => s.div_exact(next).expect("layers are nested"),
            None => s.clone(),
        };
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.primitive_part(), j as u32 + 1));
        }
    }
    Ok(out)
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for UnivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('L'))
    }
}

impl Add for &UnivarPoly {
    type Output = UnivarPoly;
    fn add(self, rhs: &UnivarPoly) -> UnivarPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UnivarPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UnivarPoly {
    type Output = UnivarPoly;
    fn sub(self, rhs: &UnivarPoly) -> UnivarPoly {
        self + &(-rhs)
    }
}

impl Neg for &UnivarPoly {
    type Output = UnivarPoly;
    fn neg(self) -> UnivarPoly {
        UnivarPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UnivarPoly {
    type Output = UnivarPoly;
    fn mul(self, rhs: &UnivarPoly) -> UnivarPoly {
        if self.is_zero() || rhs.is_zero() {
            return UnivarPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UnivarPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for UnivarPoly {
            type Output = UnivarPoly;
            fn $m(self, rhs: UnivarPoly) -> UnivarPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
