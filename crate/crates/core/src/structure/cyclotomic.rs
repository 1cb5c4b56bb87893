use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::UnivarPoly;

/// One cyclotomic factor `Phi_order^multiplicity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicFactor {
    pub order: u64,
    pub multiplicity: u32,
}

/// Orders and multiplicities of a product of cyclotomic polynomials.
/// `product_d` is the product of the distinct listed orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicProfile {
    pub factors: Vec<CyclotomicFactor>,
    pub product_d: u64,
}

impl CyclotomicProfile {
    pub fn from_factors(factors: Vec<CyclotomicFactor>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].order < w[1].order));
        let product_d = factors.iter().map(|f| f.order).product();
        Self { factors, product_d }
    }

    pub fn orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }

    pub fn multiplicity(&self, order: u64) -> u32 {
        self.factors
            .iter()
            .find(|f| f.order == order)
            .map_or(0, |f| f.multiplicity)
    }

    /// `prod Phi_d^m`.
    pub fn expand(&self) -> UnivarPoly {
        self.factors.iter().fold(UnivarPoly::one(), |acc, f| {
            &acc * &cyclotomic_unchecked(f.order).pow(f.multiplicity)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclotomicOutcome {
    /// `f = sign * prod Phi_d^m`.
    Product {
        profile: CyclotomicProfile,
        sign: i8,
    },
    NotCyclotomic {
        residual: UnivarPoly,
    },
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// All `d` with `phi(d) <= n`, ascending. Uses `phi(d) >= sqrt(d / 2)`.
pub fn orders_with_phi_at_most(n: usize) -> Vec<u64> {
    let n = n as u64;
    let bound = (2 * n * n).max(2);
    let mut phi: Vec<u64> = (0..=bound).collect();
    for p in 2..=bound as usize {
        if phi[p] == p as u64 {
            let mut k = p;
            while k <= bound as usize {
                phi[k] -= phi[k] / p as u64;
                k += p;
            }
        }
    }
    (1..=bound).filter(|&d| phi[d as usize] <= n).collect()
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<UnivarPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<UnivarPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `d`-th cyclotomic polynomial, by exact division of `x^d - 1` by the
/// cyclotomic polynomials of the proper divisors of `d`.
pub fn cyclotomic(d: u64) -> Result<UnivarPoly> {
    if d == 0 {
        return Err(Error::ZeroCyclotomicOrder);
    }
    Ok(cyclotomic_unchecked(d))
}

pub(crate) fn cyclotomic_arc(d: u64) -> Arc<UnivarPoly> {
    if let Some(p) = cache().lock().unwrap().get(&d) {
        return Arc::clone(p);
    }
    let mut q = &UnivarPoly::monomial(BigInt::one(), d as usize) - &UnivarPoly::one();
    for e in (1..d).filter(|e| d % e == 0) {
        q = q
            .div_exact(&cyclotomic_arc(e))
            .expect("cyclotomic polynomials of divisors divide x^d - 1");
    }
    let q = Arc::new(q);
    cache().lock().unwrap().insert(d, Arc::clone(&q));
    q
}

fn cyclotomic_unchecked(d: u64) -> UnivarPoly {
    (*cyclotomic_arc(d)).clone()
}

/// Greedy trial division by `Phi_d` for every `d` with `phi(d) <= deg f`.
pub fn is_product_of_cyclotomics(f: &UnivarPoly) -> Result<CyclotomicOutcome> {
    let deg = f
        .degree()
        .ok_or(Error::ZeroPolynomial("is_product_of_cyclotomics"))?;
    let monic = |c: &BigInt| c.abs().is_one();
    if !monic(f.leading_coeff().unwrap()) || !monic(&f.coeff(0)) {
        return Ok(CyclotomicOutcome::NotCyclotomic {
            residual: f.clone(),
        });
    }
    let (factors, rest) = divide_out_cyclotomics(f, &orders_with_phi_at_most(deg));
    if rest.is_unit() {
        let sign = if rest.coeff(0).is_positive() { 1 } else { -1 };
        Ok(CyclotomicOutcome::Product {
            profile: CyclotomicProfile::from_factors(factors),
            sign,
        })
    } else {
        Ok(CyclotomicOutcome::NotCyclotomic { residual: rest })
    }
}

/// Divides `f` by `Phi_d` as often as possible for each `d` in `orders`
/// (ascending), returning the factors found and the cofactor.
pub(crate) fn divide_out_cyclotomics(
    f: &UnivarPoly,
    orders: &[u64],
) -> (Vec<CyclotomicFactor>, UnivarPoly) {
    let mut rest = f.clone();
    let mut factors = Vec::new();
    for &d in orders {
        let deg = rest.degree().unwrap_or(0) as u64;
        if euler_phi(d) > deg {
            if deg == 0 {
                break;
            }
            continue;
        }
        let phi_d = cyclotomic_arc(d);
        let mut multiplicity = 0;
        while let Some(q) = rest.div_exact(&phi_d) {
            rest = q;
            multiplicity += 1;
        }
        if multiplicity > 0 {
            factors.push(CyclotomicFactor {
                order: d,
                multiplicity,
            });
        }
    }
    (factors, rest)
}
