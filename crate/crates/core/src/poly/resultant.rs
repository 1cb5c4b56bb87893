use num_bigint::BigInt;
use num_traits::One;

use super::BivarPoly;
use crate::error::{Error, Result};

/// Polynomial in an elimination variable `t` with coefficients in `Z[M, L]`.
///
/// Elimination in the knot group produces Laurent polynomials in `M`; the
/// negative powers are cleared into `m_denominator`, so the represented value
/// is `sum coeffs[k] t^k / M^m_denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriPolyInT {
    coeffs: Vec<BivarPoly>,
    m_denominator: u32,
}

impl TriPolyInT {
    pub fn new(mut coeffs: Vec<BivarPoly>, m_denominator: u32) -> Self {
        while coeffs.last().is_some_and(BivarPoly::is_zero) {
            coeffs.pop();
        }
        Self {
            coeffs,
            m_denominator,
        }
    }

    pub fn from_polynomial(coeffs: Vec<BivarPoly>) -> Self {
        Self::new(coeffs, 0)
    }

    pub fn coeffs(&self) -> &[BivarPoly] {
        &self.coeffs
    }

    pub fn m_denominator(&self) -> u32 {
        self.m_denominator
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BivarPoly> {
        self.coeffs.last()
    }

    fn scale(&self, c: &BivarPoly) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), 0)
    }

    fn sub_shifted(&self, other: &Self, c: &BivarPoly, k: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() + k {
            coeffs.resize(other.coeffs.len() + k, BivarPoly::zero());
        }
        for (i, a) in other.coeffs.iter().enumerate() {
            coeffs[i + k] = &coeffs[i + k] - &(a * c);
        }
        Self::new(coeffs, 0)
    }

    /// Exact pseudo-remainder `lc(g)^(deg f - deg g + 1) f mod g`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo-remainder by zero");
        let Some(df) = self.degree() else {
            return self.clone();
        };
        if df < dd {
            return self.clone();
        }
        let lc = divisor.leading_coeff().unwrap();
        let mut rem = Self::new(self.coeffs.clone(), 0);
        let mut steps = 0;
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let lr = rem.coeffs[dr].clone();
            rem = rem.scale(lc).sub_shifted(divisor, &lr, dr - dd);
            steps += 1;
        }
        let missing = (df - dd + 1) - steps;
        if missing > 0 {
            rem = rem.scale(&lc.pow(missing as u32));
        }
        rem
    }

    fn div_exact_scalar(&self, c: &BivarPoly) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|a| a.div_exact(c).expect("subresultant division is exact"))
                .collect(),
            0,
        )
    }
}

/// Resultant with respect to `t` of the cleared numerators of `p` and `q`,
/// by the fraction-free subresultant remainder sequence.
///
/// Recorded `M` denominators are ignored: the result is the resultant of the
/// polynomial parts, which differs from the Laurent resultant by a power of
/// `M` only.
pub fn resultant_t(p: &TriPolyInT, q: &TriPolyInT) -> Result<BivarPoly> {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        if p.is_zero() && q.is_zero() {
            return Err(Error::DegenerateResultant);
        }
        // One argument is identically zero in t.
        return Ok(BivarPoly::zero());
    };
    if dp == 0 && dq == 0 {
        return Err(Error::DegenerateResultant);
    }
    if dp == 0 {
        return Ok(p.coeffs[0].pow(dq as u32));
    }
    if dq == 0 {
        return Ok(q.coeffs[0].pow(dp as u32));
    }

    let (mut a, mut b, mut negate) = if dp >= dq {
        (p.clone(), q.clone(), false)
    } else {
        (q.clone(), p.clone(), dp % 2 == 1 && dq % 2 == 1)
    };
    let mut g = BivarPoly::one();
    let mut h = BivarPoly::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.div_exact_scalar(&(&g * &h.pow(delta)));
        g = a.leading_coeff().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant scaling is exact"),
        };
        match b.degree() {
            None => return Ok(BivarPoly::zero()),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.degree().unwrap() as u32;
    let lb = b.leading_coeff().unwrap();
    let res = if da == 0 {
        BivarPoly::one()
    } else {
        lb.pow(da)
            .div_exact(&h.pow(da - 1))
            .expect("subresultant scaling is exact")
    };
    Ok(if negate {
        res.scale(&-BigInt::one())
    } else {
        res
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn bp(terms: &[(i64, u32, u32)]) -> BivarPoly {
        BivarPoly::from_terms(terms.iter().copied())
    }

    fn tri(cs: Vec<BivarPoly>) -> TriPolyInT {
        TriPolyInT::from_polynomial(cs)
    }

    /// Determinant of the Sylvester matrix by memoized cofactor expansion
    /// along the first row of each minor.
    fn sylvester_oracle(p: &[BivarPoly], q: &[BivarPoly]) -> BivarPoly {
        let (m, n) = (p.len() - 1, q.len() - 1);
        let size = m + n;
        let mut rows = vec![vec![BivarPoly::zero(); size]; size];
        for i in 0..n {
            for (k, c) in p.iter().rev().enumerate() {
                rows[i][i + k] = c.clone();
            }
        }
        for i in 0..m {
            for (k, c) in q.iter().rev().enumerate() {
                rows[n + i][i + k] = c.clone();
            }
        }
        fn det(
            rows: &[Vec<BivarPoly>],
            row: usize,
            cols: u32,
            memo: &mut HashMap<u32, BivarPoly>,
        ) -> BivarPoly {
            if row == rows.len() {
                return BivarPoly::one();
            }
            if let Some(v) = memo.get(&cols) {
                return v.clone();
            }
            let mut acc = BivarPoly::zero();
            let mut sign = 1i64;
            for c in 0..rows.len() {
                if cols & (1 << c) != 0 {
                    continue;
                }
                if !rows[row][c].is_zero() {
                    let minor = det(rows, row + 1, cols | (1 << c), memo);
                    let term = &rows[row][c] * &minor;
                    acc = if sign > 0 { &acc + &term } else { &acc - &term };
                }
                sign = -sign;
            }
            memo.insert(cols, acc.clone());
            acc
        }
        det(&rows, 0, 0, &mut HashMap::new())
    }

    #[test]
    fn linear_case() {
        let f = bp(&[(2, 1, 0), (1, 0, 1)]);
        let g = bp(&[(-3, 2, 2), (5, 0, 0)]);
        let r = resultant_t(
            &tri(vec![-&f, BivarPoly::one()]),
            &tri(vec![-&g, BivarPoly::one()]),
        )
        .unwrap();
        // Res(t - f, t - g) = (t - g)|_{t = f}, the Sylvester convention.
        assert_eq!(r, &f - &g);
        let p = vec![-&f, BivarPoly::one()];
        let q = vec![-&g, BivarPoly::one()];
        assert_eq!(sylvester_oracle(&p, &q), r);
    }

    #[test]
    fn substitution_case() {
        let r = resultant_t(
            &tri(vec![-&BivarPoly::m(), BivarPoly::zero(), BivarPoly::one()]),
            &tri(vec![-&BivarPoly::l(), BivarPoly::one()]),
        )
        .unwrap();
        assert_eq!(r, bp(&[(1, 0, 2), (-1, 1, 0)]));
    }

    #[test]
    fn constant_case_matches_sylvester() {
        let p = vec![BivarPoly::one(), BivarPoly::zero(), BivarPoly::one()];
        let q = vec![-&BivarPoly::one(), BivarPoly::zero(), BivarPoly::one()];
        let r = resultant_t(&tri(p.clone()), &tri(q.clone())).unwrap();
        assert_eq!(r, BivarPoly::constant(4.into()));
        assert_eq!(sylvester_oracle(&p, &q), r);
    }

    #[test]
    fn degenerate_inputs() {
        let c = tri(vec![BivarPoly::m()]);
        assert_eq!(resultant_t(&c, &c), Err(Error::DegenerateResultant));
        let lin = tri(vec![BivarPoly::one(), BivarPoly::l()]);
        assert_eq!(resultant_t(&c, &lin).unwrap(), BivarPoly::m());
    }

    fn arb_coeff() -> impl Strategy<Value = BivarPoly> {
        // total degree <= 3
        prop::collection::vec((-9i64..=9, 0u32..=3, 0u32..=3), 0..4).prop_map(|ts| {
            BivarPoly::from_terms(ts.into_iter().filter(|&(_, m, l)| m + l <= 3))
        })
    }

    fn arb_tri() -> impl Strategy<Value = Vec<BivarPoly>> {
        (1usize..=4).prop_flat_map(|d| {
            (prop::collection::vec(arb_coeff(), d), arb_coeff()).prop_map(|(mut v, lead)| {
                let lead = if lead.is_zero() { BivarPoly::one() } else { lead };
                v.push(lead);
                v
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn agrees_with_sylvester(p in arb_tri(), q in arb_tri()) {
            let r = resultant_t(&tri(p.clone()), &tri(q.clone())).unwrap();
            prop_assert_eq!(r, sylvester_oracle(&p, &q));
        }
    }
}
