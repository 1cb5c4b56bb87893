//! Structural checks on a given A-polynomial: the abelian factor, cyclotomic
//! structure when `deg_M = 0`, evaluations at `M = ±1`, the `deg_M != 0`
//! verdict and the `(M, L) -> (1/M, 1/L)` symmetry.

mod cyclotomic;
mod report;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{BivarPoly, UnivarPoly};

pub use cyclotomic::{
    cyclotomic, euler_phi, is_product_of_cyclotomics, orders_with_phi_at_most, CyclotomicFactor,
    CyclotomicOutcome, CyclotomicProfile,
};
pub(crate) use cyclotomic::divide_out_cyclotomics;
pub use report::{analyze, AnalysisReport};

/// `sign * L^a (L-1)^b (L+1)^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnitEvaluationForm {
    pub sign: i8,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl UnitEvaluationForm {
    pub fn expand(&self) -> UnivarPoly {
        let lm1 = UnivarPoly::from_i64(&[-1, 1]);
        let lp1 = UnivarPoly::from_i64(&[1, 1]);
        let core = &lm1.pow(self.b) * &lp1.pow(self.c);
        core.shift_up(self.a as usize)
            .scale(&BigInt::from(self.sign))
    }
}

impl fmt::Display for UnitEvaluationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (base, e) in [("L", self.a), ("(L - 1)", self.b), ("(L + 1)", self.c)] {
            match e {
                0 => {}
                1 => parts.push(base.to_string()),
                e => parts.push(format!("{base}^{e}")),
            }
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        if self.sign < 0 {
            write!(f, "-{body}")
        } else {
            f.write_str(&body)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitEvaluation {
    Form(UnitEvaluationForm),
    /// The evaluation is not of the form; `residual` is what remains after
    /// dividing out every `L`, `L - 1` and `L + 1`.
    Failure {
        evaluation: UnivarPoly,
        residual: UnivarPoly,
    },
}

impl UnitEvaluation {
    pub fn is_form(&self) -> bool {
        matches!(self, UnitEvaluation::Form(_))
    }
}

/// Leading-coefficient test of `A(±1, L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonicOutcome {
    Monic,
    NotMonic,
    /// `A(±1, L)` is identically zero.
    Vanishing,
}

impl MonicOutcome {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            MonicOutcome::Monic => Some(true),
            MonicOutcome::NotMonic => Some(false),
            MonicOutcome::Vanishing => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// `deg_M != 0`.
    Pass,
    /// Claimed nontrivial knot with `deg_M = 0`.
    Fail,
    /// `L - 1` for a knot not claimed to be nontrivial.
    UnknotOk,
    /// `deg_M = 0`, not `L - 1`, and no nontriviality claim was made.
    NoClaim,
    /// Per-component polynomials are exempt.
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::UnknotOk => "UNKNOT_OK",
            Verdict::NoClaim => "NO_CLAIM",
            Verdict::NotApplicable => "NOT_APPLICABLE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The `L`-polynomial is not `±` a product of cyclotomics.
    NotCyclotomic { residual: UnivarPoly },
    MissingAbelianFactor,
    RepeatedAbelianFactor { multiplicity: u32 },
    RepeatedFactor { order: u64, multiplicity: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotCyclotomic { residual } => {
                write!(f, "not a product of cyclotomic polynomials (residual {residual})")
            }
            Violation::MissingAbelianFactor => f.write_str("abelian factor L - 1 is missing"),
            Violation::RepeatedAbelianFactor { multiplicity } => {
                write!(f, "abelian factor L - 1 repeated {multiplicity} times")
            }
            Violation::RepeatedFactor {
                order,
                multiplicity,
            } => write!(f, "cyclotomic factor of order {order} repeated {multiplicity} times"),
        }
    }
}

/// `A = sign * (L - 1) * prod Phi_{d_i}` with distinct `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialDecomposition {
    pub sign: i8,
    pub abelian_multiplicity: u32,
    /// Factors other than `L - 1`; `profile.product_d` is `d = d_1 ... d_k`.
    pub profile: CyclotomicProfile,
}

impl TrivialDecomposition {
    pub fn d(&self) -> u64 {
        self.profile.product_d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MdegTrivialOutcome {
    Decomposed(TrivialDecomposition),
    Violation(Violation),
}

/// Decomposes a polynomial with `deg_M = 0` as `(L - 1)` times distinct
/// cyclotomic factors.
pub fn mdeg_trivial_decomposition(a: &BivarPoly) -> Result<MdegTrivialOutcome> {
    let dm = a.deg_m()?;
    if dm != 0 {
        return Err(Error::NonzeroMDegree(dm));
    }
    let f = a.as_univar_l().expect("deg_M = 0");
    let (profile, sign) = match is_product_of_cyclotomics(&f)? {
        CyclotomicOutcome::NotCyclotomic { residual } => {
            return Ok(MdegTrivialOutcome::Violation(Violation::NotCyclotomic {
                residual,
            }))
        }
        CyclotomicOutcome::Product { profile, sign } => (profile, sign),
    };
    let abelian = profile.multiplicity(1);
    let violation = match abelian {
        0 => Some(Violation::MissingAbelianFactor),
        1 => None,
        multiplicity => Some(Violation::RepeatedAbelianFactor { multiplicity }),
    }
    .or_else(|| {
        profile
            .factors
            .iter()
            .find(|f| f.multiplicity > 1)
            .map(|f| Violation::RepeatedFactor {
                order: f.order,
                multiplicity: f.multiplicity,
            })
    });
    if let Some(v) = violation {
        return Ok(MdegTrivialOutcome::Violation(v));
    }
    let rest = profile
        .factors
        .iter()
        .copied()
        .filter(|f| f.order != 1)
        .collect();
    Ok(MdegTrivialOutcome::Decomposed(TrivialDecomposition {
        sign,
        abelian_multiplicity: abelian,
        profile: CyclotomicProfile::from_factors(rest),
    }))
}

/// Splits `A(m, L)` as `±L^a (L-1)^b (L+1)^c`, dividing in the fixed order
/// `L`, `L - 1`, `L + 1`.
pub fn check_unit_evaluation(a: &BivarPoly, m: i64) -> Result<UnitEvaluation> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial("check_unit_evaluation"));
    }
    let evaluation = a.eval_m(m);
    if evaluation.is_zero() {
        return Ok(UnitEvaluation::Failure {
            residual: evaluation.clone(),
            evaluation,
        });
    }
    let a_exp = evaluation.low_degree();
    let mut rest = evaluation.shift_down(a_exp);
    let mut strip = |factor: &UnivarPoly| {
        let mut k = 0;
        while let Some(q) = rest.div_exact(factor) {
            rest = q;
            k += 1;
        }
        k
    };
    let b = strip(&UnivarPoly::from_i64(&[-1, 1]));
    let c = strip(&UnivarPoly::from_i64(&[1, 1]));
    if rest.is_unit() {
        Ok(UnitEvaluation::Form(UnitEvaluationForm {
            sign: if rest.coeff(0).is_positive() { 1 } else { -1 },
            a: a_exp as u32,
            b,
            c,
        }))
    } else {
        Ok(UnitEvaluation::Failure {
            evaluation,
            residual: rest,
        })
    }
}

/// Whether `A(1, L)` and `A(-1, L)` have leading coefficient `±1`.
pub fn check_monic_at_units(a: &BivarPoly) -> Result<(MonicOutcome, MonicOutcome)> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial("check_monic_at_units"));
    }
    let test = |m| match a.eval_m(m).leading_coeff() {
        None => MonicOutcome::Vanishing,
        Some(c) if c.abs().is_one() => MonicOutcome::Monic,
        Some(_) => MonicOutcome::NotMonic,
    };
    Ok((test(1), test(-1)))
}

/// The `deg_M != 0` verdict. Depends only on the A-normal form of `a`.
pub fn theorem1_verdict(a: &BivarPoly, claims_nontrivial_knot: bool) -> Result<Verdict> {
    let a = a.normalized()?;
    if a.deg_m()? != 0 {
        return Ok(Verdict::Pass);
    }
    let unknot = BivarPoly::from_terms([(1, 0, 1), (-1, 0, 0)]);
    Ok(match (claims_nontrivial_knot, a == unknot) {
        (true, _) => Verdict::Fail,
        (false, true) => Verdict::UnknotOk,
        (false, false) => Verdict::NoClaim,
    })
}

/// Witness for `A(M, L) = sign * M^alpha L^beta A(1/M, 1/L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryWitness {
    pub alpha: u32,
    pub beta: u32,
    pub sign: i8,
}

pub fn symmetry_check(a: &BivarPoly) -> Result<Option<SymmetryWitness>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial("symmetry_check"));
    }
    let alpha = a.deg_m()? + a.min_m().unwrap_or(0);
    let beta = a.deg_l()? + a.min_l().unwrap_or(0);
    let r = a.reciprocal();
    let sign = if &r == a {
        1
    } else if r == -a {
        -1
    } else {
        return Ok(None);
    };
    Ok(Some(SymmetryWitness { alpha, beta, sign }))
}

/// Multiplicity of `L - 1` as a factor of `a`.
pub fn abelian_multiplicity(a: &BivarPoly) -> u32 {
    let lm1 = BivarPoly::from_terms([(1, 0, 1), (-1, 0, 0)]);
    let mut rest = a.clone();
    let mut k = 0;
    while !rest.is_zero() {
        match rest.div_exact(&lm1) {
            Some(q) => {
                rest = q;
                k += 1;
            }
            None => break,
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bp(terms: &[(i64, u32, u32)]) -> BivarPoly {
        BivarPoly::from_terms(terms.iter().copied())
    }
    fn lm1() -> BivarPoly {
        bp(&[(1, 0, 1), (-1, 0, 0)])
    }
    fn lp1() -> BivarPoly {
        bp(&[(1, 0, 1), (1, 0, 0)])
    }
    fn trefoil() -> BivarPoly {
        &lm1() * &bp(&[(1, 6, 1), (1, 0, 0)])
    }

    #[test]
    fn decomposition_examples() {
        let MdegTrivialOutcome::Decomposed(dec) = mdeg_trivial_decomposition(&(&lm1() * &lp1())).unwrap() else {
            panic!()
        };
        assert_eq!((dec.profile.orders(), dec.d()), (vec![2], 2));

        let MdegTrivialOutcome::Decomposed(dec) = mdeg_trivial_decomposition(&lm1()).unwrap() else {
            panic!()
        };
        assert!(dec.profile.factors.is_empty());
        assert_eq!(dec.d(), 1);

        assert_eq!(
            mdeg_trivial_decomposition(&(&lm1().pow(2) * &lp1())).unwrap(),
            MdegTrivialOutcome::Violation(Violation::RepeatedAbelianFactor { multiplicity: 2 })
        );
        assert_eq!(
            mdeg_trivial_decomposition(&(&lm1() * &lp1().pow(2))).unwrap(),
            MdegTrivialOutcome::Violation(Violation::RepeatedFactor { order: 2, multiplicity: 2 })
        );
        assert_eq!(
            mdeg_trivial_decomposition(&lp1()).unwrap(),
            MdegTrivialOutcome::Violation(Violation::MissingAbelianFactor)
        );
        assert_eq!(
            mdeg_trivial_decomposition(&trefoil()),
            Err(Error::NonzeroMDegree(6))
        );
    }

    #[test]
    fn unit_evaluation_examples() {
        for m in [1, -1] {
            assert_eq!(
                check_unit_evaluation(&lm1(), m).unwrap(),
                UnitEvaluation::Form(UnitEvaluationForm { sign: 1, a: 0, b: 1, c: 0 })
            );
        }
        assert_eq!(
            check_unit_evaluation(&trefoil(), -1).unwrap(),
            UnitEvaluation::Form(UnitEvaluationForm { sign: 1, a: 0, b: 1, c: 1 })
        );
        let bad = bp(&[(1, 0, 2), (3, 1, 1), (1, 0, 0)]);
        let UnitEvaluation::Failure { residual, .. } = check_unit_evaluation(&bad, 1).unwrap() else {
            panic!()
        };
        assert_eq!(residual, UnivarPoly::from_i64(&[1, 3, 1]));
        assert!(check_unit_evaluation(&BivarPoly::zero(), 1).is_err());
    }

    #[test]
    fn monic_examples() {
        use MonicOutcome::*;
        assert_eq!(check_monic_at_units(&lm1()).unwrap(), (Monic, Monic));
        assert_eq!(
            check_monic_at_units(&bp(&[(2, 0, 1), (-1, 0, 0)])).unwrap(),
            (NotMonic, NotMonic)
        );
        assert_eq!(check_monic_at_units(&trefoil()).unwrap(), (Monic, Monic));
        // M - 1 vanishes at M = 1
        assert_eq!(
            check_monic_at_units(&bp(&[(1, 1, 0), (-1, 0, 0)])).unwrap().0,
            Vanishing
        );
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(theorem1_verdict(&lm1(), false).unwrap(), Verdict::UnknotOk);
        assert_eq!(theorem1_verdict(&trefoil(), true).unwrap(), Verdict::Pass);
        assert_eq!(theorem1_verdict(&(&lm1() * &lp1()), true).unwrap(), Verdict::Fail);
        assert_eq!(theorem1_verdict(&(&lm1() * &lp1()), false).unwrap(), Verdict::NoClaim);
        assert_eq!(theorem1_verdict(&lm1(), true).unwrap(), Verdict::Fail);
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(
            symmetry_check(&lm1()).unwrap(),
            Some(SymmetryWitness { alpha: 0, beta: 1, sign: -1 })
        );
        assert!(symmetry_check(&bp(&[(1, 6, 1), (1, 0, 0)])).unwrap().is_some());
        assert_eq!(symmetry_check(&bp(&[(1, 0, 1), (1, 1, 0), (1, 0, 0)])).unwrap(), None);
    }

    #[test]
    fn abelian_multiplicity_counts() {
        assert_eq!(abelian_multiplicity(&trefoil()), 1);
        assert_eq!(abelian_multiplicity(&lm1().pow(3)), 3);
        assert_eq!(abelian_multiplicity(&lp1()), 0);
    }

    fn arb_poly() -> impl Strategy<Value = BivarPoly> {
        prop::collection::vec((-5i64..=5, 0u32..3, 0u32..4), 1..6).prop_map(BivarPoly::from_terms)
    }

    proptest! {
        #[test]
        fn unit_form_reconstructs(a in arb_poly(), m in prop::sample::select(vec![1i64, -1])) {
            prop_assume!(!a.is_zero());
            if let UnitEvaluation::Form(form) = check_unit_evaluation(&a, m).unwrap() {
                prop_assert_eq!(form.expand(), a.eval_m(m));
            }
        }

        #[test]
        fn verdict_is_normalization_invariant(a in arb_poly(), claim: bool, k in 1i64..5, s in 0u32..3) {
            prop_assume!(!a.is_zero());
            let scaled = a.scale(&BigInt::from(-k)).shift(s, 0);
            prop_assert_eq!(theorem1_verdict(&a, claim).unwrap(), theorem1_verdict(&scaled, claim).unwrap());
        }
    }
}
