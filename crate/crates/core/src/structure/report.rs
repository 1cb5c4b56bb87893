use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::{
    abelian_multiplicity, check_monic_at_units, check_unit_evaluation, mdeg_trivial_decomposition,
    theorem1_verdict, MdegTrivialOutcome, MonicOutcome, UnitEvaluation, Verdict,
};
use crate::error::Result;
use crate::newton::{has_vertical_edge, newton_polygon, Degeneracy};
use crate::poly::BivarPoly;

/// Every structural check on one polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub name: String,
    pub deg_m: u32,
    pub deg_l: u32,
    pub abelian_multiplicity: u32,
    pub unit_eval_plus: UnitEvaluation,
    pub unit_eval_minus: UnitEvaluation,
    pub monic_plus: MonicOutcome,
    pub monic_minus: MonicOutcome,
    /// `None` when the Newton polygon is a single point.
    pub vertical_edge: Option<bool>,
    pub newton_degeneracy: Degeneracy,
    /// Present only when `deg_M = 0`.
    pub cyclotomic: Option<MdegTrivialOutcome>,
    pub verdict: Verdict,
}

impl AnalysisReport {
    pub fn unit_evaluation_holds(&self) -> bool {
        self.unit_eval_plus.is_form() && self.unit_eval_minus.is_form()
    }
}

/// Runs all checks. `refined` marks per-component polynomials, for which the
/// verdict is not asserted.
pub fn analyze(
    name: &str,
    a: &BivarPoly,
    claims_nontrivial_knot: bool,
    refined: bool,
) -> Result<AnalysisReport> {
    let a = a.normalized()?;
    let (monic_plus, monic_minus) = check_monic_at_units(&a)?;
    let polygon = newton_polygon(&a)?;
    let deg_m = a.deg_m()?;
    Ok(AnalysisReport {
        name: name.to_string(),
        deg_m,
        deg_l: a.deg_l()?,
        abelian_multiplicity: abelian_multiplicity(&a),
        unit_eval_plus: check_unit_evaluation(&a, 1)?,
        unit_eval_minus: check_unit_evaluation(&a, -1)?,
        monic_plus,
        monic_minus,
        vertical_edge: has_vertical_edge(&polygon).ok(),
        newton_degeneracy: polygon.degeneracy(),
        cyclotomic: if deg_m == 0 {
            Some(mdeg_trivial_decomposition(&a)?)
        } else {
            None
        },
        verdict: if refined {
            Verdict::NotApplicable
        } else {
            theorem1_verdict(&a, claims_nontrivial_knot)?
        },
    })
}

struct UnitEvalJson<'a>(&'a UnitEvaluation);

impl Serialize for UnitEvalJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            UnitEvaluation::Form(f) => {
                let mut m = s.serialize_map(Some(4))?;
                m.serialize_entry("sign", &f.sign)?;
                m.serialize_entry("a", &f.a)?;
                m.serialize_entry("b", &f.b)?;
                m.serialize_entry("c", &f.c)?;
                m.end()
            }
            UnitEvaluation::Failure {
                evaluation,
                residual,
            } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("failure", &residual.to_string())?;
                m.serialize_entry("evaluation", &evaluation.to_string())?;
                m.end()
            }
        }
    }
}

struct CyclotomicJson<'a>(&'a MdegTrivialOutcome);

impl Serialize for CyclotomicJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            MdegTrivialOutcome::Decomposed(dec) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("orders", &dec.profile.orders())?;
                m.serialize_entry("d", &dec.d())?;
                m.end()
            }
            MdegTrivialOutcome::Violation(v) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("violation", &v.to_string())?;
                m.end()
            }
        }
    }
}

impl Serialize for AnalysisReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AnalysisReport", 11)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("deg_M", &self.deg_m)?;
        st.serialize_field("deg_L", &self.deg_l)?;
        st.serialize_field("abelian_multiplicity", &self.abelian_multiplicity)?;
        st.serialize_field("unit_eval_plus", &UnitEvalJson(&self.unit_eval_plus))?;
        st.serialize_field("unit_eval_minus", &UnitEvalJson(&self.unit_eval_minus))?;
        st.serialize_field("monic_plus", &self.monic_plus.as_bool())?;
        st.serialize_field("monic_minus", &self.monic_minus.as_bool())?;
        st.serialize_field("vertical_edge", &self.vertical_edge)?;
        st.serialize_field("cyclotomic", &self.cyclotomic.as_ref().map(CyclotomicJson))?;
        st.serialize_field("verdict", &self.verdict)?;
        st.end()
    }
}

fn unit_eval_text(u: &UnitEvaluation) -> String {
    match u {
        UnitEvaluation::Form(f) => f.to_string(),
        UnitEvaluation::Failure { residual, .. } => format!("FAILURE (residual {residual})"),
    }
}

fn monic_text(m: MonicOutcome) -> &'static str {
    match m {
        MonicOutcome::Monic => "yes",
        MonicOutcome::NotMonic => "no",
        MonicOutcome::Vanishing => "vanishing",
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.name.is_empty() {
            writeln!(f, "name:                 {}", self.name)?;
        }
        writeln!(f, "deg_M:                {}", self.deg_m)?;
        writeln!(f, "deg_L:                {}", self.deg_l)?;
        writeln!(f, "abelian multiplicity: {}", self.abelian_multiplicity)?;
        writeln!(f, "A(+1, L):             {}", unit_eval_text(&self.unit_eval_plus))?;
        writeln!(f, "A(-1, L):             {}", unit_eval_text(&self.unit_eval_minus))?;
        writeln!(
            f,
            "monic at M = +1/-1:   {} / {}",
            monic_text(self.monic_plus),
            monic_text(self.monic_minus)
        )?;
        let vertical = match self.vertical_edge {
            Some(v) if self.newton_degeneracy == Degeneracy::Segment => format!("{v} (degenerate segment)"),
            Some(v) => v.to_string(),
            None => "n/a (single point)".to_string(),
        };
        writeln!(f, "vertical edge:        {vertical}")?;
        if let Some(c) = &self.cyclotomic {
            let text = match c {
                MdegTrivialOutcome::Decomposed(dec) => {
                    let phis: String = dec
                        .profile
                        .orders()
                        .iter()
                        .map(|d| format!(" * Phi_{d}"))
                        .collect();
                    format!("(L - 1){phis}, d = {}", dec.d())
                }
                MdegTrivialOutcome::Violation(v) => format!("violation: {v}"),
            };
            writeln!(f, "cyclotomic structure: {text}")?;
        }
        write!(f, "verdict:              {}", self.verdict)
    }
}
