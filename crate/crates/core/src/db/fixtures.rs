use super::{parse_poly, DbRecord, Source};
use crate::error::Result;
use crate::knots::{eliminate_two_bridge, torus_a, unknot_a, validate_two_bridge};

/// Largest `p` in the bundled two-bridge and torus records.
pub const BUNDLED_MAX_P: u64 = 9;

/// The unknot, every two-bridge knot `K(p/q)` with `p <= 9`, and the torus
/// knots `T(p,q)` with `2 <= p < q <= 9`.
pub fn bundled_records() -> Result<Vec<DbRecord>> {
    let mut out = vec![DbRecord::new("unknot", &unknot_a(), Source::Fixture, false)?];
    for p in (3..=BUNDLED_MAX_P).step_by(2) {
        for q in (1..p).filter(|&q| validate_two_bridge(p, q).is_ok()) {
            let a = eliminate_two_bridge(p, q)?;
            out.push(DbRecord::new(&format!("K({p}/{q})"), &a, Source::Computed, false)?);
        }
    }
    let max = BUNDLED_MAX_P as i64;
    for p in 2..=max {
        for q in p + 1..=max {
            if let Ok(a) = torus_a(p, q) {
                out.push(DbRecord::new(&format!("T({p},{q})"), &a, Source::Computed, false)?);
            }
        }
    }
    Ok(out)
}

/// Nontrivial polynomials whose unit evaluations break the
/// `+-L^a (L-1)^b (L+1)^c` form but whose Newton polygons have a vertical
/// edge, standing in for the published counterexamples.
pub fn synthetic_unit_form_records() -> Result<Vec<DbRecord>> {
    [
        ("synthetic_unit_form_a", "L^2*M^2 + 4*L*M^2 + L - 1"),
        ("synthetic_unit_form_b", "(L - 1)*(L*M^4 + 3*L*M^2 + 1)"),
        ("synthetic_unit_form_c", "M^2*(L^2 - 3*L + 1) + L - 1"),
        ("synthetic_unit_form_d", "(L - 1)*(L^2*M^6 + 2*L*M^4 - 5*L*M^2 + 1)"),
    ]
    .into_iter()
    .map(|(name, text)| DbRecord::new(name, &parse_poly(text)?, Source::Fixture, false))
    .collect()
}

/// Record-file text, one line per record after a comment header.
pub fn render_table(records: &[DbRecord], header: &str) -> String {
    let mut out = String::new();
    for line in header.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    for r in records {
        out.push_str(&r.to_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::db::{parse_table, verify_all, BatchStatus, VerifyOptions};

    #[test]
    fn bundled_set_is_ok() {
        let recs = bundled_records().unwrap();
        assert_eq!(recs.len(), 1 + 18 + 19);
        let report = verify_all(&recs, VerifyOptions { jobs: Some(2) });
        assert_eq!(report.status, BatchStatus::Ok, "{report}");
        assert_eq!(report.summary.anomalies, 0);
        let text = render_table(&recs, "bundled");
        assert_eq!(parse_table(&text).records, recs);
    }

    #[test]
    fn synthetic_unit_form_failures_have_vertical_edges() {
        let report = verify_all(&synthetic_unit_form_records().unwrap(), VerifyOptions::default());
        assert_eq!(report.summary.unit_form_failures, 4);
        assert_eq!(report.summary.unit_form_failures_with_vertical_edge, 4);
        assert_eq!(report.summary.anomalies, 0);
        assert_eq!(report.status, BatchStatus::Ok);
    }
}
