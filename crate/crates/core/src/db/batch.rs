use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{DbRecord, RecordError, Source, Table};
use crate::error::{Error, Result};
use crate::newton::Degeneracy;
use crate::structure::{analyze, AnalysisReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BatchStatus {
    Ok,
    Anomaly,
    Fail,
}

impl BatchStatus {
    /// 0 on OK, 2 on FAIL, 3 on ANOMALY.
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Ok => 0,
            Self::Fail => 2,
            Self::Anomaly => 3,
        }
    }
}

impl fmt::Display for BatchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ok => "OK",
            Self::Fail => "FAIL",
            Self::Anomaly => "ANOMALY",
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Worker threads; `None` or `Some(1)` runs sequentially.
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordOutcome {
    pub name: String,
    pub source: Source,
    pub refined: bool,
    pub notes: Vec<String>,
    pub report: AnalysisReport,
    /// Both unit evaluations have the `+-L^a (L-1)^b (L+1)^c` form.
    pub unit_form_holds: bool,
    /// the unit-evaluation form fails on a nondegenerate polygon without a vertical edge.
    pub anomaly: bool,
}

impl RecordOutcome {
    fn from_record(rec: &DbRecord) -> Result<Self> {
        let report = analyze(&rec.name, &rec.a_poly, !rec.is_unknot(), rec.refined)?;
        let unit_form_holds = report.unit_evaluation_holds();
        let anomaly = !unit_form_holds
            && report.newton_degeneracy == Degeneracy::None
            && report.vertical_edge != Some(true);
        Ok(Self {
            name: rec.name.clone(),
            source: rec.source,
            refined: rec.refined,
            notes: rec.notes.clone(),
            report,
            unit_form_holds,
            anomaly,
        })
    }

    pub fn failed(&self) -> bool {
        self.report.verdict == Verdict::Fail
    }
}

impl Serialize for RecordOutcome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RecordOutcome", 7)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("refined", &self.refined)?;
        st.serialize_field("unit_form_holds", &self.unit_form_holds)?;
        st.serialize_field("anomaly", &self.anomaly)?;
        st.serialize_field("notes", &self.notes)?;
        st.serialize_field("report", &self.report)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub unknot_ok: usize,
    pub no_claim: usize,
    pub not_applicable: usize,
    pub unit_form_failures: usize,
    pub unit_form_failures_with_vertical_edge: usize,
    pub anomalies: usize,
    pub load_errors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub status: BatchStatus,
    pub summary: BatchSummary,
    /// Sorted by name.
    pub records: Vec<RecordOutcome>,
    pub load_errors: Vec<RecordError>,
}

impl BatchReport {
    pub fn failed_names(&self) -> Vec<&str> {
        self.records
            .iter()
            .filter(|r| r.failed())
            .map(|r| r.name.as_str())
            .collect()
    }

    pub fn anomaly_names(&self) -> Vec<&str> {
        self.records
            .iter()
            .filter(|r| r.anomaly)
            .map(|r| r.name.as_str())
            .collect()
    }

    pub fn record(&self, name: &str) -> Option<&RecordOutcome> {
        self.records.iter().find(|r| r.name == name)
    }

    /// Process exit code: FAIL takes precedence over ANOMALY; malformed
    /// records alone give 1.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            BatchStatus::Ok if !self.load_errors.is_empty() => 1,
            s => s.exit_code(),
        }
    }
}

fn analyze_all(records: &[DbRecord], options: VerifyOptions) -> Vec<Result<RecordOutcome>> {
    match options.jobs {
        Some(n) if n > 1 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| records.par_iter().map(RecordOutcome::from_record).collect()),
            Err(_) => records.iter().map(RecordOutcome::from_record).collect(),
        },
        _ => records.iter().map(RecordOutcome::from_record).collect(),
    }
}

/// Analyzes every record. Deterministic and independent of input order.
pub fn verify_all(records: &[DbRecord], options: VerifyOptions) -> BatchReport {
    let mut outcomes = Vec::new();
    let mut load_errors = Vec::new();
    for (rec, out) in records.iter().zip(analyze_all(records, options)) {
        match out {
            Ok(o) => outcomes.push(o),
            Err(e) => load_errors.push(RecordError {
                line: 0,
                name: rec.name.clone(),
                message: match e {
                    Error::Io(m) => m,
                    other => other.to_string(),
                },
            }),
        }
    }
    outcomes.sort_by(|a, b| a.name.cmp(&b.name));

    let mut summary = BatchSummary {
        records: outcomes.len(),
        load_errors: load_errors.len(),
        ..BatchSummary::default()
    };
    for o in &outcomes {
        match o.report.verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::Fail => summary.fail += 1,
            Verdict::UnknotOk => summary.unknot_ok += 1,
            Verdict::NoClaim => summary.no_claim += 1,
            Verdict::NotApplicable => summary.not_applicable += 1,
        }
        if !o.unit_form_holds {
            summary.unit_form_failures += 1;
            if o.report.vertical_edge == Some(true) {
                summary.unit_form_failures_with_vertical_edge += 1;
            }
        }
        if o.anomaly {
            summary.anomalies += 1;
        }
    }
    let status = if summary.fail > 0 {
        BatchStatus::Fail
    } else if summary.anomalies > 0 {
        BatchStatus::Anomaly
    } else {
        BatchStatus::Ok
    };
    BatchReport {
        status,
        summary,
        records: outcomes,
        load_errors,
    }
}

/// [`verify_all`] plus the table's own load errors.
pub fn verify_table(table: &Table, options: VerifyOptions) -> BatchReport {
    let mut report = verify_all(&table.records, options);
    let mut errors = table.errors.clone();
    errors.extend(report.load_errors);
    report.summary.load_errors = errors.len();
    report.load_errors = errors;
    report
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for BatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .records
            .iter()
            .map(|r| r.name.len())
            .chain(std::iter::once(4))
            .max()
            .unwrap_or(4);
        writeln!(
            f,
            "{:<width$}  {:>5}  {:>5}  {:>4}  {:>8}  {:<14}  flag",
            "name", "deg_M", "deg_L", "unit", "vertical", "verdict"
        )?;
        for r in &self.records {
            let vertical = match r.report.vertical_edge {
                Some(v) => yes_no(v),
                None => "-",
            };
            let flag = if r.anomaly {
                "ANOMALY"
            } else if r.failed() {
                "FAIL"
            } else {
                ""
            };
            writeln!(
                f,
                "{:<width$}  {:>5}  {:>5}  {:>4}  {:>8}  {:<14}  {flag}",
                r.name,
                r.report.deg_m,
                r.report.deg_l,
                yes_no(r.unit_form_holds),
                vertical,
                r.report.verdict.to_string()
            )?;
        }
        for e in &self.load_errors {
            writeln!(f, "error: {e}")?;
        }
        let s = &self.summary;
        write!(
            f,
            "{} records: {} pass, {} fail, {} unknot, {} refined; {} unit-form failures ({} with vertical edge), {} anomalies, {} load errors; status {}",
            s.records,
            s.pass,
            s.fail,
            s.unknot_ok,
            s.not_applicable,
            s.unit_form_failures,
            s.unit_form_failures_with_vertical_edge,
            s.anomalies,
            s.load_errors,
            self.status
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::db::parse_table;

    const TREFOIL: &str = "L^2*M^6 - L*M^6 + L - 1";

    #[test]
    fn unknot_and_trefoil_are_ok() {
        let t = parse_table(&format!("unknot ; L - 1\n3_1 ; {TREFOIL} ; computed\n"));
        let r = verify_table(&t, VerifyOptions::default());
        assert_eq!(r.status, BatchStatus::Ok);
        assert_eq!(r.summary.anomalies, 0);
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.summary.unknot_ok, 1);
        assert_eq!(r.summary.pass, 1);
    }

    #[test]
    fn synthetic_fake_fails_by_name() {
        let t = parse_table("unknot ; L - 1\nfake ; (L-1)*(L+1)\n");
        let r = verify_table(&t, VerifyOptions::default());
        assert_eq!(r.status, BatchStatus::Fail);
        assert_eq!(r.failed_names(), vec!["fake"]);
        assert_eq!(r.exit_code(), 2);
        assert!(r.to_string().contains("FAIL"));
    }

    #[test]
    fn refined_records_never_fail() {
        let t = parse_table("component ; (L-1)*(L+1) ; refined\n");
        let r = verify_table(&t, VerifyOptions::default());
        assert_eq!(r.status, BatchStatus::Ok);
        assert_eq!(r.summary.not_applicable, 1);
    }

    #[test]
    fn anomaly_without_vertical_edge() {
        // triangle (0,0), (1,2), (2,1): no vertical edge; A(1, L) = L^2 + L + 1
        let t = parse_table("odd ; L^2*M + L*M^2 + 1\nok ; L^2*M^2 + L*M^2 + 3*L*M^2 + L - 1\n");
        let r = verify_table(&t, VerifyOptions::default());
        assert_eq!(r.anomaly_names(), vec!["odd"]);
        assert_eq!(r.status, BatchStatus::Anomaly);
        assert_eq!(r.exit_code(), 3);
        let ok = r.record("ok").unwrap();
        assert!(!ok.unit_form_holds && !ok.anomaly);
    }

    #[test]
    fn degenerate_polygons_are_exempt() {
        let t = parse_table("seg ; L^2*M^2 + 3*L*M + 1\n");
        let r = verify_table(&t, VerifyOptions::default());
        assert!(!r.records[0].unit_form_holds);
        assert_eq!(r.summary.anomalies, 0);
    }

    #[test]
    fn fail_beats_anomaly_and_load_errors_exit_one() {
        let t = parse_table("fake ; L^2 - 1\nodd ; L^2*M + L*M^2 + 1\n");
        assert_eq!(verify_table(&t, VerifyOptions::default()).exit_code(), 2);
        let t = parse_table("unknot ; L - 1\nbroken ; L +\n");
        let r = verify_table(&t, VerifyOptions::default());
        assert_eq!((r.status, r.exit_code()), (BatchStatus::Ok, 1));
    }

    #[test]
    fn order_and_parallelism_do_not_matter() {
        let text = format!("unknot ; L - 1\n3_1 ; {TREFOIL}\nfake ; L^2 - 1\nodd ; L^2*M + L*M^2 + 1\n");
        let t = parse_table(&text);
        let a = verify_table(&t, VerifyOptions::default());
        let mut rev = t.clone();
        rev.records.reverse();
        let b = verify_table(&rev, VerifyOptions { jobs: Some(4) });
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
