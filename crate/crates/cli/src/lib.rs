//! The `apoly` command line. [`run`] takes the argument list and output
//! streams so commands can be exercised in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use apoly_core::db::{
    bundled_records, load_table, parse_poly, parse_table, render_table, synthetic_unit_form_records,
    verify_table, VerifyOptions, BUNDLED_MAX_P,
};
use apoly_core::knots::{eliminate_two_bridge_detailed, KnotSpec};
use apoly_core::newton::{has_vertical_edge, newton_polygon, render_svg, Degeneracy};
use apoly_core::structure::analyze;
use apoly_core::theorem::{replay_contradiction, DEFAULT_N_MAX, DEFAULT_TOLERANCE};
use apoly_core::BivarPoly;
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::json;

/// Record file generated by `apoly fixtures`.
pub const BUNDLED_FIXTURES: &str = include_str!("../fixtures/bundled.txt");

#[derive(Parser, Debug)]
#[command(name = "apoly", version, about = "Exact A-polynomial computation and analysis")]
pub struct Cli {
    /// Numerical tolerance for root classification.
    #[arg(long, global = true, env = "APOLY_TOLERANCE", default_value_t = DEFAULT_TOLERANCE, value_parser = positive_f64)]
    pub tolerance: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the A-polynomial of the unknot, a torus knot or a two-bridge knot.
    Compute {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run every structural check on a polynomial.
    Analyze {
        /// Polynomial expression, e.g. "L^2*M^6 - L*M^6 + L - 1".
        #[arg(required_unless_present = "file", conflicts_with = "file", allow_hyphen_values = true)]
        expr: Option<String>,
        /// Read the expression from a file.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Assert that the polynomial belongs to a nontrivial knot.
        #[arg(long)]
        nontrivial: bool,
        /// Per-component polynomial; the verdict is not asserted.
        #[arg(long)]
        refined: bool,
        #[arg(long, default_value = "")]
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Batch-verify a record file (exit 0 OK, 2 FAIL, 3 ANOMALY).
    #[command(visible_alias = "verify")]
    VerifyDb {
        #[arg(required_unless_present = "bundled")]
        path: Option<PathBuf>,
        /// Verify the bundled fixture set instead of a file.
        #[arg(long, conflicts_with = "path")]
        bundled: bool,
        /// Worker threads.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: Option<u16>,
        #[arg(long)]
        json: bool,
    },
    /// Newton polygon: vertices, edge slopes and the vertical-edge verdict.
    #[command(visible_alias = "render")]
    Newton {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Write an SVG drawing to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value = "")]
        title: String,
        #[arg(long)]
        json: bool,
    },
    /// Replay the deg_M = 0 contradiction on surgery lines of slope 1/(n d).
    Replay {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = DEFAULT_N_MAX, value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
        #[arg(long)]
        json: bool,
    },
    /// Write the bundled fixture record file.
    Fixtures {
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the synthetic unit-form failure records instead.
        #[arg(long)]
        synthetic: bool,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("knot").required(true).args(["unknot", "torus", "two_bridge"])))]
pub struct KnotArgs {
    #[arg(long)]
    pub unknot: bool,
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true)]
    pub torus: Option<Vec<i64>>,
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub two_bridge: Option<Vec<u64>>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("tolerance must be positive".to_string())
    }
}

/// Failure of a command; printed to the error stream with exit code 1.
#[derive(Debug)]
pub struct CliError(String);

impl From<apoly_core::Error> for CliError {
    fn from(e: apoly_core::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self(e.to_string())
    }
}

type CmdResult = Result<i32, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Compute { knot, json } => cmd_compute(knot, *json, out),
        Command::Analyze {
            expr,
            file,
            nontrivial,
            refined,
            name,
            json,
        } => {
            let text = match (expr, file) {
                (Some(e), _) => e.clone(),
                (None, Some(path)) => read_file(path)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            cmd_analyze(&text, name, *nontrivial, *refined, *json, out)
        }
        Command::VerifyDb {
            path,
            bundled,
            jobs,
            json,
        } => cmd_verify_db(path.as_deref(), *bundled, jobs.map(usize::from), *json, out),
        Command::Newton {
            expr,
            svg,
            title,
            json,
        } => cmd_newton(expr, svg.as_deref(), title, *json, out),
        Command::Replay { expr, nmax, json } => cmd_replay(expr, *nmax, cli.tolerance, *json, out),
        Command::Fixtures { out: path, synthetic } => cmd_fixtures(path.as_deref(), *synthetic, out),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))
}

fn parse_expr(text: &str) -> Result<BivarPoly, CliError> {
    parse_poly(text).map_err(|e| CliError(format!("cannot parse polynomial: {e}")))
}

fn knot_spec(k: &KnotArgs) -> Result<KnotSpec, CliError> {
    if k.unknot {
        return Ok(KnotSpec::Unknot);
    }
    if let Some(v) = &k.torus {
        return Ok(KnotSpec::torus(v[0], v[1])?);
    }
    if let Some(v) = &k.two_bridge {
        return Ok(KnotSpec::two_bridge(v[0], v[1])?);
    }
    unreachable!("clap requires one knot flag")
}

pub fn cmd_compute(k: &KnotArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    let spec = knot_spec(k)?;
    let (poly, provenance) = match spec {
        KnotSpec::TwoBridge { p, q } => {
            let e = eliminate_two_bridge_detailed(p, q)?;
            (e.polynomial.clone(), Some(serde_json::to_value(&e)?))
        }
        _ => (spec.a_polynomial()?, None),
    };
    let report = analyze(&spec.name(), &poly, spec.is_nontrivial(), false)?;
    if json {
        let mut v = json!({
            "knot": spec.name(),
            "polynomial": poly.to_string(),
            "report": report,
        });
        if let Some(p) = provenance {
            v["provenance"] = p;
        }
        writeln!(out, "{}", serde_json::to_string(&v)?)?;
    } else {
        writeln!(out, "{poly}")?;
        writeln!(out)?;
        writeln!(out, "{report}")?;
    }
    Ok(0)
}

pub fn cmd_analyze(
    text: &str,
    name: &str,
    nontrivial: bool,
    refined: bool,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let poly = parse_expr(text)?;
    let report = analyze(name, &poly, nontrivial, refined)?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&report)?)?;
    } else {
        writeln!(out, "polynomial:           {}", poly.normalized()?)?;
        writeln!(out, "{report}")?;
    }
    Ok(0)
}

pub fn cmd_verify_db(
    path: Option<&Path>,
    bundled: bool,
    jobs: Option<usize>,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let table = match path {
        Some(p) if !bundled => load_table(p)?,
        _ => parse_table(BUNDLED_FIXTURES),
    };
    let report = verify_table(&table, VerifyOptions { jobs });
    if json {
        writeln!(out, "{}", serde_json::to_string(&report)?)?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(report.exit_code())
}

pub fn cmd_newton(
    text: &str,
    svg: Option<&Path>,
    title: &str,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let poly = parse_expr(text)?;
    let polygon = newton_polygon(&poly)?;
    let vertical = has_vertical_edge(&polygon).ok();
    if let Some(path) = svg {
        std::fs::write(path, render_svg(&polygon, title))
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display())))?;
    }
    if json {
        let v = json!({
            "support": polygon.support(),
            "vertices": polygon.vertices(),
            "edges": polygon.edges(),
            "vertical_edge": vertical,
            "degeneracy": polygon.degeneracy(),
        });
        writeln!(out, "{}", serde_json::to_string(&v)?)?;
        return Ok(0);
    }
    let vertices: Vec<String> = polygon.vertices().iter().map(ToString::to_string).collect();
    writeln!(out, "support points: {}", polygon.support().len())?;
    writeln!(out, "vertices:       {}", vertices.join(" "))?;
    writeln!(out, "edges:")?;
    for e in polygon.edges() {
        writeln!(out, "  {} -> {}  slope {}", e.start, e.end, e.slope)?;
    }
    let vertical_text = match vertical {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    };
    writeln!(out, "vertical edge:  {vertical_text}")?;
    match polygon.degeneracy() {
        Degeneracy::None => {}
        Degeneracy::Segment => writeln!(out, "degenerate:     segment")?,
        Degeneracy::Point => writeln!(out, "degenerate:     single point")?,
    }
    if let Some(path) = svg {
        writeln!(out, "svg:            {}", path.display())?;
    }
    Ok(0)
}

pub fn cmd_replay(text: &str, nmax: u32, tolerance: f64, json: bool, out: &mut dyn Write) -> CmdResult {
    let poly = parse_expr(text)?.normalized()?;
    let deg_m = poly.deg_m()?;
    if deg_m != 0 {
        return Err(CliError(format!(
            "the replay targets the excluded case deg_M = 0, but this polynomial has deg_M = {deg_m}"
        )));
    }
    let report = replay_contradiction(&poly, nmax, tolerance)?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&report)?)?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(0)
}

pub fn fixtures_text(synthetic: bool) -> Result<String, apoly_core::Error> {
    if synthetic {
        Ok(render_table(
            &synthetic_unit_form_records()?,
            "Synthetic records: unit form fails at M = +-1, Newton polygon has a vertical edge.",
        ))
    } else {
        Ok(render_table(
            &bundled_records()?,
            &format!(
                "Bundled fixtures generated by `apoly fixtures`: the unknot, two-bridge knots\nK(p/q) and torus knots T(p,q) with p <= {BUNDLED_MAX_P}."
            ),
        ))
    }
}

pub fn cmd_fixtures(path: Option<&Path>, synthetic: bool, out: &mut dyn Write) -> CmdResult {
    let text = fixtures_text(synthetic)?;
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError(format!("cannot write {}: {e}", p.display())))?,
        None => write!(out, "{text}")?,
    }
    Ok(0)
}
