//! `zbconvex`: evaluate the zero-balanced hypergeometric function, its
//! thresholds and classifiers, coefficient tables and verification suites.
//!
//! Exit codes: 0 success, 1 verification found unexpected violations,
//! 2 invalid input or evaluation error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zbconvex::hyp2f1::{hyp2f1_routed, HypParams};
use zbconvex::phi::ZbParams;
use zbconvex::series::{b1_three_ways, coeff_table, CoeffFamily, CoeffTable};
use zbconvex::thresholds::{
    classify_curvature, classify_monotonicity, thresholds, CurvatureTarget, CurvatureVerdict,
    Monotonicity, MonotonicityReport, ThresholdBundle,
};
use zbconvex::verify::{fmt17, run_suite, Report, RunConfig, Suite};

const DEFAULT_CLASSIFY_GRID: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "zbconvex",
    version,
    about = "Zero-balanced 2F1 thresholds and inequality checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance override for verification checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Grid size override for classifiers and verification suites.
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate 2F1(a, b; c; x) on [0, 1] and report the route taken.
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Threshold bundle for the pair (a, b).
    Thresholds {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
    },
    /// Curvature and monotonicity verdicts for one c.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        /// phi or f_ratio.
        #[arg(long, default_value = "phi")]
        target: String,
    },
    /// Run a verification suite.
    Verify {
        /// phi_sum, f_sum, sandwich, aux, thresholds, series or all.
        #[arg(long)]
        suite: Option<String>,
        /// key = value configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Coefficient table of one series family.
    Series {
        /// R_series, B_series, f_final_b, g_final_d or H_gamma.
        #[arg(long)]
        family: String,
        /// Highest coefficient index (at most 200).
        #[arg(long)]
        n: usize,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<zbconvex::Error> for Failure {
    fn from(e: zbconvex::Error) -> Self {
        Self {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CliResult<T> = Result<T, Failure>;

fn json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    let err = |e: csv::Error| usage(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| usage(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| usage(e.to_string()))
}

fn opt17(v: Option<f64>) -> String {
    v.map(fmt17).unwrap_or_default()
}

#[derive(Serialize)]
struct EvalOut {
    a: f64,
    b: f64,
    c: f64,
    x: f64,
    value: f64,
    route: &'static str,
}

fn cmd_eval(a: f64, b: f64, c: f64, x: f64, format: Format) -> CliResult<String> {
    let p = HypParams::new(a, b, c, x)?;
    let (value, route) = hyp2f1_routed(&p)?;
    let out = EvalOut {
        a,
        b,
        c,
        x,
        value,
        route: route.as_str(),
    };
    Ok(match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(
            &["a", "b", "c", "x", "value", "route"],
            &[vec![
                fmt17(a),
                fmt17(b),
                fmt17(c),
                fmt17(x),
                fmt17(value),
                out.route.into(),
            ]],
        )?,
    })
}

fn cmd_thresholds(a: f64, b: f64, format: Format) -> CliResult<String> {
    let t: ThresholdBundle = thresholds(&ZbParams::new(a, b)?)?;
    Ok(match format {
        Format::Json => json(&t)?,
        Format::Csv => csv_rows(
            &[
                "a",
                "b",
                "R",
                "inv_sum",
                "c_ab",
                "alpha0",
                "delta_minus",
                "delta_plus",
                "g_ratio_up",
            ],
            &[vec![
                fmt17(t.a),
                fmt17(t.b),
                fmt17(t.r),
                fmt17(t.inv_sum),
                fmt17(t.c_ab),
                opt17(t.alpha0),
                opt17(t.delta_minus),
                opt17(t.delta_plus),
                fmt17(t.g_ratio_up),
            ]],
        )?,
    })
}

#[derive(Serialize)]
struct ClassifyOut {
    a: f64,
    b: f64,
    c: f64,
    target: CurvatureTarget,
    grid: usize,
    curvature: CurvatureVerdict,
    monotonicity: MonotonicityReport,
}

fn snake<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|j| j.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// f = 1/φ with φ > 0 for c > 0, so f's monotonicity is the reverse of φ's.
fn reversed(m: Monotonicity) -> Monotonicity {
    match m {
        Monotonicity::Increasing => Monotonicity::Decreasing,
        Monotonicity::Decreasing => Monotonicity::Increasing,
        Monotonicity::Neither => Monotonicity::Neither,
    }
}

fn cmd_classify(
    a: f64,
    b: f64,
    c: f64,
    target: &str,
    n: usize,
    format: Format,
) -> CliResult<String> {
    let target: CurvatureTarget = target.parse()?;
    let p = ZbParams::new(a, b)?;
    let curvature = classify_curvature(&p, c, target, n)?;
    let mut monotonicity = classify_monotonicity(&p, c, n)?;
    if target == CurvatureTarget::FRatio {
        monotonicity.verdict = reversed(monotonicity.verdict);
        monotonicity.expected = monotonicity.expected.map(reversed);
    }
    let out = ClassifyOut {
        a,
        b,
        c,
        target,
        grid: n,
        curvature,
        monotonicity,
    };
    Ok(match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(
            &[
                "a",
                "b",
                "c",
                "target",
                "grid",
                "curvature",
                "curvature_witness",
                "min_second",
                "max_second",
                "monotonicity",
                "monotonicity_expected",
                "monotonicity_witness",
            ],
            &[vec![
                fmt17(a),
                fmt17(b),
                fmt17(c),
                snake(&target),
                n.to_string(),
                snake(&curvature.verdict),
                opt17(curvature.witness),
                fmt17(curvature.min_second),
                fmt17(curvature.max_second),
                snake(&monotonicity.verdict),
                monotonicity.expected.map(|e| snake(&e)).unwrap_or_default(),
                opt17(monotonicity.witness),
            ]],
        )?,
    })
}

fn cmd_verify(
    suite: Option<&str>,
    config: Option<&PathBuf>,
    grid: Option<usize>,
    tol: Option<f64>,
    format: Format,
) -> CliResult<(String, u8)> {
    let mut cfg = match config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("config {}: {e}", path.display())))?;
            RunConfig::from_kv(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(s) = suite {
        cfg.suite = s.parse::<Suite>()?;
    }
    if let Some(n) = grid {
        cfg.grid = n;
    }
    if let Some(t) = tol {
        cfg.tol = t;
    }
    let report = run_suite(&cfg)?;
    let code = verify_exit_code(&report);
    let text = match format {
        Format::Json => {
            let mut s = report.to_json()?;
            s.push('\n');
            s
        }
        Format::Csv => report.to_csv()?,
    };
    Ok((text, code))
}

/// 0 when every violation is a registered discrepancy, 1 otherwise.
fn verify_exit_code(report: &Report) -> u8 {
    u8::from(report.unexpected_violations().next().is_some())
}

#[derive(Serialize)]
struct SeriesOut {
    #[serde(flatten)]
    table: CoeffTable,
    notes: Vec<String>,
}

fn cmd_series(family: &str, n: usize, format: Format) -> CliResult<String> {
    let family: CoeffFamily = family.parse()?;
    let table = coeff_table(family, n)?;
    let mut notes = Vec::new();
    if family == CoeffFamily::FRb && n >= 1 {
        let b1 = b1_three_ways()?;
        notes.push(format!(
            "b_1 = {} from its formula, {} from f''(1/2)/8; quoted elsewhere as {}",
            b1.displayed_formula, b1.taylor_oracle, b1.quoted
        ));
    }
    Ok(match format {
        Format::Json => json(&SeriesOut { table, notes })?,
        Format::Csv => table.to_csv()?,
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| usage(e.to_string())),
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    if let Some(t) = cli.tol {
        if !(t >= 0.0) {
            return Err(usage(format!("--tol {t} must be nonnegative")));
        }
    }
    let fmt = cli.format;
    let (text, code) = match &cli.command {
        Command::Eval { a, b, c, x } => (cmd_eval(*a, *b, *c, *x, fmt)?, 0),
        Command::Thresholds { a, b } => (cmd_thresholds(*a, *b, fmt)?, 0),
        Command::Classify { a, b, c, target } => {
            let n = cli.grid.unwrap_or(DEFAULT_CLASSIFY_GRID);
            (cmd_classify(*a, *b, *c, target, n, fmt)?, 0)
        }
        Command::Verify { suite, config } => {
            cmd_verify(suite.as_deref(), config.as_ref(), cli.grid, cli.tol, fmt)?
        }
        Command::Series { family, n } => (cmd_series(family, *n, fmt)?, 0),
    };
    emit(&text, cli.out.as_ref())?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("zbconvex: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zbconvex::thresholds::Curvature;
    use zbconvex::verify::{GridInfo, Violation};

    #[test]
    fn csv_quoting() {
        let s = csv_rows(&["k", "v"], &[vec!["a,b".into(), "1".into()]])
            .ok()
            .unwrap();
        assert_eq!(s, "k,v\n\"a,b\",1\n");
    }

    #[test]
    fn curvature_names_are_snake_case() {
        assert_eq!(snake(&Curvature::Neither), "neither");
        assert_eq!(snake(&CurvatureTarget::FRatio), "f_ratio");
    }

    fn violation(claim_id: &'static str, known_discrepancy: bool) -> Violation {
        Violation {
            claim_id,
            a: None,
            b: None,
            c: None,
            x: Some(0.5),
            lhs: 2.0,
            rhs: 1.0,
            margin: -1.0,
            known_discrepancy,
            detail: None,
        }
    }

    #[test]
    fn exit_code_ignores_known_discrepancies() {
        let mut report = Report::new(
            "f_sum",
            GridInfo {
                points: 0,
                margin: 0.0,
                parameter_points: 0,
                tol: 1e-9,
            },
        );
        assert_eq!(verify_exit_code(&report), 0);
        report
            .violations
            .push(violation("f_sum.upper_stated", true));
        assert_eq!(verify_exit_code(&report), 0);
        report.violations.push(violation("sandwich.g_lower", false));
        assert_eq!(verify_exit_code(&report), 1);
    }
}
