//! Command-line front end. [`run`] returns the exit code and captured
//! output so the binary stays a thin wrapper and tests can call it directly.
//!
//! Exit codes: 0 success, 1 usage or specification error, 2 a hypothesis
//! failed under `--strict`, 3 a verification check failed.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{self, BoundReport, ClassKind};
use crate::extremal;
use crate::oracle::OracleConfig;
use crate::phi::PhiSpec;
use crate::report::{self, fmt_g17, ReportJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_STRICT: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

/// Environment variable supplying the default oracle seed.
pub const SEED_ENV: &str = "MM_TOEPLITZ_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "mm-toeplitz",
    version,
    about = "Sharp Toeplitz determinant bounds for Ma-Minda starlike and convex classes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bounds and hypothesis verdicts.
    Bounds {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Coefficients and Toeplitz values of the extremal function.
    Extremal {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Check bounds against the extremal function and the brute-force oracle.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Fekete-Szegő bound |a3 - mu a2^2| with an oracle cross-check.
    Fs {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
    },
    /// Bounds for every catalog family in both classes.
    Table {
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        output: OutputFormat,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Janowski,
    OrderAlpha,
    Exp,
    Cardioid,
    Sine,
    Lune,
    Parabolic,
    Limacon,
    Nephroid,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Starlike,
    Convex,
    Both,
}

impl KindArg {
    fn kinds(self) -> Vec<ClassKind> {
        match self {
            KindArg::Starlike => vec![ClassKind::Starlike],
            KindArg::Convex => vec![ClassKind::Convex],
            KindArg::Both => ClassKind::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, value_enum)]
    pub class: ClassArg,
    #[arg(long = "A", allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long = "B", allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b2: Option<f64>,
}

impl SpecArgs {
    pub fn to_spec(&self) -> Result<PhiSpec, String> {
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| format!("--class {} requires {flag}", self.class_label()))
        };
        Ok(match self.class {
            ClassArg::Janowski => PhiSpec::Janowski {
                a: need(self.a, "--A")?,
                b: need(self.b, "--B")?,
            },
            ClassArg::OrderAlpha => PhiSpec::OrderAlpha {
                alpha: self.alpha.unwrap_or(0.0),
            },
            ClassArg::Exp => PhiSpec::Exponential {
                alpha: self.alpha.unwrap_or(0.0),
            },
            ClassArg::Cardioid => PhiSpec::Cardioid,
            ClassArg::Sine => PhiSpec::Sine,
            ClassArg::Lune => PhiSpec::Lune,
            ClassArg::Parabolic => PhiSpec::Parabolic,
            ClassArg::Limacon => PhiSpec::Limacon,
            ClassArg::Nephroid => PhiSpec::Nephroid,
            ClassArg::Custom => PhiSpec::custom(need(self.b1, "--b1")?, need(self.b2, "--b2")?),
        })
    }

    fn class_label(&self) -> String {
        self.class
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub output: OutputFormat,
    /// Exit with status 2 when any theorem hypothesis fails.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 40)]
    pub polish_steps: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            samples: self.samples,
            seed: self.seed,
            polish_steps: self.polish_steps,
            tol: self.tol,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

fn validate_order(order: usize) -> Result<(), Outcome> {
    if order < 3 {
        return Err(Outcome::usage(format!(
            "--order must be at least 3, got {order}"
        )));
    }
    Ok(())
}

fn validate_oracle(args: &OracleArgs) -> Result<(), Outcome> {
    if args.samples == 0 {
        return Err(Outcome::usage("--samples must be at least 1"));
    }
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(Outcome::usage("--tol must be a non-negative number"));
    }
    Ok(())
}

fn reports_for(spec: &PhiSpec, kind: KindArg) -> Result<Vec<BoundReport>, Outcome> {
    kind.kinds()
        .into_iter()
        .map(|k| bounds::full_report(spec, k).map_err(|e| Outcome::usage(format!("error: {e}"))))
        .collect()
}

fn json_one_or_many<T: serde::Serialize>(items: &[T]) -> Result<String, Outcome> {
    let out = if items.len() == 1 {
        report::to_json(&items[0])
    } else {
        report::to_json(items)
    };
    out.map_err(|e| Outcome::usage(format!("error: {e}")))
}

fn execute(cmd: &Command) -> Outcome {
    match execute_inner(cmd) {
        Ok(o) | Err(o) => o,
    }
}

fn execute_inner(cmd: &Command) -> Result<Outcome, Outcome> {
    let to_usage = |e: report::ReportError| Outcome::usage(format!("error: {e}"));
    match cmd {
        Command::Bounds { spec, common } => {
            let spec = spec.to_spec().map_err(Outcome::usage)?;
            let reports = reports_for(&spec, common.kind)?;
            let stdout = match common.output {
                OutputFormat::Human => reports
                    .iter()
                    .map(report::render_report_human)
                    .collect::<Vec<_>>()
                    .join("\n"),
                OutputFormat::Json => {
                    let json: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
                    json_one_or_many(&json)?
                }
                OutputFormat::Csv => report::render_table_csv(&reports).map_err(to_usage)?,
            };
            let unproven = reports.iter().any(|r| !r.all_hypotheses_ok());
            Ok(finish(stdout, common.strict && unproven, false))
        }
        Command::Extremal {
            spec,
            common,
            order,
        } => {
            validate_order(*order)?;
            let spec = spec.to_spec().map_err(Outcome::usage)?;
            let reports = reports_for(&spec, common.kind)?;
            let mut items = Vec::new();
            for kind in common.kind.kinds() {
                let ef = extremal::extremal(&spec, kind, *order)
                    .map_err(|e| Outcome::usage(format!("error: {e}")))?;
                let res = extremal::residual(&ef, &spec)
                    .map_err(|e| Outcome::usage(format!("error: {e}")))?;
                items.push(report::extremal_json(&spec, &ef, res));
            }
            let stdout = match common.output {
                OutputFormat::Json => json_one_or_many(&items)?,
                OutputFormat::Human | OutputFormat::Csv => render_extremal_human(&spec, &items),
            };
            let unproven = reports.iter().any(|r| !r.all_hypotheses_ok());
            Ok(finish(stdout, common.strict && unproven, false))
        }
        Command::Verify {
            spec,
            common,
            oracle,
            order,
        } => {
            validate_order(*order)?;
            validate_oracle(oracle)?;
            let spec = spec.to_spec().map_err(Outcome::usage)?;
            let cfg = oracle.config();
            let runs = common
                .kind
                .kinds()
                .into_iter()
                .map(|k| report::verify(&spec, k, *order, &cfg))
                .collect::<Result<Vec<_>, _>>()
                .map_err(to_usage)?;
            let stdout = match common.output {
                OutputFormat::Json => {
                    let json: Vec<ReportJson> = runs.iter().map(ReportJson::from).collect();
                    json_one_or_many(&json)?
                }
                OutputFormat::Human | OutputFormat::Csv => runs
                    .iter()
                    .map(report::render_verification_human)
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            let unproven = runs.iter().any(|v| !v.report.all_hypotheses_ok());
            let failed = runs.iter().any(|v| v.any_failed());
            Ok(finish(stdout, common.strict && unproven, failed))
        }
        Command::Fs {
            spec,
            common,
            oracle,
            mu,
        } => {
            validate_oracle(oracle)?;
            if !mu.is_finite() {
                return Err(Outcome::usage("--mu must be finite"));
            }
            let spec = spec.to_spec().map_err(Outcome::usage)?;
            let reports = reports_for(&spec, common.kind)?;
            let cfg = oracle.config();
            let checks = common
                .kind
                .kinds()
                .into_iter()
                .map(|k| report::fs_check(&spec, k, *mu, &cfg))
                .collect::<Result<Vec<_>, _>>()
                .map_err(to_usage)?;
            let stdout = match common.output {
                OutputFormat::Json => {
                    let json: Vec<_> = checks.iter().map(|c| report::fs_json(&spec, c)).collect();
                    json_one_or_many(&json)?
                }
                OutputFormat::Human | OutputFormat::Csv => {
                    let mut out = String::new();
                    for c in &checks {
                        let _ = writeln!(
                            out,
                            "{spec} {}: |a3 - {}·a2^2| <= {} ({:?} branch, thresholds {} / {}); oracle sup {}: {}",
                            c.kind,
                            fmt_g17(c.mu),
                            fmt_g17(c.closed_form),
                            c.branch,
                            fmt_g17(c.thresholds.0),
                            fmt_g17(c.thresholds.1),
                            fmt_g17(c.oracle.sup_estimate),
                            if c.pass { "PASS" } else { "FAIL" }
                        );
                    }
                    out
                }
            };
            let unproven = reports.iter().any(|r| !r.all_hypotheses_ok());
            let failed = checks.iter().any(|c| !c.pass);
            Ok(finish(stdout, common.strict && unproven, failed))
        }
        Command::Table { output, strict } => {
            let reports = report::table_reports().map_err(to_usage)?;
            let stdout = match output {
                OutputFormat::Csv => report::render_table_csv(&reports).map_err(to_usage)?,
                OutputFormat::Json => report::render_table_json(&reports).map_err(to_usage)?,
                OutputFormat::Human => report::render_table_human(&reports),
            };
            let unproven = reports.iter().any(|r| !r.all_hypotheses_ok());
            Ok(finish(stdout, *strict && unproven, false))
        }
    }
}

fn finish(stdout: String, strict_failure: bool, verify_failure: bool) -> Outcome {
    let code = if verify_failure {
        EXIT_VERIFY_FAILED
    } else if strict_failure {
        EXIT_STRICT
    } else {
        EXIT_OK
    };
    let stderr = match code {
        EXIT_VERIFY_FAILED => "verification failed\n".to_string(),
        EXIT_STRICT => "strict: a theorem hypothesis is not satisfied\n".to_string(),
        _ => String::new(),
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

fn render_extremal_human(spec: &PhiSpec, items: &[report::ExtremalJson]) -> String {
    let mut out = String::new();
    for e in items {
        let _ = writeln!(out, "class: {spec}  kind: {}", e.kind);
        for (n, [re, im]) in e.coeffs.iter().enumerate().skip(1) {
            let _ = writeln!(out, "a{n} = {} + {}i", fmt_g17(*re), fmt_g17(*im));
        }
        let _ = writeln!(out, "|T2(2)| = {}", fmt_g17(e.t22_abs));
        let _ = writeln!(out, "|T3(1)| = {}", fmt_g17(e.t31_abs));
        let _ = writeln!(out, "residual = {:.3e}", e.residual);
    }
    out
}
