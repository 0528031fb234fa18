//! Command-line front end for `effectkit`.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for usage and parse errors.

pub mod io;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use effectkit::verify::{
    automorphism_for, run_map_suite, verify_coexist, verify_pexider_suite, verify_strength_oracle,
};
use effectkit::{
    fit_p, strength_bisect, strength_closed, Effect, EffectMap, Expectation, FpParam,
    OrthocomplementMap, RayProjection, ShrinkMap, SquareMap, Suite, ToleranceConfig,
    VerificationReport,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::io::{read_json, to_json, MapDocument, MatrixDocument, RayDocument};

pub const TOOL_VERSION: &str = concat!("effectkit ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

/// Input-shape problems are usage errors; everything else is a failed check.
impl From<effectkit::Error> for CliError {
    fn from(e: effectkit::Error) -> Self {
        use effectkit::Error as E;
        match e {
            E::DimensionError { .. }
            | E::ParamError(_)
            | E::DomainError { .. }
            | E::NotUnitary { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "effectkit", version, about = "Effect algebra toolkit")]
pub struct Cli {
    /// Multiplies every tolerance by this factor.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strength of an effect along a ray.
    Strength(StrengthArgs),
    /// Run seeded verification suites.
    Verify(VerifyArgs),
    /// Apply an automorphism to an effect.
    Apply(ApplyArgs),
    /// Recover p from a map's action on scalars.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct StrengthArgs {
    #[arg(long)]
    pub effect: PathBuf,
    #[arg(long)]
    pub ray: PathBuf,
    /// Also run the bisection oracle and report the gap.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExpectArg {
    Auto,
    Preserve,
    Counterexample,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    pub suite: String,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub dims: Vec<usize>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0",
        allow_hyphen_values = true
    )]
    pub p: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "false,true")]
    pub conjugate: Vec<bool>,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, env = "EFFECTKIT_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Scalar used by the scalar-pair suite.
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// Expectation for the ortho and sequential suites.
    #[arg(long, value_enum, default_value_t = ExpectArg::Auto)]
    pub expect: ExpectArg,
    /// Write the full report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Control {
    Orthocomplement,
    Shrink,
    Square,
}

#[derive(Debug, Args)]
pub struct MapSource {
    /// Map file `{"U": ..., "conjugate": ..., "p": ...}`.
    #[arg(long, required_unless_present = "control", conflicts_with = "control")]
    pub map: Option<PathBuf>,
    /// Built-in non-automorphism, for comparison.
    #[arg(long, value_enum, requires = "dim")]
    pub control: Option<Control>,
    /// Dimension of the built-in map.
    #[arg(long, requires = "control")]
    pub dim: Option<usize>,
}

impl MapSource {
    fn load(&self) -> Result<Box<dyn EffectMap>, CliError> {
        if let Some(path) = &self.map {
            let doc: MapDocument = read_json(path)?;
            return Ok(Box::new(doc.to_automorphism()?));
        }
        let n = self
            .dim
            .filter(|&n| n >= 1)
            .ok_or_else(|| CliError::Usage("--dim must be at least 1".into()))?;
        Ok(
            match self.control.expect("clap requires --map or --control") {
                Control::Orthocomplement => Box::new(OrthocomplementMap { n }),
                Control::Shrink => Box::new(ShrinkMap { n }),
                Control::Square => Box::new(SquareMap { n }),
            },
        )
    }
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[command(flatten)]
    pub source: MapSource,
    #[arg(long)]
    pub effect: PathBuf,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub source: MapSource,
    #[arg(long, default_value_t = 20)]
    pub grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrengthOutput {
    pub value: f64,
    pub in_range: bool,
    pub near_threshold: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
}

/// One suite run, tagged with the cell it ran in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugate: Option<bool>,
    #[serde(flatten)]
    pub report: VerificationReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    #[serde(rename = "tool-version")]
    pub tool_version: String,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    /// `pass` iff every suite met its expectation.
    pub overall: Overall,
}

/// Whether the checks run by a command held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol {} must be positive",
            cli.tol
        )));
    }
    let tol = ToleranceConfig::default()
        .scaled(cli.tol)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    match &cli.command {
        Command::Strength(args) => cmd_strength(args, &tol, out),
        Command::Verify(args) => cmd_verify(args, &tol, out),
        Command::Apply(args) => cmd_apply(args, &tol, out),
        Command::Fit(args) => cmd_fit(args, &tol, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
}

fn load_effect(path: &Path, tol: &ToleranceConfig) -> Result<Effect, CliError> {
    let doc: MatrixDocument = read_json(path)?;
    Ok(Effect::new(&doc.to_matrix()?, tol)?)
}

pub fn cmd_strength(
    args: &StrengthArgs,
    tol: &ToleranceConfig,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let a = load_effect(&args.effect, tol)?;
    let ray_doc: RayDocument = read_json(&args.ray)?;
    let ray = RayProjection::new(&ray_doc.to_vector()?)?;
    let s = strength_closed(&a, &ray, tol)?;
    let mut output = StrengthOutput {
        value: s.value,
        in_range: s.in_range,
        near_threshold: s.near_threshold,
        oracle: None,
        gap: None,
    };
    let mut outcome = Outcome::Pass;
    if args.oracle {
        let b = strength_bisect(&a, &ray, tol)?;
        let gap = (b - s.value).abs();
        output.oracle = Some(b);
        output.gap = Some(gap);
        if gap > effectkit::verify::STRENGTH_ORACLE_TOL && !s.near_threshold {
            outcome = Outcome::Fail;
        }
    }
    emit(out, &to_json(&output))?;
    Ok(outcome)
}

pub fn cmd_apply(
    args: &ApplyArgs,
    tol: &ToleranceConfig,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let map = args.source.load()?;
    let a = load_effect(&args.effect, tol)?;
    let image = map.apply(&a, tol)?;
    emit(out, &to_json(&MatrixDocument::from_matrix(image.matrix())))?;
    Ok(Outcome::Pass)
}

pub fn cmd_fit(
    args: &FitArgs,
    tol: &ToleranceConfig,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let map = args.source.load()?;
    let fit = fit_p(map.as_ref(), args.grid, tol)?;
    emit(out, &to_json(&fit))?;
    Ok(Outcome::Pass)
}

/// Expands the flags into suite runs: map suites over dims × p × conjugate,
/// dimension-only suites over dims, and the Pexider suite once.
pub fn build_report(args: &VerifyArgs, tol: &ToleranceConfig) -> Result<RunReport, CliError> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse::<Suite>()?]
    };
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if args.dims.is_empty() || args.dims.iter().any(|&n| n < 2) {
        return Err(CliError::Usage("--dims entries must be at least 2".into()));
    }
    let ps: Vec<FpParam> = args
        .p
        .iter()
        .map(|&p| FpParam::new(p))
        .collect::<Result<_, _>>()?;
    let mut results = Vec::new();
    for suite in suites {
        if suite.takes_map() {
            for &n in &args.dims {
                for &p in &ps {
                    for &conj in &args.conjugate {
                        let map = automorphism_for(args.seed, n, conj, p);
                        let expect = match args.expect {
                            ExpectArg::Auto => Expectation::auto(suite, p.value()),
                            ExpectArg::Preserve => Expectation::Preserve,
                            ExpectArg::Counterexample => Expectation::Counterexample,
                        };
                        let report = run_map_suite(
                            suite,
                            &map,
                            args.trials,
                            args.seed,
                            args.lambda,
                            expect,
                            tol,
                        );
                        results.push(SuiteResult {
                            n: Some(n),
                            p: Some(p.value()),
                            conjugate: Some(conj),
                            report,
                        });
                    }
                }
            }
        } else if suite.takes_dim() {
            for &n in &args.dims {
                let report = match suite {
                    Suite::Coexist => verify_coexist(n, args.trials, args.seed, tol),
                    _ => verify_strength_oracle(n, args.trials, args.seed, tol),
                };
                results.push(SuiteResult {
                    n: Some(n),
                    p: None,
                    conjugate: None,
                    report,
                });
            }
        } else {
            results.push(SuiteResult {
                n: None,
                p: None,
                conjugate: None,
                report: verify_pexider_suite(args.trials, args.seed),
            });
        }
    }
    let overall = if results.iter().all(|r| r.report.passed) {
        Overall::Pass
    } else {
        Overall::Fail
    };
    Ok(RunReport {
        tool_version: TOOL_VERSION.to_string(),
        seed: args.seed,
        suites: results,
        overall,
    })
}

fn status_line(r: &SuiteResult) -> String {
    let status = match (r.report.passed, r.report.expect) {
        (true, Expectation::Counterexample) => "EXPECTED-FAIL",
        (true, Expectation::Preserve) => "PASS",
        (false, _) => "FAIL",
    };
    let mut cell = String::new();
    if let Some(n) = r.n {
        cell.push_str(&format!(" n={n}"));
    }
    if let Some(p) = r.p {
        cell.push_str(&format!(" p={p}"));
    }
    if let Some(c) = r.conjugate {
        cell.push_str(&format!(" conjugate={c}"));
    }
    format!(
        "{status:<13} {:<15}{cell} failures={}/{}",
        r.report.suite, r.report.failures, r.report.trials
    )
}

pub fn cmd_verify(
    args: &VerifyArgs,
    tol: &ToleranceConfig,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let report = build_report(args, tol)?;
    for r in &report.suites {
        emit(out, &status_line(r))?;
    }
    let overall = match report.overall {
        Overall::Pass => "pass",
        Overall::Fail => "fail",
    };
    emit(out, &format!("overall: {overall}"))?;
    if let Some(path) = &args.json {
        fs::write(path, to_json(&report) + "\n")
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match report.overall {
        Overall::Pass => Outcome::Pass,
        Overall::Fail => Outcome::Fail,
    })
}
