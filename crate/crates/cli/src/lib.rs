//! The `iwasawa` command line: builds catalog algebras, prints restricted
//! roots, checks H-type files and runs the derivation solver.

pub mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use iwasawa_core::dersolve::{
    ad_restriction, main_theorem_verdict, solve_derivations, split_sym_skew,
};
use iwasawa_core::htype::{kaplan_check, MetricTwoStepJson};
use iwasawa_core::roots::{lemma_suite, SampleConfig, DEFAULT_SEED};
use iwasawa_core::{build_named, decompose, AlgebraJson, BuiltAlgebra, ConstraintMode, RootDatum};
use rayon::prelude::*;

use report::{
    BatchEntry, BatchPayload, DerPayload, HTypePayload, Payload, Report, RootEntry, RootsPayload,
    Timings,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(
    name = "iwasawa",
    version,
    about = "Exact restricted roots and derivations of Iwasawa nilradicals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub output: OutputFormat,
    /// Seed for the sampled identity checks (`der verify --checks`).
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Build an algebra and print it in the algebra file format.
    Build { algebra: String },
    /// Restricted roots, multiplicities and heights.
    Roots { algebra: String },
    /// Checks on two-step algebras.
    Htype {
        #[command(subcommand)]
        command: HtypeCommand,
    },
    /// Derivations of the nilradical `n`.
    Der {
        #[command(subcommand)]
        command: DerCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum HtypeCommand {
    /// Kaplan's identity for a metric two-step algebra file.
    Check { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum DerCommand {
    /// Solve for derivations under a constraint mode.
    Solve {
        algebra: String,
        #[arg(long, default_value = "rootspace")]
        mode: ConstraintMode,
    },
    /// Compare root-space derivations with ad(m + a).
    Verify {
        algebra: String,
        /// Also run the sampled root-space identity checks.
        #[arg(long)]
        checks: bool,
    },
    /// `der verify` for every algebra listed in a file, one per line.
    Batch { list: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Build,
    Roots,
    HtypeCheck,
    DerSolve,
    DerVerify { checks: bool },
    Batch,
}

/// A fully resolved invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// Catalog name, algebra file or list file, depending on the command.
    pub algebra_spec: String,
    pub mode: ConstraintMode,
    pub output_format: OutputFormat,
    pub seed: u64,
    pub out_path: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let mut mode = ConstraintMode::RootSpace;
        let (command, algebra_spec) = match cli.command {
            CliCommand::Build { algebra } => (Command::Build, algebra),
            CliCommand::Roots { algebra } => (Command::Roots, algebra),
            CliCommand::Htype {
                command: HtypeCommand::Check { file },
            } => (Command::HtypeCheck, file.display().to_string()),
            CliCommand::Der { command } => match command {
                DerCommand::Solve { algebra, mode: m } => {
                    mode = m;
                    (Command::DerSolve, algebra)
                }
                DerCommand::Verify { algebra, checks } => (Command::DerVerify { checks }, algebra),
                DerCommand::Batch { list } => (Command::Batch, list.display().to_string()),
            },
        };
        Self {
            command,
            algebra_spec,
            mode,
            output_format: cli.common.output,
            seed: cli.common.seed,
            out_path: cli.common.out,
        }
    }
}

/// An input problem, reported with exit code 1.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn ctx(what: &str) -> impl Fn(iwasawa_core::Error) -> InputError + '_ {
    move |e| InputError(format!("{what}: {e}"))
}

/// A catalog name, or a path to an algebra file when it ends in `.json`.
pub fn load_algebra(spec: &str) -> Result<BuiltAlgebra, InputError> {
    if spec.ends_with(".json") {
        let text = std::fs::read_to_string(spec).map_err(|e| InputError(format!("{spec}: {e}")))?;
        let j = AlgebraJson::from_str(&text).map_err(ctx(spec))?;
        return BuiltAlgebra::from_json(&j).map_err(ctx(spec));
    }
    build_named(spec).map_err(ctx(spec))
}

fn load_datum(spec: &str) -> Result<RootDatum, InputError> {
    decompose(&load_algebra(spec)?).map_err(ctx(spec))
}

fn roots_payload(rd: &RootDatum) -> RootsPayload {
    let simple = rd.simple().to_vec();
    let positive = (0..rd.positive().len())
        .map(|i| RootEntry {
            index: i,
            covector: iwasawa_core::roots::fmt_covector(&rd.positive()[i]),
            coefficients: rd.coefficients(i).to_vec(),
            height: rd.height(i),
            multiplicity: rd.multiplicity(i),
            simple: simple.contains(&i),
        })
        .collect();
    RootsPayload {
        dim: rd.algebra().dim(),
        rank: rd.rank(),
        dim_m: rd.m_basis().dim(),
        dim_n: rd.nilpotent().dim(),
        positive,
        simple,
        omega: rd.omega(),
        max_height: rd.max_height(),
        simple_gram: rd.signature().simple_gram,
    }
}

pub fn der_solve(rd: &RootDatum, mode: ConstraintMode) -> Result<DerPayload, InputError> {
    let name = rd.base().name.clone();
    let space = solve_derivations(rd, mode).map_err(ctx(&name))?;
    let ad = ad_restriction(rd).map_err(ctx(&name))?;
    let split = split_sym_skew(rd, &space).ok();
    let span = ad.span();
    let containment = ad.generators.iter().all(|g| space.contains(g));
    let witness = space.basis().iter().find(|d| !span.contains(&d.flatten()));
    Ok(DerPayload {
        algebra: name,
        mode: mode.to_string(),
        dim_n: rd.nilpotent().dim(),
        dim_der: space.dim(),
        dim_ad: ad.dim(),
        dim_sym: split.as_ref().map(|s| s.0.len()),
        dim_skew: split.as_ref().map(|s| s.1.len()),
        equal: containment && space.dim() == ad.dim(),
        exceptional_expected: rd.base().exceptional_expected(),
        matches_expectation: None,
        summand_dims: space.summand_dims().to_vec(),
        witness: witness.map(report::matrix_strings),
        checks: Vec::new(),
    })
}

pub fn der_verify(rd: &RootDatum, checks: Option<&SampleConfig>) -> Result<DerPayload, InputError> {
    let name = rd.base().name.clone();
    let v = main_theorem_verdict(rd).map_err(ctx(&name))?;
    let space = solve_derivations(rd, ConstraintMode::RootSpace).map_err(ctx(&name))?;
    Ok(DerPayload {
        algebra: name,
        mode: ConstraintMode::RootSpace.to_string(),
        dim_n: rd.nilpotent().dim(),
        dim_der: v.dim_der,
        dim_ad: v.dim_ad,
        dim_sym: Some(v.dim_sym),
        dim_skew: Some(v.dim_skew),
        equal: v.equal,
        exceptional_expected: v.exceptional_expected,
        matches_expectation: Some(v.matches_expectation()),
        summand_dims: space.summand_dims().to_vec(),
        witness: v.witness.as_ref().map(report::matrix_strings),
        checks: checks.map(|cfg| lemma_suite(rd, cfg)).unwrap_or_default(),
    })
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Verdicts for every non-blank, non-`#` line of `text`, in input order.
pub fn batch(text: &str) -> BatchPayload {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let entries: Vec<BatchEntry> = lines
        .par_iter()
        .map(|&(line, spec)| {
            let t = Instant::now();
            let res = load_datum(spec).and_then(|rd| der_verify(&rd, None));
            let ms = elapsed_ms(t);
            match res {
                Ok(v) => BatchEntry {
                    line,
                    spec: spec.into(),
                    verdict: Some(v),
                    error: None,
                    ms,
                },
                Err(e) => BatchEntry {
                    line,
                    spec: spec.into(),
                    verdict: None,
                    error: Some(e.0),
                    ms,
                },
            }
        })
        .collect();
    let errors = entries.iter().filter(|e| e.error.is_some()).count();
    let mismatches = entries
        .iter()
        .filter(|e| {
            e.verdict
                .as_ref()
                .is_some_and(|v| v.matches_expectation == Some(false))
        })
        .count();
    BatchPayload {
        entries,
        errors,
        mismatches,
    }
}

/// Runs a command, returning its exit code and report.
pub fn run(cfg: &RunConfig) -> Result<(i32, Report), InputError> {
    let start = Instant::now();
    let spec = cfg.algebra_spec.as_str();
    let (algebra, payload) = match &cfg.command {
        Command::Build => {
            let b = load_algebra(spec)?;
            (
                Some(b.name.clone()),
                Payload::Build(b.to_json().map_err(ctx(spec))?),
            )
        }
        Command::Roots => {
            let rd = load_datum(spec)?;
            (
                Some(rd.base().name.clone()),
                Payload::Roots(roots_payload(&rd)),
            )
        }
        Command::HtypeCheck => {
            let text =
                std::fs::read_to_string(spec).map_err(|e| InputError(format!("{spec}: {e}")))?;
            let j = MetricTwoStepJson::from_str(&text).map_err(ctx(spec))?;
            let m = j.to_algebra().map_err(ctx(spec))?;
            let payload = HTypePayload {
                name: j.name.clone(),
                v_dim: m.v_dim(),
                z_dim: m.z_dim(),
                kaplan: kaplan_check(&m),
            };
            (j.name.clone(), Payload::HtypeCheck(payload))
        }
        Command::DerSolve => {
            let rd = load_datum(spec)?;
            (
                Some(rd.base().name.clone()),
                Payload::DerSolve(der_solve(&rd, cfg.mode)?),
            )
        }
        Command::DerVerify { checks } => {
            let rd = load_datum(spec)?;
            let sample = SampleConfig {
                seed: cfg.seed,
                ..SampleConfig::default()
            };
            let v = der_verify(&rd, checks.then_some(&sample))?;
            (Some(rd.base().name.clone()), Payload::DerVerify(v))
        }
        Command::Batch => {
            let text =
                std::fs::read_to_string(spec).map_err(|e| InputError(format!("{spec}: {e}")))?;
            (None, Payload::Batch(batch(&text)))
        }
    };
    let code = match &payload {
        Payload::DerVerify(v) if v.matches_expectation == Some(false) => EXIT_MISMATCH,
        Payload::DerVerify(v) if v.checks.iter().any(|c| !c.passed) => EXIT_MISMATCH,
        Payload::Batch(b) if b.mismatches > 0 => EXIT_MISMATCH,
        Payload::Batch(b) if b.errors > 0 => EXIT_INPUT,
        _ => EXIT_OK,
    };
    let report = Report {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        algebra,
        seed: cfg.seed,
        timings: Timings {
            total_ms: elapsed_ms(start),
        },
        payload,
    };
    Ok((code, report))
}

pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Markdown => report.to_markdown(),
    }
}

/// Writes `text` to `path`, or standard output when `path` is `None`.
pub fn emit(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
