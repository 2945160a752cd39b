//! Command-line front end.
//!
//! ```text
//! riesz-prob validate <path>
//! riesz-prob check <name> --space <path> [--event NAME]... [--partition NAME]
//!                         [--expectation NAME] [--f COORDS|e] [--index J] [--out <path>]
//! riesz-prob fuzz --seed N --trials N --max-outcomes N --max-bands N [--out <path>]
//! ```
//!
//! `--ie-cap N` (any subcommand) overrides the inclusion-exclusion band cap.
//!
//! Exit codes: see [`exit`].

pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bands::{Band, DEFAULT_IE_CAP};
use crate::cond_expectation::CondExpectation;
use crate::riesz_core::{Element, Rational};
use crate::theorems::{
    check_axioms, check_bayes, check_condprob, check_correspondence, check_inclusion_exclusion,
    check_independence, check_ltp, fuzz_campaign, BandPartition, CheckKind, CheckReport,
    FuzzConfig,
};

use report::{ConfigEcho, RunReport};
use spec::{LoadedSpec, SpaceSpec, SpecError};

/// Process exit codes.
pub mod exit {
    /// Every check passed (or the spec is valid).
    pub const OK: i32 = 0;
    /// At least one check failed.
    pub const CHECK_FAILED: i32 = 1;
    /// Bad arguments, unknown names, unreadable files.
    pub const USAGE: i32 = 2;
    /// The spec file could not be parsed.
    pub const PARSE_ERROR: i32 = 3;
    /// The spec parsed but violates an invariant.
    pub const INVARIANT_VIOLATION: i32 = 4;
    /// No check failed, but at least one was skipped because its provisos
    /// did not hold.
    pub const PRECONDITION_SKIPPED: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(
    name = "riesz-prob",
    version,
    about = "Exact conditional probability, total probability and Bayes' theorem on finite Riesz spaces"
)]
pub struct Cli {
    /// Maximum number of bands accepted by inclusion-exclusion.
    #[arg(long, global = true, default_value_t = DEFAULT_IE_CAP)]
    pub ie_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a space spec and print its normalized form.
    Validate { path: PathBuf },
    /// Run one check against a space spec.
    Check(CheckArgs),
    /// Run a seeded random campaign over all checks.
    Fuzz(FuzzArgs),
}

#[derive(Debug, clap::Args)]
pub struct CheckArgs {
    /// condprob, independence, ltp, bayes, inclusion-exclusion, axioms or correspondence.
    pub name: String,
    #[arg(long)]
    pub space: PathBuf,
    /// Named event; repeat for checks that take several.
    #[arg(long = "event")]
    pub events: Vec<String>,
    /// Named partition. For condprob, independence and axioms it defines the
    /// conditional expectation; for ltp, bayes and correspondence it is the
    /// band decomposition.
    #[arg(long)]
    pub partition: Option<String>,
    /// Named partition defining the conditional expectation for ltp and
    /// bayes. Defaults to the one-block expectation.
    #[arg(long)]
    pub expectation: Option<String>,
    /// The element f: `e`, or comma-separated coordinates in outcome order.
    #[arg(long, default_value = "e")]
    pub f: String,
    /// 1-based band index for bayes; all bands when omitted.
    #[arg(long)]
    pub index: Option<usize>,
    /// Write the machine-readable report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 8)]
    pub max_outcomes: usize,
    #[arg(long, default_value_t = 6)]
    pub max_bands: usize,
    /// Corrupt the operator in the axiom check (negative control).
    #[arg(long)]
    pub inject_fault: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure that ends the command with a specific exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        let code = match e {
            SpecError::Parse(_) => exit::PARSE_ERROR,
            SpecError::Invariant(_) => exit::INVARIANT_VIOLATION,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` and runs the command, writing human output to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Validate { path } => cmd_validate(path, out),
        Command::Check(args) => cmd_check(args, cli.ie_cap, out),
        Command::Fuzz(args) => cmd_fuzz(args, cli.ie_cap, out),
    };
    match result {
        Ok(code) => code,
        Err(abort) => {
            let _ = writeln!(err, "error: {}", abort.message);
            abort.code
        }
    }
}

fn read_spec(path: &Path) -> Result<SpaceSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(SpaceSpec::parse(&text)?)
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let loaded = read_spec(path)?.load()?;
    let normalized = loaded.normalized();
    let _ = writeln!(out, "# valid: {} outcomes", loaded.space.len());
    let _ = write!(out, "{}", normalized.to_toml());
    Ok(exit::OK)
}

fn lookup_event<'a>(spec: &'a LoadedSpec, name: &str) -> Result<&'a Band, CliError> {
    spec.events
        .get(name)
        .ok_or_else(|| CliError::usage(format!("unknown event `{name}`")))
}

fn lookup_expectation(spec: &LoadedSpec, name: Option<&str>) -> Result<CondExpectation, CliError> {
    match name {
        None => Ok(CondExpectation::expectation(&spec.space)),
        Some(n) => spec
            .partitions
            .get(n)
            .map(|p| CondExpectation::new(p.clone()))
            .ok_or_else(|| CliError::usage(format!("unknown partition `{n}`"))),
    }
}

fn lookup_band_partition(spec: &LoadedSpec, name: Option<&str>) -> Result<BandPartition, CliError> {
    let name = name.ok_or_else(|| CliError::usage("this check needs --partition"))?;
    spec.partitions
        .get(name)
        .map(BandPartition::from_partition)
        .ok_or_else(|| CliError::usage(format!("unknown partition `{name}`")))
}

/// Parses `e` or a comma-separated coordinate list.
pub fn parse_element(spec: &LoadedSpec, text: &str) -> Result<Element, String> {
    if text.trim() == "e" {
        return Ok(Element::unit(&spec.space));
    }
    let coords = text
        .split(',')
        .map(|c| c.parse::<Rational>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    Element::new(&spec.space, coords).map_err(|e| e.to_string())
}

fn expect_events(args: &CheckArgs, count: usize) -> Result<(), CliError> {
    if args.events.len() != count {
        return Err(CliError::usage(format!(
            "{} needs exactly {count} --event argument(s), got {}",
            args.name,
            args.events.len()
        )));
    }
    Ok(())
}

pub fn cmd_check(args: &CheckArgs, ie_cap: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    let kind = CheckKind::from_name(&args.name)
        .ok_or_else(|| CliError::usage(format!("unknown check `{}`", args.name)))?;
    let spec = read_spec(&args.space)?.load()?;
    let f = parse_element(&spec, &args.f).map_err(|e| CliError::usage(format!("--f: {e}")))?;
    let events = args
        .events
        .iter()
        .map(|n| lookup_event(&spec, n).cloned())
        .collect::<Result<Vec<_>, _>>()?;
    let internal = |e: &dyn std::fmt::Display| CliError::usage(e.to_string());

    let reports: Vec<CheckReport> = match kind {
        CheckKind::Condprob => {
            expect_events(args, 2)?;
            let t = lookup_expectation(
                &spec,
                args.expectation.as_deref().or(args.partition.as_deref()),
            )?;
            vec![check_condprob(&t, &events[0], &events[1], &f).map_err(|e| internal(&e))?]
        }
        CheckKind::Independence => {
            expect_events(args, 2)?;
            let t = lookup_expectation(
                &spec,
                args.expectation.as_deref().or(args.partition.as_deref()),
            )?;
            vec![check_independence(&t, &events[0], &events[1]).map_err(|e| internal(&e))?]
        }
        CheckKind::Ltp => {
            expect_events(args, 1)?;
            let parts = lookup_band_partition(&spec, args.partition.as_deref())?;
            let t = lookup_expectation(&spec, args.expectation.as_deref())?;
            vec![check_ltp(&t, &parts, &events[0], &f).map_err(|e| internal(&e))?]
        }
        CheckKind::Bayes => {
            expect_events(args, 1)?;
            let parts = lookup_band_partition(&spec, args.partition.as_deref())?;
            let t = lookup_expectation(&spec, args.expectation.as_deref())?;
            let indices: Vec<usize> = match args.index {
                Some(0) => return Err(CliError::usage("--index is 1-based")),
                Some(j) => vec![j - 1],
                None => (0..parts.len()).collect(),
            };
            indices
                .into_iter()
                .map(|j| check_bayes(&t, &parts, &events[0], j, &f).map_err(|e| internal(&e)))
                .collect::<Result<_, _>>()?
        }
        CheckKind::InclusionExclusion => {
            if events.is_empty() {
                return Err(CliError::usage(
                    "inclusion-exclusion needs at least one --event",
                ));
            }
            let probe = (args.f.trim() != "e").then_some(&f);
            vec![check_inclusion_exclusion(&events, ie_cap, probe).map_err(|e| internal(&e))?]
        }
        CheckKind::Axioms => {
            let t = lookup_expectation(
                &spec,
                args.expectation.as_deref().or(args.partition.as_deref()),
            )?;
            vec![check_axioms(&t, std::slice::from_ref(&f)).map_err(|e| internal(&e))?]
        }
        CheckKind::Correspondence => {
            if events.is_empty() {
                return Err(CliError::usage("correspondence needs at least one --event"));
            }
            let parts = lookup_band_partition(&spec, args.partition.as_deref())?;
            vec![check_correspondence(&spec.space, &events, &parts).map_err(|e| internal(&e))?]
        }
    };

    let run = RunReport::new(
        ConfigEcho {
            command: "check".into(),
            check: Some(kind.name().into()),
            spec: Some(args.space.display().to_string()),
            ie_cap,
            ..Default::default()
        },
        reports,
        None,
    );
    finish(&run, args.out.as_deref(), out)
}

pub fn cmd_fuzz(args: &FuzzArgs, ie_cap: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = FuzzConfig {
        seed: args.seed,
        trials: args.trials,
        max_outcomes: args.max_outcomes,
        max_bands: args.max_bands,
        ie_cap,
        inject_fault: args.inject_fault,
    };
    let campaign = fuzz_campaign(&config).map_err(|e| CliError::usage(e.to_string()))?;
    let run = RunReport::from_campaign(&config, campaign);
    finish(&run, args.out.as_deref(), out)
}

fn finish(run: &RunReport, path: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let _ = write!(out, "{}", run.render_human());
    if let Some(path) = path {
        std::fs::write(path, run.to_json())
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(run.exit_code())
}
