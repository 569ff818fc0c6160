//! Argument parsing and subcommand dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, Result};
use crate::family::{Family, MAX_HEIGHT_VAR};
use crate::format::{from_json, to_dot, to_json};
use crate::table::write_identity_table;
use crate::verify::{self, Check};

#[derive(Debug, Parser)]
#[command(
    name = "qdgg",
    version,
    about = "Build and verify quantized dual graded graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family and write it as JSON or DOT.
    Build {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification checks; exits 1 if any fails.
    Verify {
        #[arg(long, value_parser = parse_family, required_unless_present = "input", conflicts_with = "input")]
        family: Option<Family>,
        #[arg(long, conflicts_with = "input")]
        r: Option<u32>,
        #[arg(long, required_unless_present = "input", conflicts_with = "input")]
        height: Option<usize>,
        #[arg(long)]
        allow_large: bool,
        /// Verify a pair stored as JSON instead of building a family.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Comma-separated subset of qweyl,theorem1,mixed,family-lemma,q1,qminus1.
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of Σ f f′ against rⁿ[n]_q! for n up to the height.
    IdentityTable {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-export a JSON pair as JSON or DOT.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    /// Differential coefficient (fib and reflect only; default 1).
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub height: usize,
    /// Lift the per-family height limit.
    #[arg(long)]
    pub allow_large: bool,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Json,
}

/// Exit status: 0 everything passed, 1 a check failed, 2 bad usage or input.
pub fn exit_code(outcome: &Result<bool>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(_) => 2,
    }
}

/// Reads the height-limit override from the environment.
pub fn limit_from_env() -> Result<Option<usize>> {
    match std::env::var(MAX_HEIGHT_VAR) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            CliError::Usage(format!(
                "{MAX_HEIGHT_VAR} must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(None),
    }
}

/// Runs one command. `Ok(false)` means a check or identity failed.
pub fn run(cli: Cli, limit_override: Option<usize>, stdout: &mut dyn Write) -> Result<bool> {
    match cli.command {
        Command::Build { pair, format, out } => {
            let built = build(&pair, limit_override)?;
            let keyed = built.keyed();
            let text = match graph_format(format, out.as_deref()) {
                GraphFormat::Json => to_json(&keyed)?,
                GraphFormat::Dot => to_dot(&keyed),
            };
            emit(&text, out.as_deref(), stdout)?;
            Ok(true)
        }
        Command::Verify {
            family,
            r,
            height,
            allow_large,
            input,
            checks,
            format,
            out,
        } => {
            let checks = checks.as_deref().map(Check::parse_list).transpose()?;
            let report = match (input, family, height) {
                (Some(path), _, _) => {
                    let pair = from_json(&std::fs::read_to_string(path)?)?;
                    let checks = checks.unwrap_or_else(|| default_checks(None, pair.r()));
                    verify::run_loaded(&pair, &checks)?
                }
                (None, Some(family), Some(height)) => {
                    let built = build(
                        &PairArgs {
                            family,
                            r,
                            height,
                            allow_large,
                        },
                        limit_override,
                    )?;
                    let checks =
                        checks.unwrap_or_else(|| default_checks(Some(family), built.keyed().r()));
                    verify::run(&built, &checks)?
                }
                _ => {
                    return Err(CliError::Usage(
                        "verify needs --input or --family with --height".into(),
                    ))
                }
            };
            let text = match format {
                ReportFormat::Table => verify::render_table(&report),
                ReportFormat::Json => verify::render_json(&report)?,
            };
            emit(&text, out.as_deref(), stdout)?;
            Ok(report.passed)
        }
        Command::IdentityTable { pair, out } => {
            let built = build(&pair, limit_override)?;
            let keyed = built.keyed();
            let mut buf = Vec::new();
            let all_equal = write_identity_table(&keyed, keyed.height(), &mut buf)?;
            emit(
                &String::from_utf8(buf).expect("csv output is utf-8"),
                out.as_deref(),
                stdout,
            )?;
            Ok(all_equal)
        }
        Command::Export { input, format, out } => {
            let pair = from_json(&std::fs::read_to_string(&input)?)?;
            let text = match graph_format(format, out.as_deref()) {
                GraphFormat::Json => to_json(&pair)?,
                GraphFormat::Dot => to_dot(&pair),
            };
            emit(&text, out.as_deref(), stdout)?;
            Ok(true)
        }
    }
}

fn build(args: &PairArgs, limit_override: Option<usize>) -> Result<crate::family::Built> {
    let r = args
        .family
        .validate(args.r, args.height, args.allow_large, limit_override)?;
    args.family.build(r, args.height)
}

/// All checks that apply: no family lemma for loaded files or for `fib`
/// with `r > 1`.
fn default_checks(family: Option<Family>, r: u32) -> Vec<Check> {
    let lemma = match family {
        None => false,
        Some(Family::Fib) => r == 1,
        Some(_) => true,
    };
    Check::ALL
        .into_iter()
        .filter(|c| lemma || *c != Check::FamilyLemma)
        .collect()
}

/// Explicit format first, then the output extension, then JSON.
fn graph_format(format: Option<GraphFormat>, out: Option<&Path>) -> GraphFormat {
    format.unwrap_or_else(|| match out.and_then(Path::extension) {
        Some(ext) if ext == "dot" => GraphFormat::Dot,
        _ => GraphFormat::Json,
    })
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}
