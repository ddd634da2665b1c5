//! `zetacond`: evaluate `P(s)`, predict conditional tail probabilities near
//! zeros, classify off-critical lags, and run the Monte Carlo checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
mod commands;
mod error;
mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;

use commands::{
    CharactersArgs, ClassifyArgs, McArgs, Outcome, PredictArgs, PrimeZetaArgs, ZerosArgs,
};
use error::{CliError, Result};
use manifest::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "zetacond", version, about)]
struct Cli {
    /// Where to write the run manifest (default: next to the first output).
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate P(s) by Möbius inversion or as a truncated prime sum.
    Primezeta(PrimeZetaArgs),
    /// Tail probability of log|ζ(½+i(t+Δ))| below a threshold given a zero at t.
    Predict(PredictArgs),
    /// Sign of the off-critical discriminant Re P(2σ+iΔ).
    Classify(ClassifyArgs),
    /// Monte Carlo checks of the truncated prime series.
    Mc(McArgs),
    /// Zeros of ζ(½+it) below a height, one ordinate per line.
    Zeros(ZerosArgs),
    /// Dump the Dirichlet characters of a modulus as JSON.
    Characters(CharactersArgs),
    /// Rerun the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
struct ReplayArgs {
    /// Manifest written by an earlier run.
    manifest_file: PathBuf,

    /// Write the outputs into this directory instead of their recorded paths.
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

fn execute(command: Command, manifest_path: Option<PathBuf>) -> Result<bool> {
    let (name, params, outcome) = match command {
        Command::Primezeta(a) => (
            "primezeta",
            serde_json::to_value(&a)?,
            commands::primezeta(&a)?,
        ),
        Command::Predict(a) => ("predict", serde_json::to_value(&a)?, commands::predict(&a)?),
        Command::Classify(a) => (
            "classify",
            serde_json::to_value(&a)?,
            commands::classify(&a)?,
        ),
        Command::Mc(a) => ("mc", serde_json::to_value(&a)?, commands::mc(&a)?),
        Command::Zeros(a) => ("zeros", serde_json::to_value(&a)?, commands::zeros(&a)?),
        Command::Characters(a) => (
            "characters",
            serde_json::to_value(&a)?,
            commands::characters(&a)?,
        ),
        Command::Replay(a) => return replay(&a, manifest_path),
    };
    let Outcome {
        seed,
        outputs,
        passed,
    } = outcome;
    let manifest = RunManifest::new(name, &params, seed, outputs)?;
    let path = manifest_path.unwrap_or_else(|| manifest.default_path());
    manifest.write(&path)?;
    Ok(passed)
}

fn parse_params<T: DeserializeOwned>(manifest: &RunManifest) -> Result<T> {
    Ok(serde_json::from_value(manifest.parameters.clone())?)
}

fn relocate(path: &mut PathBuf, dir: &Path) {
    if let Some(name) = path.file_name() {
        *path = dir.join(name);
    }
}

fn replay(args: &ReplayArgs, manifest_path: Option<PathBuf>) -> Result<bool> {
    let recorded = RunManifest::load(&args.manifest_file)?;
    let dir = args.output_dir.as_deref();
    let command = match recorded.subcommand.as_str() {
        "primezeta" => Command::Primezeta(parse_params(&recorded)?),
        "classify" => Command::Classify(parse_params(&recorded)?),
        "predict" => {
            let mut a: PredictArgs = parse_params(&recorded)?;
            if let Some(dir) = dir {
                relocate(&mut a.out, dir);
                if let Some(svg) = a.svg.as_mut() {
                    relocate(svg, dir);
                }
            }
            Command::Predict(a)
        }
        "mc" => {
            let mut a: McArgs = parse_params(&recorded)?;
            if let (Some(dir), Some(out)) = (dir, a.out.as_mut()) {
                relocate(out, dir);
            }
            Command::Mc(a)
        }
        "zeros" => {
            let mut a: ZerosArgs = parse_params(&recorded)?;
            if let Some(dir) = dir {
                relocate(&mut a.out, dir);
            }
            Command::Zeros(a)
        }
        "characters" => {
            let mut a: CharactersArgs = parse_params(&recorded)?;
            if let (Some(dir), Some(out)) = (dir, a.out.as_mut()) {
                relocate(out, dir);
            }
            Command::Characters(a)
        }
        other => {
            return Err(CliError::Usage(format!(
                "manifest records unknown subcommand {other:?}"
            )))
        }
    };
    let manifest_path = manifest_path.or_else(|| {
        let name = args.manifest_file.file_name()?;
        dir.map(|d| d.join(name))
    });
    execute(command, manifest_path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command, cli.manifest) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
