mod commands;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use locdual_core::manifest::Manifest;
use serde::Serialize;

use commands::{Outcome, Status};

/// Dualisability, compactness and completion checks for local torsion objects.
#[derive(Parser, Debug)]
#[command(name = "locdual", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON manifest with the ring, prime, objects and parameters.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Resolution length for Betti and dualisability decisions.
    #[arg(long, global = true)]
    cutoff: Option<i64>,
    /// Total-degree precision for `hensel`.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Seed for `laws run`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Dualisability, compactness and shifted-unit recognition for each object.
    Classify,
    /// Betti numbers at the prime, or the reason there are infinitely many.
    Betti,
    /// Cohomology modules of each carrier.
    Homology,
    /// Tensor product of the two objects of the manifest.
    Tensor,
    /// Spanier–Whitehead dual `Hom(F, A)` of each carrier.
    Dual,
    /// Torsion/completion identities on each object of the PID model.
    GmCheck,
    /// Factor `x^2 - c` over the power series ring; `c` comes from `params.c`.
    Hensel,
    /// Cohomology of `Hom(pM, A) ⊗ Hom(pN, A)` over a hypersurface.
    KprojDemo,
    /// The prime spectrum of the completed local ring.
    Spectrum,
    /// Seeded law suites.
    Laws {
        #[command(subcommand)]
        action: LawsAction,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum LawsAction {
    /// Run every suite, or one named suite.
    Run {
        #[arg(long)]
        suite: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Betti => "betti",
            Command::Homology => "homology",
            Command::Tensor => "tensor",
            Command::Dual => "dual",
            Command::GmCheck => "gm-check",
            Command::Hensel => "hensel",
            Command::KprojDemo => "kproj-demo",
            Command::Spectrum => "spectrum",
            Command::Laws { .. } => "laws run",
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    engine_version: &'static str,
    manifest: &'a Manifest,
    results: serde_json::Value,
    timing_ms: f64,
}

fn read_manifest(path: &Path) -> Result<Manifest> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    match serde_path_to_error::deserialize(&mut de) {
        Ok(m) => Ok(m),
        Err(e) => {
            let at = e.path().to_string();
            bail!(
                "{}: invalid manifest at `{at}`: {}",
                path.display(),
                e.inner()
            )
        }
    }
}

fn run(cli: &Cli) -> Result<Status> {
    let start = Instant::now();
    let mut manifest = match &cli.manifest {
        Some(p) => read_manifest(p)?,
        None => Manifest::default(),
    };
    // flags override the manifest, and the report echoes the effective values
    if cli.cutoff.is_some() {
        manifest.params.cutoff = cli.cutoff;
    }
    if cli.precision.is_some() {
        manifest.params.precision = cli.precision;
    }
    if cli.seed.is_some() {
        manifest.params.seed = cli.seed;
    }
    let needs_manifest = !matches!(cli.command, Command::Laws { .. });
    if needs_manifest && cli.manifest.is_none() {
        bail!("`{}` needs --manifest PATH", cli.command.name());
    }
    let Outcome {
        results,
        text,
        status,
    } = match &cli.command {
        Command::Classify => commands::classify(&manifest),
        Command::Betti => commands::betti(&manifest),
        Command::Homology => commands::homology(&manifest),
        Command::Tensor => commands::tensor(&manifest),
        Command::Dual => commands::dual(&manifest),
        Command::GmCheck => commands::gm_check(&manifest),
        Command::Hensel => commands::hensel(&manifest),
        Command::KprojDemo => commands::kproj_demo(&manifest),
        Command::Spectrum => commands::spectrum(&manifest),
        Command::Laws {
            action: LawsAction::Run { suite },
        } => commands::laws_run(&manifest, suite.as_deref()),
    }?;
    if cli.json {
        let report = Report {
            command: cli.command.name(),
            engine_version: env!("CARGO_PKG_VERSION"),
            manifest: &manifest,
            results,
            timing_ms: start.elapsed().as_secs_f64() * 1000.0,
        };
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{text}");
    }
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
