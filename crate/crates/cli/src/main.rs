//! dtheat: run discrete-time heat kernel experiments from JSON configs.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use config::Kind;

#[derive(Parser)]
#[command(version, about = "Discrete-time heat kernel experiments", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Experiment document (JSON)
    #[arg(long)]
    config: PathBuf,
    /// Output directory; beats DTHEAT_OUTPUT_DIR and the config's output_dir
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the sweeps
    #[arg(long)]
    threads: Option<usize>,
    /// Seed for noise profiles; beats the config's seed
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the kernel or a derived quantity on radii
    KernelEval(Common),
    /// Compare the closed form with quadrature and check the mass
    KernelCheck(Common),
    /// Solve on a periodic grid and write the fields
    Solve(Common),
    /// Decay-rate sweep for the kernel, solution or Duhamel term
    Decay(Common),
    /// Large-time convergence to the mass-weighted kernel
    Converge(Common),
    /// Two-sided L² decay
    L2opt(Common),
    /// Convergence of the kernel at fixed time to the heat kernel
    Yosida(Common),
    /// Radial profiles at nh = 1 next to the heat kernel at t = 1
    Figures(Common),
    /// Check a config without running it
    Validate(Common),
}

const REFUSED: u8 = 2;
const FAILED: u8 = 1;

fn refuse(kind: Option<Kind>, violations: &[String]) -> ExitCode {
    println!(
        "{}",
        json!({
            "status": "refused",
            "kind": kind.map(Kind::name),
            "violations": violations,
        })
    );
    ExitCode::from(REFUSED)
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!(
        "{}",
        json!({ "status": "error", "message": message.to_string() })
    );
    ExitCode::from(FAILED)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        Command::KernelEval(a) => (Some(Kind::KernelEval), a),
        Command::KernelCheck(a) => (Some(Kind::KernelCheck), a),
        Command::Solve(a) => (Some(Kind::Solve), a),
        Command::Decay(a) => (Some(Kind::Decay), a),
        Command::Converge(a) => (Some(Kind::Converge), a),
        Command::L2opt(a) => (Some(Kind::L2opt), a),
        Command::Yosida(a) => (Some(Kind::Yosida), a),
        Command::Figures(a) => (Some(Kind::Figures), a),
        Command::Validate(a) => (None, a),
    };
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {}: {e}", args.config.display())),
    };
    let out = args
        .out
        .or_else(|| std::env::var_os("DTHEAT_OUTPUT_DIR").map(PathBuf::from));

    let Some(kind) = kind else {
        let kind = match config::declared_kind(&text) {
            Ok(k) => k,
            Err(v) => return refuse(None, &v),
        };
        return match config::resolve(&text, kind, args.seed, out) {
            Ok(_) => {
                println!(
                    "{}",
                    json!({ "status": "valid", "kind": kind.name(), "violations": [] })
                );
                ExitCode::SUCCESS
            }
            Err(v) => refuse(Some(kind), &v),
        };
    };

    let resolved = match config::resolve(&text, kind, args.seed, out) {
        Ok(r) => r,
        Err(v) => return refuse(Some(kind), &v),
    };
    if let Some(k) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            return fail(e);
        }
    }

    let lock = match output::Lock::acquire(&resolved.output_dir) {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    log::info!("running {} ({})", resolved.name, kind.name());
    let outcome = match run::run(&resolved) {
        Ok(o) => o,
        Err(dtheat::Error::Precondition(v)) => {
            drop(lock);
            return refuse(Some(kind), &[v]);
        }
        Err(e) => {
            drop(lock);
            return fail(e);
        }
    };
    if let Err(e) = output::write(&resolved, &outcome) {
        return fail(e);
    }
    drop(lock);
    match serde_json::to_string(&outcome.summary) {
        Ok(s) => println!("{s}"),
        Err(e) => return fail(e),
    }
    ExitCode::SUCCESS
}
