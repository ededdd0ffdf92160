//! Command-line front end shared by the `risce` binary and in-process callers.

use std::io::Write;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use crate::sim::output::{
    sidecar_path, write_file, write_meta, write_nmse_csv, write_overhead_csv, write_trials_csv, RunMeta,
};
use crate::sim::{run_nmse_sweep, run_overhead_table, ExperimentConfig};
use crate::{Error, Result};

/// Channel estimation simulator for double- and single-RIS MIMO links.
#[derive(Parser)]
#[command(name = "risce", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient counts and minimum training per element split.
    Overhead(Common),
    /// Monte-Carlo NMSE against SNR.
    Nmse {
        #[command(flatten)]
        common: Common,
        /// Overrides the configured trial count.
        #[arg(long)]
        trials: Option<usize>,
        /// Reports measured wall time in the CSV (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; defaults to the configured path, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    threads: Option<usize>,
}

fn load(common: &Common) -> Result<(ExperimentConfig, Option<PathBuf>, usize)> {
    let mut cfg = ExperimentConfig::load(&common.config)?;
    if let Some(seed) = common.seed {
        cfg.master_seed.seed = seed;
    }
    let out = common.out.clone().or_else(|| cfg.output_path.clone());
    cfg.output_path = out.clone();
    let threads = match common.threads {
        Some(0) => return Err(Error::Config("--threads must be at least 1".into())),
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    Ok((cfg, out, threads))
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => write_file(path, bytes),
        None => std::io::stdout().write_all(bytes).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn buffer_err(source: std::io::Error) -> Error {
    Error::Io {
        path: "<buffer>".into(),
        source,
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let start = Instant::now();
    match cli.command {
        Command::Overhead(common) => {
            let (cfg, out, threads) = load(&common)?;
            let rows = run_overhead_table(&cfg)?;
            let mut buf = Vec::new();
            write_overhead_csv(&mut buf, &rows).map_err(buffer_err)?;
            emit(out.as_ref(), &buf)?;
            if let Some(path) = &out {
                let meta = RunMeta {
                    artifact: env!("CARGO_PKG_NAME"),
                    version: env!("CARGO_PKG_VERSION"),
                    command: "overhead",
                    config: &cfg,
                    threads,
                    created_unix_s: now_unix(),
                    wall_s: start.elapsed().as_secs_f64(),
                    warnings: &[],
                };
                write_meta(&sidecar_path(path, "meta.json"), &meta)?;
            }
        }
        Command::Nmse { common, trials, timing } => {
            let (mut cfg, out, threads) = load(&common)?;
            if let Some(t) = trials {
                cfg.trials = t;
            }
            cfg.validate()?;
            let sweep = run_nmse_sweep(&cfg, threads, timing)?;
            for w in &sweep.warnings {
                eprintln!("warning: {w}");
            }
            let mut buf = Vec::new();
            write_nmse_csv(&mut buf, &sweep.rows).map_err(buffer_err)?;
            emit(out.as_ref(), &buf)?;
            if let Some(path) = &out {
                let mut trials_buf = Vec::new();
                write_trials_csv(&mut trials_buf, &sweep.records).map_err(buffer_err)?;
                write_file(&sidecar_path(path, "trials.csv"), &trials_buf)?;
                let meta = RunMeta {
                    artifact: env!("CARGO_PKG_NAME"),
                    version: env!("CARGO_PKG_VERSION"),
                    command: "nmse",
                    config: &cfg,
                    threads,
                    created_unix_s: now_unix(),
                    wall_s: start.elapsed().as_secs_f64(),
                    warnings: &sweep.warnings,
                };
                write_meta(&sidecar_path(path, "meta.json"), &meta)?;
            }
        }
    }
    Ok(())
}
