//! `svlab`: Svetlichny-violation toolkit for permutationally invariant
//! Gaussian states, under displaced-parity and pseudospin measurements.

// `!(x >= lo)` rejects NaN flag and config values along with the range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use config::FileConfig;

#[derive(Parser)]
#[command(name = "svlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output file; stdout when absent.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format; only csv is defined.
    #[arg(long, global = true, default_value = "csv", value_parser = ["csv"])]
    format: String,
    /// Worker threads; falls back to SVLAB_THREADS, then all cores.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// TOML config file; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Extra multi-start lattice seed for the optimizers; 0 adds none.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Also write a gnuplot script next to the CSV (needs --out).
    #[arg(long, global = true)]
    gnuplot: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Optimized Svetlichny value on a grid of the mixedness factor a.
    ParityScan {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a_min: Option<f64>,
        #[arg(long)]
        a_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Svetlichny value over a (p0, p1) momentum grid at fixed a.
    ParityLandscape {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        p_min: Option<f64>,
        #[arg(long)]
        p_max: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Three-mode pseudospin curves on a squeezing grid.
    PseudospinScan {
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Shell sequence f(n) with a power-law tail fit.
    FSequence {
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        fit_lo: Option<usize>,
        #[arg(long)]
        fit_hi: Option<usize>,
    },
    /// Violation threshold of the mixedness factor for odd mode counts.
    Threshold {
        #[arg(value_name = "N")]
        n: Option<usize>,
    },
    /// Fast cross-oracle self-checks.
    Validate,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not failures; everything else is usage.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("svlab: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    init_threads(cli.threads)?;
    let file = FileConfig::load(cli.config.as_deref())?;
    let out = cli.out.as_deref();
    match cli.command {
        Cmd::ParityScan {
            n,
            a_min,
            a_max,
            steps,
        } => {
            let cfg = config::ParityScanConfig::resolve(
                file.parity_scan.as_ref(),
                n,
                a_min,
                a_max,
                steps,
            )?;
            commands::parity_scan(&cfg, cli.seed, out, cli.gnuplot)
        }
        Cmd::ParityLandscape {
            n,
            a,
            p_min,
            p_max,
            grid,
        } => {
            let cfg = config::LandscapeConfig::resolve(
                file.parity_landscape.as_ref(),
                n,
                a,
                p_min,
                p_max,
                grid,
            )?;
            commands::parity_landscape(&cfg, out, cli.gnuplot)
        }
        Cmd::PseudospinScan {
            r_min,
            r_max,
            steps,
        } => {
            let cfg = config::PseudospinScanConfig::resolve(
                file.pseudospin_scan.as_ref(),
                r_min,
                r_max,
                steps,
            )?;
            commands::pseudospin_scan(&cfg, out, cli.gnuplot)
        }
        Cmd::FSequence {
            n_max,
            fit_lo,
            fit_hi,
        } => {
            let cfg =
                config::FSequenceConfig::resolve(file.f_sequence.as_ref(), n_max, fit_lo, fit_hi)?;
            commands::f_sequence(&cfg, out, cli.gnuplot)
        }
        Cmd::Threshold { n } => {
            let n = config::resolve_threshold_n(file.threshold.as_ref(), n)?;
            commands::threshold_cmd(n, out)
        }
        Cmd::Validate => commands::validate(out),
    }
}

/// Size the worker pool: --threads, then SVLAB_THREADS, then rayon's default.
/// The pool size never reaches the output, so results are byte-identical
/// across worker counts.
fn init_threads(flag: Option<usize>) -> Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("SVLAB_THREADS") {
            Ok(v) => Some(v.parse::<usize>().map_err(|_| {
                anyhow::anyhow!("SVLAB_THREADS must be a positive integer, got {v:?}")
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            anyhow::bail!("thread count must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| anyhow::anyhow!("sizing the worker pool: {e}"))?;
    }
    Ok(())
}
