use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use corrsched::experiments::{
    fig3_csv, reproduce_fig1, reproduce_fig3, run_experiment, signaling_overhead, ExperimentConfig,
    OverheadQuery, Scope, SignalingMode,
};
use corrsched::{Error, Result};

#[derive(Parser)]
#[command(
    name = "corrsched",
    version,
    about = "Correlation-aware slot allocation experiments"
)]
struct Cli {
    /// Worker threads (defaults to one per core). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment file and write one CSV row per (lambda, scheme).
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        frames: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-user throughput against joint activity for one load.
    Fig1 {
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Min-Max vs Min-Sum on the two four-user repeating patterns.
    Fig3 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Signaling bits needed to distribute an allocation.
    Overhead {
        #[arg(long)]
        users: u64,
        #[arg(long)]
        slots: u64,
        /// Scheduled users M; implies subset scope.
        #[arg(long)]
        scheduled: Option<u64>,
        /// Bits per encoded probability.
        #[arg(long, default_value_t = 8)]
        bits: u64,
        #[arg(long, value_enum, default_value_t = Mode::SingleSlot)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    SingleSlot,
    Probabilistic,
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep {
            config,
            seed,
            frames,
            out,
        } => {
            let mut cfg = ExperimentConfig::from_file(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(frames) = frames {
                cfg.frames = frames;
            }
            let table = run_experiment(&cfg)?;
            emit(&table.to_csv(), out.as_ref())
        }
        Command::Fig1 {
            lambda,
            points,
            out,
        } => emit(&reproduce_fig1(lambda, points)?.to_csv(), out.as_ref()),
        Command::Fig3 { out } => emit(&fig3_csv(&reproduce_fig3()?), out.as_ref()),
        Command::Overhead {
            users,
            slots,
            scheduled,
            bits,
            mode,
        } => {
            let query = OverheadQuery {
                users,
                slots,
                scheduled: scheduled.unwrap_or(users),
                probability_bits: bits,
                mode: match mode {
                    Mode::SingleSlot => SignalingMode::SingleSlot,
                    Mode::Probabilistic => SignalingMode::Probabilistic,
                },
                scope: if scheduled.is_some() {
                    Scope::Subset
                } else {
                    Scope::AllUsers
                },
            };
            let value = signaling_overhead(&query)?;
            println!("bits,{value:.6}");
            println!("bits_rounded,{}", value.ceil());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli)),
            Err(e) => Err(Error::config("threads", e.to_string())),
        },
        None => run(cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
