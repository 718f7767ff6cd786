//! `provlog`: command-line front end.
//!
//! Exit codes: 0 success (or provable), 1 refuted (or failed suite), 2 error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "provlog", version, about = "Provability logic toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    G1,
    Enumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a formula in gl, gl3, gl4, glclosed, fgl:<n> or ilw3.
    Decide {
        #[arg(long)]
        logic: String,
        #[arg(long)]
        formula: String,
        /// Run the second engine and fail on disagreement.
        #[arg(long)]
        cross_check: bool,
        /// Write the countermodel as DOT to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 6)]
        max_worlds: usize,
        /// Seconds per call.
        #[arg(long, default_value_t = 10.0)]
        timeout: f64,
        /// GL.4 engine.
        #[arg(long, value_enum, default_value_t = Engine::G1)]
        engine: Engine,
    },
    /// Normal form of an F_n formula over G_n.
    Normalform {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        formula: String,
        /// Print the rewrite log.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Translate an interpretability formula into the GL language.
    Translate {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Truth of a formula at a world of a JSON model (path or inline JSON).
    Modelcheck {
        #[arg(long)]
        model: String,
        #[arg(long)]
        world: String,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Truncations of Ignatiev's frame.
    Ignatiev {
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// Highest relation index.
        #[arg(long, default_value_t = 2)]
        levels: u32,
        #[arg(long, value_enum)]
        export: Option<ExportFormat>,
        /// Run the linearity experiment for arguments A and B.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        linearity: Option<Vec<String>>,
    },
    /// p-morphism from G1 onto the subframe generated by a world.
    Pmorph {
        /// Frame JSON (path or inline JSON).
        #[arg(long)]
        frame: String,
        #[arg(long)]
        world: String,
    },
    /// Run an experiment suite and print its check table.
    Experiment {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = provlog_core::experiments::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("PROVLOG_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("PROVLOG_THREADS must be a number, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| commands::run(cli.command));
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
