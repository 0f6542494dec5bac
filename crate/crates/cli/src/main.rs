//! `safemem`: residual posets, memory-optimal synthesis and lower-bound games
//! for safety objectives.
//!
//! Exit codes: 0 success, 1 Eve loses (or no strategy found), 2 invalid
//! input, 3 internal invariant violation.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "safemem", version, about = "Memory requirements of safety objectives on game arenas")]
struct Cli {
    /// Worker threads for the parallel loops (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    MinResidual,
    Chain,
}

#[derive(Args, Debug)]
pub struct GameArgs {
    /// Arena JSON file
    #[arg(short, long)]
    arena: PathBuf,
    /// Objective automaton JSON file
    #[arg(short, long)]
    objective: PathBuf,
    /// Initial vertex id
    #[arg(long)]
    v0: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimize the objective and report its residual poset
    Residuals {
        #[arg(short, long)]
        objective: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Width certificate: antichain, chain cover and separators
    #[command(alias = "reswidth")]
    Width {
        #[arg(short, long)]
        objective: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide the winner and write a winning strategy
    Solve {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum, default_value = "min-residual")]
        algo: Algo,
        /// Re-check the strategy by model checking before writing it
        #[arg(long)]
        verify: bool,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Like `solve`, with the residual behind every memory state
    Synthesize {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum, default_value = "min-residual")]
        algo: Algo,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Model-check a strategy file
    Verify {
        #[command(flatten)]
        game: GameArgs,
        /// Strategy JSON file
        #[arg(short, long)]
        strategy: PathBuf,
    },
    /// Build the game in which the objective's width is necessary
    Lowerbound {
        #[arg(short, long)]
        objective: PathBuf,
        /// Directory for arena.json, objective.json and witness.json
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Also write arena.dot
        #[arg(long)]
        dot: bool,
    },
    /// Generate an objective (and for figure1 an arena)
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Graphviz instead of JSON
        #[arg(long, global = true)]
        dot: bool,
    },
    /// Least memory size of a winning strategy, by exhaustive search
    #[command(name = "bruteforce-mem")]
    BruteforceMem {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        /// Refuse instances with |V|·|E|·max_m above this
        #[arg(long, default_value_t = 1_000_000)]
        max_instance: usize,
        /// Search nodes allowed per memory size
        #[arg(long, default_value_t = 20_000_000)]
        max_nodes: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// Some color in 1..k is never seen
    Gensafety {
        #[arg(long)]
        k: usize,
    },
    /// Energy level never drops below zero, saturating at cap
    Energy {
        #[arg(long)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        init: usize,
    },
    /// a^n b^p c^ω with n <= p, at most N letters a
    Outbidding {
        #[arg(long)]
        n: usize,
    },
    /// Counter stays within 0..N under monotone actions
    Counter {
        #[arg(long)]
        n: usize,
        /// Comma-separated built-in actions (nop, inc, reset, half, next_pow2)
        #[arg(long, value_delimiter = ',', default_value = "inc,reset")]
        actions: Vec<String>,
    },
    /// The two-memory example and its arena
    Figure1 {
        /// Write objective.json and arena.json here instead of stdout
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Residuals { objective, format } => commands::residuals(&objective, format),
        Command::Width { objective, format } => commands::width(&objective, format),
        Command::Solve { game, algo, verify, out } => commands::solve(&game, algo, verify, out.as_deref()),
        Command::Synthesize { game, algo, out, format } => commands::synthesize(&game, algo, out.as_deref(), format),
        Command::Verify { game, strategy } => commands::verify(&game, &strategy),
        Command::Lowerbound { objective, out_dir, dot } => commands::lowerbound(&objective, &out_dir, dot),
        Command::Gen { family, dot } => commands::generate(&family, dot),
        Command::BruteforceMem { game, max_m, max_instance, max_nodes } => {
            commands::bruteforce(&game, max_m, max_instance, max_nodes)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
