use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "parrep", about = "Exact analysis of multiplayer games and their parallel repetitions")]
pub struct Cli {
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output format for tabular results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exhaustive branch-and-bound; refuses games over the budget.
    Exact,
    /// Local search; returns a certified lower bound.
    Heuristic,
    /// Exact within the budget, heuristic beyond it.
    Auto,
}

#[derive(Debug, Args)]
pub struct GameInput {
    /// Game JSON file, or `-` for stdin (the default).
    #[arg(value_name = "GAME")]
    file: Option<PathBuf>,
    /// Same as the positional GAME.
    #[arg(long = "game", value_name = "GAME", conflicts_with = "file")]
    flag: Option<PathBuf>,
}

impl GameInput {
    pub fn path(&self) -> PathBuf {
        self.file.clone().or_else(|| self.flag.clone()).unwrap_or_else(|| PathBuf::from("-"))
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Largest strategy count searched exhaustively.
    #[arg(long, default_value_t = 1 << 30)]
    pub budget: u128,
    /// Heuristic restarts.
    #[arg(long, default_value_t = 32)]
    pub restarts: u64,
    /// Heuristic kicks per restart.
    #[arg(long, default_value_t = 2000)]
    pub steps: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a game and print its canonical JSON.
    Validate(GameInput),

    /// Classical value of G^⊗n with a witness strategy.
    Value {
        #[command(flatten)]
        input: GameInput,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[command(flatten)]
        search: SearchArgs,
    },

    /// Exact non-signaling value with its optimal box.
    NsValue {
        #[command(flatten)]
        input: GameInput,
        /// Also solve G^⊗n and compare.
        #[arg(long)]
        check_invariance: bool,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Largest LP variable count.
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },

    /// Connectivity and the binary 3-player class.
    Classify(GameInput),

    /// Print G^⊗n, or evaluate a strategy on it.
    Repeat {
        #[command(flatten)]
        input: GameInput,
        #[arg(long)]
        n: usize,
        /// Strategy JSON for G^⊗n.
        #[arg(long)]
        strategy: Option<PathBuf>,
        /// Monte-Carlo trials for the strategy (0 skips sampling).
        #[arg(long, default_value_t = 0)]
        trials: u64,
    },

    /// Value of G^⊗n for n = 1..=n-max.
    Decay {
        #[command(flatten)]
        input: GameInput,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        search: SearchArgs,
    },

    /// Print a named game.
    Zoo {
        /// Game name; omit to list the names.
        name: Option<String>,
        /// Parameter of `hw1-canonical`.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },

    /// Random 3-CNF games: connectivity and values over seeds.
    Cnf {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        /// Number of seeds, starting at `--seed`.
        #[arg(long, visible_alias = "trials", default_value_t = 1)]
        seeds: u64,
        /// Also compute exact values.
        #[arg(long)]
        value: bool,
        /// Print the game for `--seed` instead of statistics.
        #[arg(long)]
        emit_game: bool,
    },

    /// Distribution diagnostics.
    #[command(subcommand)]
    Diag(Diag),
}

#[derive(Debug, Subcommand)]
pub enum Diag {
    /// Randomized suite of product distributions and events.
    Pinsker {
        /// Largest number of coordinates.
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        cases: u64,
    },
    /// Exact L1 quantities for a product event on G^⊗n.
    Embedding {
        #[command(flatten)]
        input: GameInput,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Restrict player P's question in coordinate C (1-based) to symbol V, as `P:C:V`.
        #[arg(long = "pin")]
        pins: Vec<String>,
    },
    /// Exact and sampled facts about the two correlated spaces.
    Spaces {
        /// Game JSON file; the anti-correlation game when omitted.
        #[arg(long)]
        game: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Samples drawn from each space (0 skips sampling).
        #[arg(long, default_value_t = 0)]
        samples: u64,
    },
}
