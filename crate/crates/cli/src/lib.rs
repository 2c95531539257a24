//! Command-line front end for `readability-core`.
//!
//! Every command prints one envelope, `{"status", "payload", "diagnostics"}`,
//! as canonical JSON on stdout. The status maps to the exit code: `ok` 0,
//! `violation` 1 (a checked property failed), `error` 2 (bad input or budget).

pub mod commands;
pub mod format;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "readability", version, about = "Overlap labelings and readability of bipartite graphs and digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph family member or a fixture.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[command(flatten)]
        out: Output,
        /// Also write a DOT rendering here.
        #[arg(long, global = true)]
        dot: Option<PathBuf>,
    },
    /// Check that a labeling is an overlap labeling of a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long, value_enum)]
        model: Model,
        #[command(flatten)]
        out: Output,
    },
    /// Run rule checks and graph parameters.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        /// Needed for p4, strict-p4 and hub; defaults to the graph file when it is a bundle.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long = "check", value_enum, value_delimiter = ',', required = true)]
        checks: Vec<Check>,
        /// Rule for min-decomposition.
        #[arg(long, value_enum, default_value_t = RuleArg::P4)]
        rule: RuleArg,
        #[arg(long, value_enum, default_value_t = HubModeArg::Exact)]
        hub_mode: HubModeArg,
        #[command(flatten)]
        budget: BudgetArg,
        #[command(flatten)]
        out: Output,
    },
    /// Build a labeling from a decomposition.
    Construct {
        #[arg(long)]
        graph: PathBuf,
        /// Not used by `radius`; defaults to the graph file when it is a bundle.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: Method,
        /// Write the construction trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Convert between digraphs and balanced bipartite graphs.
    Transform {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        graph: PathBuf,
        /// Required for lift and project.
        #[arg(long)]
        labeling: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Exact readability and achievability.
    Oracle {
        #[arg(value_enum)]
        query: Query,
        #[arg(long)]
        graph: PathBuf,
        /// For `achieves`; defaults to the graph file when it is a bundle.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
        #[command(flatten)]
        jobs: JobsArg,
        #[command(flatten)]
        out: Output,
    },
    /// Rewrite a labeling over the binary alphabet.
    Encode {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Seeded experiments.
    Experiment {
        #[command(subcommand)]
        kind: Experiment,
    },
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// `H_k` on the nonzero `k`-bit vectors.
    Hadamard {
        #[arg(long)]
        k: usize,
    },
    /// The sharp radius tree `T_i`.
    RadiusTree {
        #[arg(long)]
        i: usize,
    },
    /// An `n x n` graph with independent edges of probability `p`.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    /// A graph with its decomposition and expected verdicts.
    Fixture {
        #[arg(long)]
        name: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Experiment {
    /// Histogram of exact readability over random `n x n` graphs, checking
    /// `hub <= r <= 2^hub - 1` on every sample.
    Counting {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[command(flatten)]
        budget: BudgetArg,
        #[command(flatten)]
        jobs: JobsArg,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the payload alone to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetArg {
    /// Search budget in candidate evaluations.
    #[arg(long, default_value_t = readability_core::Budget::DEFAULT_LIMIT)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct JobsArg {
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Bipartite,
    Digraph,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    P4,
    StrictP4,
    Hub,
    Distinctness,
    HubNumber,
    Radius,
    C4Free,
    MinDecomposition,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleArg {
    P4,
    StrictP4,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum HubModeArg {
    Exact,
    UpperBound,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Achieve,
    Bm,
    Radius,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Phi,
    Psi,
    Lift,
    Project,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    Readability,
    Achieves,
}
