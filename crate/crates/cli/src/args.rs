use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gamedecomp",
    version,
    about = "Decompose, classify and simulate finite normal-form games"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Comma-separated coordinates, e.g. `0.5,0.3,0.2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coords(pub Vec<f64>);

impl FromStr for Coords {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("`{}` is not a number", t.trim()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Coords)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split games into anti-zero-sum, kernel and anti-potential components
    Decompose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// JSON output (the default)
        #[arg(long, conflicts_with = "pretty")]
        json: bool,
        /// Aligned human-readable matrices
        #[arg(long)]
        pretty: bool,
    },
    /// Potential, zero-sum and stability flags as JSON
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Relative classification threshold
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Integrate the replicator dynamics and write the trajectory as CSV
    Simulate {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x0: Coords,
        /// Column population start (bimatrix games)
        #[arg(long, allow_hyphen_values = true)]
        y0: Option<Coords>,
        #[arg(long)]
        t_end: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append the column H = sum log x_i
        #[arg(long = "track-H")]
        track_h: bool,
    },
    /// Replicator field at a point and its three-part split
    Field {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: Coords,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<Coords>,
    },
    /// Build Zeeman games
    Zeeman {
        #[command(subcommand)]
        which: ZeemanCommand,
    },
    /// Print a basis matrix
    Basis {
        kind: BasisArg,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        lr: Option<usize>,
        #[arg(long)]
        lc: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
    },
    /// Subspace dimensions
    Dims {
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, requires = "lc")]
        lr: Option<usize>,
        #[arg(long, requires = "lr")]
        lc: Option<usize>,
        /// Number of players (n-player games with `--l` strategies each)
        #[arg(long, requires = "l")]
        n: Option<usize>,
    },
    /// Sign-pattern digraph of a {-1, 0, 1} antisymmetric game in DOT
    Digraph {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZeemanCommand {
    /// Three strategies
    Gen3 {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        eta: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        theta: f64,
        /// Write the game file here and print only the report
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four strategies
    Gen4 {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, allow_negative_numbers = true)]
        eta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    #[value(name = "K")]
    K,
    #[value(name = "N")]
    N,
    #[value(name = "Ek")]
    Ek,
    #[value(name = "Eg")]
    Eg,
    #[value(name = "Ee")]
    Ee,
}
