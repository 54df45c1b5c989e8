mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "pshlab", version, about = "Demailly approximations of weighted line arrangements in C^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal, generators, class and Lelong number of φ_m.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// An index, a range `a..b` (inclusive) or a comma list.
        #[arg(long)]
        m: String,
        #[command(flatten)]
        out: Output,
    },
    /// Monotonicity of the class sequence.
    Sequence {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "indices")]
        m_max: Option<u64>,
        /// `pow2`, `linear:A,B` or a comma list.
        #[arg(long)]
        indices: Option<String>,
        #[arg(long)]
        k_max: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Compare class(φ_{m1}) with class(φ_{m2}); either side may be `weight`.
    Compare {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        m1: String,
        #[arg(long)]
        m2: String,
        #[command(flatten)]
        out: Output,
    },
    /// Run the claim registry, or the generic checks for one arrangement.
    VerifyPaper {
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
        #[arg(long, conflicts_with = "file")]
        preset: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        m_max: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Numeric Bergman kernels: Gram audit, ray slopes and curve scans.
    Bergman {
        #[command(flatten)]
        source: Source,
        /// Indices whose generic-ray slopes are reported.
        #[arg(long)]
        m: Option<String>,
        #[arg(long, requires = "m2")]
        m1: Option<u64>,
        #[arg(long, requires = "m1")]
        m2: Option<u64>,
        #[arg(long, default_value = "x=y")]
        curve: String,
        #[arg(long, default_value_t = 1e-3)]
        tmin: f64,
        #[arg(long, default_value_t = 1e-1)]
        tmax: f64,
        #[arg(long, default_value_t = 21)]
        points: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Write the full Gram matrices as JSON.
        #[arg(long)]
        dump_gram: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Log canonical threshold at the origin.
    Lct {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Source {
    /// theorem1, smooth or point (default theorem1).
    #[arg(long, conflicts_with = "file")]
    preset: Option<String>,
    /// Arrangement JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Omit the timestamp from JSON reports.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

/// A failed run: usage or IO problems exit with 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
