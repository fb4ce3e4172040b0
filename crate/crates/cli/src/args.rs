use clap::{Args, Parser, Subcommand, ValueEnum};

/// Batch experiment driver for the exponential-weight Bergman laboratory.
///
/// Every command is deterministic for a fixed seed and emits a
/// machine-readable table (JSON or CSV) with per-row provenance.
#[derive(Debug, Parser)]
#[command(name = "psiball", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Complex dimension of the ball.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// RNG seed; required so runs are reproducible by construction.
    #[arg(long)]
    pub seed: u64,
    /// Monte Carlo samples per statistic.
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residuals of the closed-form Hessian identities on random points.
    Hessian {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Certified distance enclosures on random point pairs.
    Distance {
        #[command(flatten)]
        common: CommonArgs,
        /// Descent budget (curve-length evaluations per pair).
        #[arg(long, default_value_t = 2000)]
        budget: usize,
    },
    /// Ball volumes, normalized ratios, and inclusion-soundness counts
    /// along a radius grid.
    Ball {
        #[command(flatten)]
        common: CommonArgs,
        /// Metric ball radius.
        #[arg(long, default_value_t = 0.0125)]
        r: f64,
        /// Comma-separated |z| grid.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Build a separated covering lattice and verify it.
    Lattice {
        #[command(flatten)]
        common: CommonArgs,
        /// Separation/covering radius (defaults per dimension).
        #[arg(long)]
        r: Option<f64>,
        /// Candidate count in the innermost shell.
        #[arg(long)]
        density: Option<usize>,
        /// Covering probe count.
        #[arg(long, default_value_t = 2000)]
        probes: usize,
        /// Covering slack eta.
        #[arg(long)]
        slack: Option<f64>,
    },
    /// Test-function norm ratios and key-inequality constants on a grid.
    Testfn {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Product-region scale for the key-inequality statistic.
        #[arg(long, default_value_t = 0.0125)]
        r: f64,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Full Carleson / vanishing-Carleson report for a measure.
    Carleson {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Ball radius for the ratio statistics.
        #[arg(long, default_value_t = 0.0125)]
        r: f64,
        /// Measure: lebesgue | power:A | const:C | gauss:WIDTH[,CENTER] |
        /// atoms file (path ending in .json).
        #[arg(long, default_value = "lebesgue")]
        measure: String,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Cesaro symbol statistics and the norm-equivalence suite.
    Cesaro {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Symbol: coord:J (the coordinate z_J) | invsq[:ANCHOR].
        #[arg(long, default_value = "coord:1")]
        symbol: String,
        #[arg(long)]
        grid: Option<String>,
        /// Degree cap for the polynomial suite and products.
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Toeplitz finite section, diagonal trace, symbol transform, and
    /// norm probe.
    Toeplitz {
        #[command(flatten)]
        common: CommonArgs,
        /// Symbol density: const:C | power:A | gauss:WIDTH[,CENTER].
        #[arg(long, default_value = "const:1")]
        symbol: String,
        /// Basis truncation degree (defaults per dimension).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Normalized kernel diagonal across truncation degrees.
    Kernel {
        #[command(flatten)]
        common: CommonArgs,
        /// Radial grid (within |z| <= 0.9).
        #[arg(long)]
        grid: Option<String>,
        /// Comma-separated truncation degrees.
        #[arg(long)]
        schedule: Option<String>,
    },
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Hessian { common } => common,
            Command::Distance { common, .. } => common,
            Command::Ball { common, .. } => common,
            Command::Lattice { common, .. } => common,
            Command::Testfn { common, .. } => common,
            Command::Carleson { common, .. } => common,
            Command::Cesaro { common, .. } => common,
            Command::Toeplitz { common, .. } => common,
            Command::Kernel { common, .. } => common,
        }
    }
}
