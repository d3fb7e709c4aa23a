use clap::{Args, Parser, Subcommand, ValueEnum};
use spincm_core::rootsys::Weight;

use crate::suites::Suite;

#[derive(Debug, Parser)]
#[command(name = "spincm", version, about = "Exact spin Calogero-Moser systems of type A")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Rank parameter: the algebra is sl_n.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Largest representation dimension built exactly.
    #[arg(long, default_value_t = spincm_core::repmodel::DEFAULT_DIM_CAP)]
    pub dim_cap: usize,
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.parse::<Weight>().map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build V_mu and report its dimension and weights.
    Repr {
        #[command(flatten)]
        common: Common,
        /// Highest weight in fundamental coordinates, e.g. 1,1.
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        mu: Weight,
    },
    /// Energies and multiplicities of the spin system for V_mu.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        mu: Weight,
        #[arg(long, default_value_t = 3)]
        cutoff: u32,
        /// Check every eigenfunction exactly.
        #[arg(long)]
        verify: bool,
        /// Include Fourier coefficients of the eigenfunctions (JSON only).
        #[arg(long)]
        eigenfunctions: bool,
    },
    /// Gram matrix of eigenfunctions under the Weyl measure.
    Ortho {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        mu: Weight,
        #[arg(long, default_value_t = 2)]
        cutoff: u32,
        /// Quadrature points per torus direction.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Identities on zero-weight spaces of V_mu for mu a partition of N = n.
    SchurWeyl {
        #[command(flatten)]
        common: Common,
        /// Row length factor of the one-row partition (n k).
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Repr { common, .. }
            | Command::Spectrum { common, .. }
            | Command::Ortho { common, .. }
            | Command::SchurWeyl { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }
}

/// Validated settings shared by all commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub mu: Option<Weight>,
    pub cutoff: u32,
    pub grid: Option<usize>,
    pub dim_cap: usize,
    pub threads: usize,
    pub format: Format,
    pub suite: Option<Suite>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli, env_threads: Option<&str>) -> Result<Self, String> {
        let common = cli.command.common();
        if common.n < 2 {
            return Err(format!("--n must be at least 2, got {}", common.n));
        }
        if common.dim_cap == 0 {
            return Err("--dim-cap must be positive".into());
        }
        let threads = match env_threads {
            Some(s) => s
                .trim()
                .parse::<usize>()
                .map_err(|_| format!("{} must be a non-negative integer, got {s:?}", crate::THREADS_ENV))?,
            None => common.threads,
        };
        let (mu, cutoff, grid, suite) = match &cli.command {
            Command::Repr { mu, .. } => (Some(mu.clone()), 0, None, None),
            Command::Spectrum { mu, cutoff, .. } => (Some(mu.clone()), *cutoff, None, None),
            Command::Ortho { mu, cutoff, grid, .. } => (Some(mu.clone()), *cutoff, *grid, None),
            Command::SchurWeyl { .. } => (None, 0, None, None),
            Command::Verify { suite, .. } => (None, 0, None, Some(*suite)),
        };
        if grid == Some(0) {
            return Err("--grid must be positive".into());
        }
        Ok(RunConfig {
            n: common.n,
            mu,
            cutoff,
            grid,
            dim_cap: common.dim_cap,
            threads,
            format: common.format,
            suite,
        })
    }
}
