use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

/// Surface displacements of a point-loaded gradient-elastic half-space.
#[derive(Debug, Parser)]
#[command(name = "gradbq", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// TOML file with defaults; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Shear modulus.
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    /// Poisson's ratio.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// Gradient coefficient (length squared).
    #[arg(long, global = true)]
    pub c: Option<f64>,
    /// Point load magnitude P.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub load: Option<f64>,
    /// Relative quadrature tolerance (default from GRADBQ_REL_TOL, else 1e-9).
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Maximum number of Bessel-zero intervals before giving up.
    #[arg(long, global = true)]
    pub max_intervals: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Also write a gnuplot script next to the output file.
    #[arg(long, global = true)]
    pub gnuplot: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized surface profile on a log grid of r' (with r' = 0 first).
    Profile {
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        /// Number of log-spaced points after r' = 0.
        #[arg(long)]
        n_points: Option<usize>,
    },
    /// Dimensional displacements at physical radii.
    Point {
        /// Physical radius; may be repeated.
        #[arg(long = "r", value_name = "R")]
        r: Vec<f64>,
    },
    /// Settlement under the load against Poisson's ratio, with a linear fit.
    Sweep {
        #[arg(long)]
        nu_min: Option<f64>,
        #[arg(long)]
        nu_max: Option<f64>,
        #[arg(long)]
        nu_step: Option<f64>,
    },
    /// Residual check of the transform-domain solution at random (p, q).
    Verify {
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threshold: Option<f64>,
        /// Per-sample residuals as CSV.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        #[arg(long, hide = true)]
        perturb_index: Option<usize>,
        #[arg(long, hide = true, allow_negative_numbers = true)]
        perturb_rel: Option<f64>,
    },
    /// Settlement under a distributed surface pressure.
    Convolve {
        #[arg(long, value_enum)]
        shape: Option<Shape>,
        /// Loaded radius a0.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        pressure: Option<f64>,
        /// Largest output radius (default 4 a0).
        #[arg(long)]
        r_max: Option<f64>,
        /// Number of equally spaced output radii on [0, r_max].
        #[arg(long)]
        n_points: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Disc,
}
