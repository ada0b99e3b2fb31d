use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmsbif::EigType;

#[derive(Debug, Parser)]
#[command(
    name = "kmsbif",
    version,
    about = "Exceptional points of complex KMS matrices"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Output file; a directory when several tables are produced. Stdout if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Oracle residual tolerance.
    #[arg(long, global = true, value_parser = positive)]
    pub tol: Option<f64>,
    /// Angular half-window (level curves) or half-range of d (trajectories).
    #[arg(long, global = true, value_parser = positive)]
    pub window: Option<f64>,
    /// Sample count, or grid resolution for oracle contours.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(3..=4096))]
    pub grid: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every critical point of K_n, checked against the oracle.
    CriticalPoints(CriticalArgs),
    /// Puiseux parameters a, b, c and angles at critical points.
    Puiseux(PointArgs),
    /// Local level curve, cardioid and cusp bisector at one critical point.
    LevelCurve(LevelArgs),
    /// Eigenvalue pair along the cusp bisector, formula against oracle.
    Trajectory(PointArgs),
    /// Parameters of the purely imaginary critical points.
    Imaginary(ImagArgs),
    /// Large-n approximations of the imaginary family with relative errors.
    LargeN(ImagArgs),
    /// Data behind one of the nine figures.
    Figure(FigureArgs),
    /// Run the invariant suite and report measured residuals.
    Verify(VerifyArgs),
}

fn dimension(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 3 {
        return Err(format!("n = {n} is too small (need n >= 3)"));
    }
    if n > 512 {
        return Err(format!("n = {n} is too large (need n <= 512)"));
    }
    Ok(n)
}

fn odd_dimension(s: &str) -> Result<usize, String> {
    let n = dimension(s)?;
    if n % 2 == 0 {
        return Err(format!("n = {n} must be odd"));
    }
    Ok(n)
}

fn eig_type(s: &str) -> Result<EigType, String> {
    s.parse::<u8>()
        .ok()
        .and_then(EigType::from_index)
        .ok_or_else(|| format!("type must be 1 or 2, got {s}"))
}

fn positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(format!("{s} is not a positive number"));
    }
    Ok(x)
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    #[arg(long, value_parser = dimension)]
    pub n: usize,
    #[arg(long = "type", value_parser = eig_type)]
    pub eig_type: Option<EigType>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, value_parser = dimension)]
    pub n: usize,
    #[arg(long = "type", value_parser = eig_type)]
    pub eig_type: Option<EigType>,
    /// Position in the critical-point listing for the same n and type.
    #[arg(long, conflicts_with = "rho")]
    pub index: Option<usize>,
    /// Pick the critical point nearest RE + i IM.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    pub rho: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Largest |eps| kept on the local level curve.
    #[arg(long, default_value_t = kmsbif::geometry::DEFAULT_EPS_CAP, value_parser = positive)]
    pub eps_cap: f64,
}

#[derive(Debug, Args)]
pub struct ImagArgs {
    /// One or more odd dimensions.
    #[arg(long, num_args = 1.., value_parser = odd_dimension, required_unless_present = "n_max")]
    pub n: Vec<usize>,
    /// Tabulate every odd n from 3 up to this value.
    #[arg(long, value_parser = dimension, conflicts_with = "n")]
    pub n_max: Option<usize>,
}

impl ImagArgs {
    pub fn dims(&self) -> Vec<usize> {
        match self.n_max {
            Some(m) => (3..=m).step_by(2).collect(),
            None => self.n.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=9))]
    pub id: u8,
    /// Largest n for the parameter sweep of figure 6.
    #[arg(long, default_value_t = 50, value_parser = dimension)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 12, value_parser = dimension)]
    pub n_max: usize,
}
