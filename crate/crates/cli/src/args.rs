use std::path::PathBuf;

use acf_core::scattering::SpinState;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "acf",
    version,
    about = "Bound states and scattering of a neutral fermion in the field of a charged line"
)]
pub struct Cli {
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; tables default to csv, single results to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Also write a gnuplot script `<output stem>.gp` next to the CSV.
    #[arg(long, global = true)]
    pub emit_gnuplot: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split Ma = n + μ and classify the channels k_min..k_max.
    Classify(ClassifyArgs),
    /// Bound-state energy of one channel for extension parameter ξ.
    Bound(BoundArgs),
    /// Channel table with attached bound states.
    Spectrum(SpectrumArgs),
    /// Bound state of the delta-shell model.
    Shell(ShellArgs),
    /// Renormalized shell coupling Ma(R) at fixed bound energy.
    Flow(FlowArgs),
    /// Scattering amplitudes and cross sections on an angle grid.
    Scatter(ScatterArgs),
    /// Ingoing coefficient B_l(E) over negative energies.
    Polescan(PolescanArgs),
    /// Evaluate a special function.
    Specfun(SpecfunArgs),
    /// Run the cross-oracle checks and print a pass/fail table.
    Check,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' must be finite"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

fn negative(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v < 0.0 {
        Ok(v)
    } else {
        Err(format!("must be negative, got {v}"))
    }
}

fn unit_open(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("must lie in (0, 1), got {v}"))
    }
}

// ξ may be ±inf
fn extended(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_nan() {
        Err("must not be NaN".into())
    } else {
        Ok(v)
    }
}

fn spin_state(s: &str) -> Result<SpinState, String> {
    s.parse()
        .map_err(|e: acf_core::scattering::ScatteringError| e.to_string())
}

fn at_least_two(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("'{s}' is not a count"))?;
    if v >= 2 {
        Ok(v)
    } else {
        Err(format!("must be at least 2, got {v}"))
    }
}

fn at_least_one(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("'{s}' is not a count"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err("must be at least 1".into())
    }
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub ma: f64,
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    pub kmin: i64,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    pub kmax: i64,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Channel order γ in (0, 1); not used with --log.
    #[arg(long, value_parser = unit_open, required_unless_present = "log")]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = extended)]
    pub xi: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub m: f64,
    /// Log-case channel (l + sμ = 0).
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub ma: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = extended)]
    pub xi: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub m: f64,
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    pub kmin: i64,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    pub kmax: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShellMethod {
    Closed,
    Exact,
    Numerov,
    All,
}

#[derive(Debug, Args)]
pub struct ShellArgs {
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub l: i64,
    /// Outside order γ in (0, 1); defaults to ||l| − μ| with μ the fractional part of Ma.
    #[arg(long, value_parser = unit_open)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub ma: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub m: f64,
    #[arg(long = "R", value_parser = positive)]
    pub r: f64,
    #[arg(long, value_enum, default_value_t = ShellMethod::All)]
    pub method: ShellMethod,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = negative)]
    pub etarget: f64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub l: i64,
    #[arg(long, default_value_t = 0.3, value_parser = unit_open)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub m: f64,
    #[arg(long, value_parser = positive)]
    pub rmin: f64,
    #[arg(long, value_parser = positive)]
    pub rmax: f64,
    /// Log-spaced subdivisions per decade of R.
    #[arg(long, default_value_t = 1, value_parser = at_least_one)]
    pub decades: usize,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub ma: f64,
    #[arg(long, value_parser = positive)]
    pub p: f64,
    /// Incoming spin: z:+1, z:-1, x:+1 or x:-1.
    #[arg(long, default_value = "z:+1", value_parser = spin_state)]
    pub spin: SpinState,
    #[arg(long, default_value_t = 0.2, value_parser = finite)]
    pub phimin: f64,
    #[arg(long, default_value_t = 6.08, value_parser = finite)]
    pub phimax: f64,
    #[arg(long, default_value_t = 200, value_parser = at_least_one)]
    pub points: usize,
    /// Also extract the amplitude from the partial-wave sum at p·r = this value.
    #[arg(long, value_parser = positive)]
    pub numeric: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PolescanArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub xi: f64,
    #[arg(long, value_parser = unit_open)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub m: f64,
    /// Most negative energy of the grid.
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true, value_parser = negative)]
    pub emin: f64,
    /// Least negative energy of the grid.
    #[arg(long, default_value_t = -1e-3, allow_hyphen_values = true, value_parser = negative)]
    pub emax: f64,
    #[arg(long, default_value_t = 200, value_parser = at_least_two)]
    pub points: usize,
    /// Space the grid logarithmically in |E|.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Gamma,
    Rgamma,
    J,
    N,
    I,
    K,
    Jp,
    Np,
    Ip,
    Kp,
}

#[derive(Debug, Args)]
pub struct SpecfunArgs {
    #[arg(long, value_enum)]
    pub function: Function,
    /// Order (ignored for gamma and rgamma).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true, value_parser = finite)]
    pub nu: f64,
    /// Arguments, comma separated.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', value_parser = finite, required = true)]
    pub x: Vec<f64>,
}
