use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use onb_core::approx::BasisKind;
use onb_core::{Interval, QuadratureRule};

use crate::error::{CliError, CliResult};
use crate::output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "onb",
    version,
    about = "Orthonormal Bernstein bases: evaluation, exact checks and fitting"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate basis functions or print exact coefficients.
    #[command(subcommand)]
    Basis(BasisCmd),
    /// Exact rational checks of the basis identities.
    Verify(VerifyArgs),
    /// Fit a built-in target or sampled data.
    #[command(subcommand)]
    Fit(FitCmd),
    /// Tabulate a built-in target on a uniform grid.
    Sample(SampleArgs),
}

#[derive(Subcommand, Debug)]
pub enum BasisCmd {
    Eval(EvalArgs),
    Coeffs(CoeffsArgs),
}

#[derive(Subcommand, Debug)]
pub enum FitCmd {
    Curve(FitArgs),
    Surface(FitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(alias = "orthonormal")]
    Ortho,
    #[value(alias = "classical")]
    Bernstein,
}

impl From<Kind> for BasisKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Ortho => BasisKind::Orthonormal,
            Kind::Bernstein => BasisKind::Bernstein,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct IntervalArgs {
    /// Left endpoint.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Right endpoint.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
}

impl IntervalArgs {
    /// `[a, b]`, with missing endpoints taken from `default`.
    pub fn resolve(&self, default: Interval) -> CliResult<Interval> {
        Ok(Interval::new(
            self.a.unwrap_or(default.a()),
            self.b.unwrap_or(default.b()),
        )?)
    }
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, visible_alias = "basis", value_enum, default_value_t = Kind::Ortho)]
    pub kind: Kind,
    #[arg(long)]
    pub n: usize,
    /// Single basis function instead of all of them.
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<i64>,
    #[command(flatten)]
    pub interval: IntervalArgs,
    /// Uniform sample count over the interval.
    #[arg(long, default_value_t = 101, conflicts_with = "x")]
    pub samples: usize,
    /// Explicit evaluation points (repeatable).
    #[arg(long, allow_negative_numbers = true)]
    pub x: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub n: usize,
    /// Omit to print every `j = 0..=n`.
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<i64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    /// Orthonormality double sums for every pair (i, j).
    Ortho,
    /// Sturm–Liouville residual for every j.
    Sturm,
    /// Agreement with exact Gram–Schmidt on the Bernstein basis.
    Gram,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub identity: Identity,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A single degree or an inclusive range `lo..hi` (also `lo:hi`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degrees {
    One(usize),
    Range(usize, usize),
}

impl FromStr for Degrees {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| format!("'{s}' is not a degree or range lo..hi"))
        };
        match s.split_once("..").or_else(|| s.split_once(':')) {
            None => Ok(Degrees::One(parse(s)?)),
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(format!("empty degree range '{s}'"));
                }
                Ok(Degrees::Range(lo, hi))
            }
        }
    }
}

#[derive(Args, Debug)]
pub struct QuadratureArgs {
    /// Composite Gauss panels [default: 64].
    #[arg(long)]
    pub panels: Option<usize>,
    /// Gauss nodes per panel [default: 16].
    #[arg(long)]
    pub nodes: Option<usize>,
}

impl QuadratureArgs {
    pub fn rule(&self) -> CliResult<QuadratureRule> {
        Ok(QuadratureRule::new(
            self.panels.unwrap_or(QuadratureRule::DEFAULT_PANELS),
            self.nodes.unwrap_or(QuadratureRule::DEFAULT_NODES),
        )?)
    }

    pub fn is_set(&self) -> bool {
        self.panels.is_some() || self.nodes.is_some()
    }
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Built-in target (lissajous, sinc, langermann).
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub target: Option<String>,
    /// CSV samples: t,x,y,... for curves, x,y,f on a grid for surfaces.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Degree, or an inclusive range to sweep.
    #[arg(long)]
    pub n: Degrees,
    /// Second degree for surfaces; defaults to n.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Kind::Ortho)]
    pub basis: Kind,
    #[command(flatten)]
    pub interval: IntervalArgs,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
    /// Error grid size N for curves.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Error grid size N = M for surfaces.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Target parameter override, key=value (repeatable).
    #[arg(long = "param")]
    pub params: Vec<String>,
    /// Also write reconstruction-vs-truth CSV here.
    #[arg(long)]
    pub emit_samples: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long)]
    pub target: String,
    /// Point count for curves.
    #[arg(long, default_value_t = onb_core::approx::DEFAULT_CURVE_POINTS)]
    pub samples: usize,
    /// Points per axis for surfaces.
    #[arg(long, default_value_t = onb_core::approx::DEFAULT_SURFACE_POINTS)]
    pub grid: usize,
    #[command(flatten)]
    pub interval: IntervalArgs,
    #[arg(long = "param")]
    pub params: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Maps a signed index onto the library's index error.
pub fn index(j: i64, n: usize) -> CliResult<usize> {
    if j < 0 || j as u64 > n as u64 {
        return Err(onb_core::Error::Index { j, n: n as i64 }.into());
    }
    Ok(j as usize)
}

pub fn points(count: usize, what: &str) -> CliResult<usize> {
    if count < 2 {
        return Err(CliError::config(format!(
            "{what} needs at least 2 points, got {count}"
        )));
    }
    Ok(count)
}
