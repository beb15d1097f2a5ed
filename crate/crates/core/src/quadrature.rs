//! Composite Gauss–Legendre quadrature.

use std::f64::consts::PI;

use crate::basis::Interval;
use crate::error::{Error, Result};
use crate::par;

pub const MAX_POINTS: usize = 128;
const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// `P_n(x)` and `P_n'(x)` from the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss–Legendre nodes (ascending) and weights on `[-1, 1]`.
pub fn gauss_nodes(points: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(1..=MAX_POINTS).contains(&points) {
        return Err(Error::Capability(format!(
            "Gauss rule with {points} points is outside 1..={MAX_POINTS}"
        )));
    }
    let n = points;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= NEWTON_TOL {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

/// A composite rule: `panels` equal sub-intervals, each with a
/// `nodes_per_panel`-point Gauss rule.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    panels: usize,
    nodes_per_panel: usize,
    ref_nodes: Vec<f64>,
    ref_weights: Vec<f64>,
}

impl QuadratureRule {
    pub const DEFAULT_PANELS: usize = 64;
    pub const DEFAULT_NODES: usize = 16;

    pub fn new(panels: usize, nodes_per_panel: usize) -> Result<Self> {
        if panels == 0 {
            return Err(Error::Config("quadrature needs at least one panel".into()));
        }
        let (ref_nodes, ref_weights) = gauss_nodes(nodes_per_panel)?;
        Ok(Self {
            panels,
            nodes_per_panel,
            ref_nodes,
            ref_weights,
        })
    }

    /// Single panel with `n + 1` nodes; exact for products of two degree-`n`
    /// polynomials.
    pub fn for_basis(n: usize) -> Result<Self> {
        Self::new(1, n + 1)
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    /// Highest polynomial degree integrated exactly.
    pub fn exact_degree(&self) -> usize {
        2 * self.nodes_per_panel - 1
    }

    pub fn reference(&self) -> (&[f64], &[f64]) {
        (&self.ref_nodes, &self.ref_weights)
    }

    /// Abscissae and weights of the composite rule on `interval`, in
    /// ascending order. Every abscissa lies inside the closed interval.
    pub fn abscissae(&self, interval: Interval) -> (Vec<f64>, Vec<f64>) {
        let (a, b) = (interval.a(), interval.b());
        let h = interval.length() / self.panels as f64;
        let total = self.panels * self.nodes_per_panel;
        let mut xs = Vec::with_capacity(total);
        let mut ws = Vec::with_capacity(total);
        for p in 0..self.panels {
            let lo = a + h * p as f64;
            let hi = if p + 1 == self.panels {
                b
            } else {
                a + h * (p + 1) as f64
            };
            let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            for (x, w) in self.ref_nodes.iter().zip(&self.ref_weights) {
                xs.push((mid + half * x).clamp(a, b));
                ws.push(half * w);
            }
        }
        (xs, ws)
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::new(Self::DEFAULT_PANELS, Self::DEFAULT_NODES).expect("default rule is valid")
    }
}

fn check_finite(values: &[f64], at: impl Fn(usize) -> Vec<f64>) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::Evaluation { at: at(i) }),
        None => Ok(()),
    }
}

/// Samples `f` at every abscissa, rejecting non-finite values.
pub(crate) fn sample<F>(f: &F, xs: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
{
    let values = par::map_slice(xs, |&x| f(x));
    check_finite(&values, |i| vec![xs[i]])?;
    Ok(values)
}

/// Samples `f` on the tensor grid `xs × ys`; row `i` holds `f(xs[i], ·)`.
pub(crate) fn sample2<F>(f: &F, xs: &[f64], ys: &[f64]) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64, f64) -> f64 + Sync + ?Sized,
{
    let rows = par::map_slice(xs, |&x| ys.iter().map(|&y| f(x, y)).collect::<Vec<_>>());
    for (i, row) in rows.iter().enumerate() {
        check_finite(row, |k| vec![xs[i], ys[k]])?;
    }
    Ok(rows)
}

/// Composite Gauss–Legendre estimate of `∫ f` over `interval`.
pub fn integrate<F>(f: F, interval: Interval, rule: &QuadratureRule) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    let (xs, ws) = rule.abscissae(interval);
    let values = sample(&f, &xs)?;
    Ok(ws.iter().zip(&values).map(|(w, v)| w * v).sum())
}

/// Tensor-product estimate of `∬ f` over `x_interval × y_interval`.
pub fn integrate2d<F>(
    f: F,
    x_interval: Interval,
    y_interval: Interval,
    rule: &QuadratureRule,
) -> Result<f64>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let (xs, wx) = rule.abscissae(x_interval);
    let (ys, wy) = rule.abscissae(y_interval);
    let rows = sample2(&f, &xs, &ys)?;
    Ok(rows
        .iter()
        .zip(&wx)
        .map(|(row, w)| w * row.iter().zip(&wy).map(|(v, u)| v * u).sum::<f64>())
        .sum())
}
