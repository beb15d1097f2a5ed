//! Curve and surface fitting.
//!
//! Orthonormal fits are generalized Fourier series: each coefficient is a
//! single projection integral. Classical Bézier control points are then
//! recovered from the same projections by back-substitution, using the
//! exact mixed integrals `∫ phi_i B_j`, which vanish for `j < i`.

use crate::basis::{bernstein_eval_all, BasisSpec, Interval, OrthoBasis};
use crate::error::{Error, Result};
use crate::exact::phi_bern_integral;
use crate::par;
use crate::quadrature::{sample, sample2, QuadratureRule};

pub type CurveFn<'a> = dyn Fn(f64) -> f64 + Sync + 'a;
pub type SurfaceFn<'a> = dyn Fn(f64, f64) -> f64 + Sync + 'a;

pub const DEFAULT_CURVE_POINTS: usize = 1001;
pub const DEFAULT_SURFACE_POINTS: usize = 201;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Orthonormal,
    Bernstein,
}

impl BasisKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BasisKind::Orthonormal => "ortho",
            BasisKind::Bernstein => "bernstein",
        }
    }

    /// All basis values of this kind at `x`.
    fn eval_all(&self, spec: &BasisSpec, ortho: Option<&OrthoBasis>, x: f64) -> Result<Vec<f64>> {
        match (self, ortho) {
            (BasisKind::Orthonormal, Some(b)) => b.eval_all(x),
            (BasisKind::Orthonormal, None) => OrthoBasis::new(*spec).eval_all(x),
            (BasisKind::Bernstein, _) => bernstein_eval_all(spec, x),
        }
    }

    /// Basis values at every point, row per point.
    fn eval_points(&self, spec: &BasisSpec, xs: &[f64]) -> Result<Vec<Vec<f64>>> {
        let ortho = matches!(self, BasisKind::Orthonormal).then(|| OrthoBasis::new(*spec));
        par::map_slice(xs, |&x| self.eval_all(spec, ortho.as_ref(), x))
            .into_iter()
            .collect()
    }
}

impl std::str::FromStr for BasisKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ortho" | "orthonormal" => Ok(BasisKind::Orthonormal),
            "bernstein" | "classical" => Ok(BasisKind::Bernstein),
            other => Err(Error::Config(format!(
                "unknown basis '{other}', expected ortho or bernstein"
            ))),
        }
    }
}

/// Curve coefficients `P_0..P_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlVector {
    kind: BasisKind,
    spec: BasisSpec,
    values: Vec<f64>,
}

impl ControlVector {
    pub fn new(kind: BasisKind, spec: BasisSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.size() {
            return Err(Error::Config(format!(
                "control vector has {} entries, degree {} needs {}",
                values.len(),
                spec.degree(),
                spec.size()
            )));
        }
        Ok(Self { kind, spec, values })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        reconstruct_curve(self, x)
    }

    /// Evaluates at many points; the basis is built once.
    pub fn eval_many(&self, xs: &[f64]) -> Result<Vec<f64>> {
        let rows = self.kind.eval_points(&self.spec, xs)?;
        Ok(rows.iter().map(|row| dot(row, &self.values)).collect())
    }
}

/// Surface coefficients `P_{i,j}`, row-major with `m + 1` columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlGrid {
    kind: BasisKind,
    x_spec: BasisSpec,
    y_spec: BasisSpec,
    values: Vec<f64>,
}

impl ControlGrid {
    pub fn new(
        kind: BasisKind,
        x_spec: BasisSpec,
        y_spec: BasisSpec,
        values: Vec<f64>,
    ) -> Result<Self> {
        if values.len() != x_spec.size() * y_spec.size() {
            return Err(Error::Config(format!(
                "control grid has {} entries, expected {}x{}",
                values.len(),
                x_spec.size(),
                y_spec.size()
            )));
        }
        Ok(Self {
            kind,
            x_spec,
            y_spec,
            values,
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn x_spec(&self) -> &BasisSpec {
        &self.x_spec
    }

    pub fn y_spec(&self) -> &BasisSpec {
        &self.y_spec
    }

    /// Row-major coefficients.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.y_spec.size() + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.y_spec.size())
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        reconstruct_surface(self, x, y)
    }

    /// Values on the tensor grid `xs × ys`, row per `x`.
    pub fn eval_grid(&self, xs: &[f64], ys: &[f64]) -> Result<Vec<Vec<f64>>> {
        let bx = self.kind.eval_points(&self.x_spec, xs)?;
        let by = self.kind.eval_points(&self.y_spec, ys)?;
        // H[a][j] = sum_i bx[a][i] P[i][j]
        let cols = self.y_spec.size();
        let h: Vec<Vec<f64>> = bx
            .iter()
            .map(|row| {
                let mut acc = vec![0.0; cols];
                for (bi, prow) in row.iter().zip(self.rows()) {
                    for (a, p) in acc.iter_mut().zip(prow) {
                        *a += bi * p;
                    }
                }
                acc
            })
            .collect();
        Ok(par::map_slice(&h, |hrow| {
            by.iter().map(|b| dot(hrow, b)).collect()
        }))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Series value at `x` for either basis kind.
pub fn reconstruct_curve(cv: &ControlVector, x: f64) -> Result<f64> {
    let basis = cv.kind.eval_all(&cv.spec, None, x)?;
    Ok(dot(&basis, &cv.values))
}

pub fn reconstruct_surface(cg: &ControlGrid, x: f64, y: f64) -> Result<f64> {
    let bx = cg.kind.eval_all(&cg.x_spec, None, x)?;
    let by = cg.kind.eval_all(&cg.y_spec, None, y)?;
    Ok(bx
        .iter()
        .zip(cg.rows())
        .map(|(b, row)| b * dot(&by, row))
        .sum())
}

/// Uniform evaluation grid including endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleGrid {
    x: Interval,
    nx: usize,
    y: Option<(Interval, usize)>,
}

impl SampleGrid {
    pub fn curve(interval: Interval, n: usize) -> Result<Self> {
        check_points(n)?;
        Ok(Self {
            x: interval,
            nx: n,
            y: None,
        })
    }

    pub fn surface(x: Interval, n: usize, y: Interval, m: usize) -> Result<Self> {
        check_points(n)?;
        check_points(m)?;
        Ok(Self {
            x,
            nx: n,
            y: Some((y, m)),
        })
    }

    pub fn x_interval(&self) -> Interval {
        self.x
    }

    pub fn y_interval(&self) -> Option<Interval> {
        self.y.map(|(iv, _)| iv)
    }

    /// `N`.
    pub fn n(&self) -> usize {
        self.nx
    }

    /// `M`, for surface grids.
    pub fn m(&self) -> Option<usize> {
        self.y.map(|(_, m)| m)
    }

    pub fn xs(&self) -> Vec<f64> {
        self.x.linspace(self.nx)
    }

    pub fn ys(&self) -> Vec<f64> {
        self.y.map(|(iv, m)| iv.linspace(m)).unwrap_or_default()
    }
}

fn check_points(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Config(format!(
            "sample grid needs at least 2 points, got {n}"
        )));
    }
    Ok(())
}

/// Quadrature nodes on one axis with the orthonormal basis evaluated there.
pub(crate) struct Projector {
    pub spec: BasisSpec,
    pub xs: Vec<f64>,
    pub ws: Vec<f64>,
    /// `phi[node][j]`
    pub phi: Vec<Vec<f64>>,
}

impl Projector {
    pub fn new(spec: BasisSpec, xs: Vec<f64>, ws: Vec<f64>) -> Result<Self> {
        let phi = BasisKind::Orthonormal.eval_points(&spec, &xs)?;
        Ok(Self { spec, xs, ws, phi })
    }

    pub fn gauss(spec: BasisSpec, rule: &QuadratureRule) -> Result<Self> {
        let (xs, ws) = rule.abscissae(spec.interval());
        Self::new(spec, xs, ws)
    }

    /// `(1/L) ∫ phi_j f` for every `j`, from samples at the nodes.
    pub fn project(&self, values: &[f64]) -> Vec<f64> {
        let len = self.spec.interval().length();
        (0..self.spec.size())
            .map(|j| {
                let s: f64 = self
                    .phi
                    .iter()
                    .zip(&self.ws)
                    .zip(values)
                    .map(|((row, w), v)| w * row[j] * v)
                    .sum();
                s / len
            })
            .collect()
    }

    /// `(1/(Lx Ly)) ∬ phi_i(x) phi_j(y) f`, row-major.
    pub fn project2(&self, other: &Projector, rows: &[Vec<f64>]) -> Vec<f64> {
        let m1 = other.spec.size();
        // inner[a][j] = sum_b F[a][b] w_b phi_j(y_b)
        let inner: Vec<Vec<f64>> = par::map_slice(rows, |row| {
            let mut acc = vec![0.0; m1];
            for ((v, w), phi) in row.iter().zip(&other.ws).zip(&other.phi) {
                let vw = v * w;
                for (a, p) in acc.iter_mut().zip(phi) {
                    *a += vw * p;
                }
            }
            acc
        });
        let area = self.spec.interval().length() * other.spec.interval().length();
        let out = par::map_range(self.spec.size(), |i| {
            let mut acc = vec![0.0; m1];
            for ((irow, w), phi) in inner.iter().zip(&self.ws).zip(&self.phi) {
                let c = w * phi[i];
                for (a, v) in acc.iter_mut().zip(irow) {
                    *a += c * v;
                }
            }
            acc.into_iter().map(|v| v / area).collect::<Vec<_>>()
        });
        out.into_iter().flatten().collect()
    }
}

/// Generalized Fourier coefficients `P_j = (1/(b-a)) ∫ phi_j f`.
pub fn fit_curve_onb<F>(f: F, spec: BasisSpec, rule: &QuadratureRule) -> Result<ControlVector>
where
    F: Fn(f64) -> f64 + Sync,
{
    let proj = Projector::gauss(spec, rule)?;
    let values = sample(&f, &proj.xs)?;
    ControlVector::new(BasisKind::Orthonormal, spec, proj.project(&values))
}

/// Tensor-product coefficients `P_{i,j}`.
pub fn fit_surface_onb<F>(
    f: F,
    x_spec: BasisSpec,
    y_spec: BasisSpec,
    rule: &QuadratureRule,
) -> Result<ControlGrid>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let px = Projector::gauss(x_spec, rule)?;
    let py = Projector::gauss(y_spec, rule)?;
    let rows = sample2(&f, &px.xs, &py.xs)?;
    ControlGrid::new(
        BasisKind::Orthonormal,
        x_spec,
        y_spec,
        px.project2(&py, &rows),
    )
}

/// Exact `∫ phi_i B_j` values for one basis, upper triangle only.
/// Lower-triangle entries are checked to be exact zeros.
fn mixed_table(spec: &BasisSpec) -> Result<Vec<Vec<f64>>> {
    let n = spec.degree();
    let iv = spec.interval();
    par::try_map_range(n + 1, |i| {
        (0..=n)
            .map(|j| {
                let entry = phi_bern_integral(n, i, j, iv)?;
                if j < i {
                    assert!(
                        entry.is_zero(),
                        "mixed integral ({i},{j}) below the diagonal is nonzero"
                    );
                } else if j == i && entry.is_zero() {
                    return Err(Error::Singular(i));
                }
                Ok(entry.value())
            })
            .collect()
    })
}

/// Classical control points from orthonormal projections `P^onb`, solving
/// `i = n, n-1, …, 0`.
pub(crate) fn recover_curve_from_onb(spec: &BasisSpec, onb: &[f64]) -> Result<Vec<f64>> {
    let table = mixed_table(spec)?;
    let len = spec.interval().length();
    let n = spec.degree();
    let mut p = vec![0.0; n + 1];
    for i in (0..=n).rev() {
        let mut rhs = len * onb[i];
        for j in i + 1..=n {
            rhs -= p[j] * table[i][j];
        }
        p[i] = rhs / table[i][i];
    }
    Ok(p)
}

/// Classical control grid from orthonormal surface projections (row-major),
/// solving `i = n..0`, and within each row `j = m..0`.
pub(crate) fn recover_surface_from_onb(
    x_spec: &BasisSpec,
    y_spec: &BasisSpec,
    onb: &[f64],
) -> Result<Vec<f64>> {
    let tx = mixed_table(x_spec)?;
    let ty = mixed_table(y_spec)?;
    let (n, m) = (x_spec.degree(), y_spec.degree());
    let cols = m + 1;
    let area = x_spec.interval().length() * y_spec.interval().length();
    let mut p = vec![0.0; (n + 1) * cols];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            let mut rhs = area * onb[i * cols + j];
            // already solved: rows k > i (every column), then row i with l > j
            for k in i..=n {
                let l_start = if k == i { j + 1 } else { 0 };
                for l in l_start..=m {
                    rhs -= p[k * cols + l] * tx[i][k] * ty[j][l];
                }
            }
            p[i * cols + j] = rhs / (tx[i][i] * ty[j][j]);
        }
    }
    Ok(p)
}

/// Best classical Bézier control points for `f` at degree `n`.
pub fn bezier_curve_recover<F>(
    f: F,
    spec: BasisSpec,
    rule: &QuadratureRule,
) -> Result<ControlVector>
where
    F: Fn(f64) -> f64 + Sync,
{
    let onb = fit_curve_onb(f, spec, rule)?;
    let p = recover_curve_from_onb(&spec, onb.values())?;
    ControlVector::new(BasisKind::Bernstein, spec, p)
}

/// Best classical Bézier control grid for `f`.
pub fn bezier_surface_recover<F>(
    f: F,
    x_spec: BasisSpec,
    y_spec: BasisSpec,
    rule: &QuadratureRule,
) -> Result<ControlGrid>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let onb = fit_surface_onb(f, x_spec, y_spec, rule)?;
    let p = recover_surface_from_onb(&x_spec, &y_spec, onb.values())?;
    ControlGrid::new(BasisKind::Bernstein, x_spec, y_spec, p)
}

/// `(1/N) Σ (x - g)^2 + (y - h)^2` over the grid.
pub fn mse_curve<FX, FY, GX, GY>(fx: FX, fy: FY, gx: GX, gy: GY, grid: &SampleGrid) -> Result<f64>
where
    FX: Fn(f64) -> f64 + Sync,
    FY: Fn(f64) -> f64 + Sync,
    GX: Fn(f64) -> f64 + Sync,
    GY: Fn(f64) -> f64 + Sync,
{
    let ts = grid.xs();
    let dx = sample(&|t| fx(t) - gx(t), &ts)?;
    let dy = sample(&|t| fy(t) - gy(t), &ts)?;
    Ok(dx.iter().zip(&dy).map(|(a, b)| a * a + b * b).sum::<f64>() / ts.len() as f64)
}

/// `(1/(N M)) Σ (f - g)^2` over the grid.
pub fn mse_surface<F, G>(f: F, g: G, grid: &SampleGrid) -> Result<f64>
where
    F: Fn(f64, f64) -> f64 + Sync,
    G: Fn(f64, f64) -> f64 + Sync,
{
    let (xs, ys) = surface_axes(grid)?;
    let diff = sample2(&|x, y| f(x, y) - g(x, y), &xs, &ys)?;
    Ok(sum_sq(&diff) / (xs.len() * ys.len()) as f64)
}

fn surface_axes(grid: &SampleGrid) -> Result<(Vec<f64>, Vec<f64>)> {
    if grid.m().is_none() {
        return Err(Error::Config(
            "surface error needs a two-dimensional sample grid".into(),
        ));
    }
    Ok((grid.xs(), grid.ys()))
}

fn sum_sq(rows: &[Vec<f64>]) -> f64 {
    rows.iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>())
        .sum()
}

/// Curve MSE summed over components, each reconstructed from its controls.
pub fn mse_curve_controls(
    targets: &[&CurveFn<'_>],
    controls: &[ControlVector],
    grid: &SampleGrid,
) -> Result<f64> {
    if targets.len() != controls.len() {
        return Err(Error::Config(
            "one control vector per curve component is required".into(),
        ));
    }
    let ts = grid.xs();
    let mut total = 0.0;
    for (f, cv) in targets.iter().zip(controls) {
        let truth = sample(f, &ts)?;
        let approx = cv.eval_many(&ts)?;
        total += truth
            .iter()
            .zip(&approx)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>();
    }
    Ok(total / ts.len() as f64)
}

/// Surface MSE with the reconstruction evaluated through the tensor structure.
pub fn mse_surface_controls(f: &SurfaceFn<'_>, cg: &ControlGrid, grid: &SampleGrid) -> Result<f64> {
    let (xs, ys) = surface_axes(grid)?;
    let truth = sample2(f, &xs, &ys)?;
    let approx = cg.eval_grid(&xs, &ys)?;
    let diff: Vec<Vec<f64>> = truth
        .iter()
        .zip(&approx)
        .map(|(t, a)| t.iter().zip(a).map(|(u, v)| u - v).collect())
        .collect();
    Ok(sum_sq(&diff) / (xs.len() * ys.len()) as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Controls {
    /// One control vector per curve component.
    Curve(Vec<ControlVector>),
    Surface(ControlGrid),
}

/// Outcome of one fit: coefficients, error and the settings that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct FitReport {
    pub kind: BasisKind,
    pub n: usize,
    pub m: Option<usize>,
    pub controls: Controls,
    pub error: f64,
    pub grid: SampleGrid,
    pub panels: usize,
    pub nodes: usize,
}

impl FitReport {
    pub fn intervals(&self) -> Vec<Interval> {
        match &self.controls {
            Controls::Curve(c) => c
                .first()
                .map(|cv| vec![cv.spec().interval()])
                .unwrap_or_default(),
            Controls::Surface(g) => vec![g.x_spec().interval(), g.y_spec().interval()],
        }
    }
}

/// Fits every component of a (possibly parametric) curve at degree `n`.
pub fn fit_curve(
    components: &[&CurveFn<'_>],
    kind: BasisKind,
    spec: BasisSpec,
    rule: &QuadratureRule,
    grid: &SampleGrid,
) -> Result<FitReport> {
    let proj = Projector::gauss(spec, rule)?;
    let controls = components
        .iter()
        .map(|f| {
            let onb = proj.project(&sample(f, &proj.xs)?);
            let values = match kind {
                BasisKind::Orthonormal => onb,
                BasisKind::Bernstein => recover_curve_from_onb(&spec, &onb)?,
            };
            ControlVector::new(kind, spec, values)
        })
        .collect::<Result<Vec<_>>>()?;
    let error = mse_curve_controls(components, &controls, grid)?;
    Ok(FitReport {
        kind,
        n: spec.degree(),
        m: None,
        controls: Controls::Curve(controls),
        error,
        grid: grid.clone(),
        panels: rule.panels(),
        nodes: rule.nodes_per_panel(),
    })
}

pub fn fit_surface(
    f: &SurfaceFn<'_>,
    kind: BasisKind,
    x_spec: BasisSpec,
    y_spec: BasisSpec,
    rule: &QuadratureRule,
    grid: &SampleGrid,
) -> Result<FitReport> {
    let cg = match kind {
        BasisKind::Orthonormal => fit_surface_onb(f, x_spec, y_spec, rule)?,
        BasisKind::Bernstein => bezier_surface_recover(f, x_spec, y_spec, rule)?,
    };
    let error = mse_surface_controls(f, &cg, grid)?;
    Ok(FitReport {
        kind,
        n: x_spec.degree(),
        m: Some(y_spec.degree()),
        controls: Controls::Surface(cg),
        error,
        grid: grid.clone(),
        panels: rule.panels(),
        nodes: rule.nodes_per_panel(),
    })
}

/// One curve report per degree.
pub fn degree_sweep_curve<I>(
    components: &[&CurveFn<'_>],
    kind: BasisKind,
    interval: Interval,
    degrees: I,
    rule: &QuadratureRule,
    grid: &SampleGrid,
) -> Result<Vec<FitReport>>
where
    I: IntoIterator<Item = usize>,
{
    let reports = degrees
        .into_iter()
        .map(|n| fit_curve(components, kind, BasisSpec::new(n, interval)?, rule, grid))
        .collect::<Result<Vec<_>>>()?;
    if reports.is_empty() {
        return Err(Error::Config("degree sweep needs a nonempty range".into()));
    }
    Ok(reports)
}

/// One surface report per degree, with `n = m`.
pub fn degree_sweep_surface<I>(
    f: &SurfaceFn<'_>,
    kind: BasisKind,
    x_interval: Interval,
    y_interval: Interval,
    degrees: I,
    rule: &QuadratureRule,
    grid: &SampleGrid,
) -> Result<Vec<FitReport>>
where
    I: IntoIterator<Item = usize>,
{
    let reports = degrees
        .into_iter()
        .map(|n| {
            fit_surface(
                f,
                kind,
                BasisSpec::new(n, x_interval)?,
                BasisSpec::new(n, y_interval)?,
                rule,
                grid,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    if reports.is_empty() {
        return Err(Error::Config("degree sweep needs a nonempty range".into()));
    }
    Ok(reports)
}

/// The lowest-error report; ties go to the lower degree.
pub fn best_report(reports: &[FitReport]) -> Option<&FitReport> {
    reports
        .iter()
        .fold(None, |best: Option<&FitReport>, r| match best {
            Some(b) if b.error <= r.error => Some(b),
            _ => Some(r),
        })
}
