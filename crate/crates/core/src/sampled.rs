//! Fitting tabulated data instead of callable functions.
//!
//! Projection integrals use trapezoidal weights over the given abscissae, so
//! accuracy is limited to second order in the sample spacing. The reported
//! error is measured at the input samples.

use crate::approx::{
    recover_curve_from_onb, recover_surface_from_onb, BasisKind, ControlGrid, ControlVector,
    Controls, FitReport, Projector, SampleGrid,
};
use crate::basis::{BasisSpec, Interval};
use crate::error::{Error, Result};

/// Trapezoid weights for strictly increasing abscissae.
pub fn trapezoid_weights(xs: &[f64]) -> Result<Vec<f64>> {
    if xs.len() < 2 {
        return Err(Error::Config(format!(
            "need at least 2 samples, got {}",
            xs.len()
        )));
    }
    if let Some(k) = xs
        .windows(2)
        .position(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
    {
        return Err(Error::Config(format!(
            "sample abscissae must be strictly increasing (at index {})",
            k + 1
        )));
    }
    let mut w = vec![0.0; xs.len()];
    for (k, pair) in xs.windows(2).enumerate() {
        let h = 0.5 * (pair[1] - pair[0]);
        w[k] += h;
        w[k + 1] += h;
    }
    Ok(w)
}

fn span(xs: &[f64]) -> Result<Interval> {
    Interval::new(xs[0], xs[xs.len() - 1])
}

/// Fits each column of `components` (one value per abscissa) at degree `n`.
pub fn fit_curve_samples(
    ts: &[f64],
    components: &[Vec<f64>],
    kind: BasisKind,
    n: usize,
) -> Result<FitReport> {
    let ws = trapezoid_weights(ts)?;
    if components.iter().any(|c| c.len() != ts.len()) {
        return Err(Error::Config(
            "every component needs one value per abscissa".into(),
        ));
    }
    let interval = span(ts)?;
    let spec = BasisSpec::new(n, interval)?;
    let proj = Projector::new(spec, ts.to_vec(), ws)?;
    let mut controls = Vec::with_capacity(components.len());
    let mut sq = 0.0;
    for values in components {
        let onb = proj.project(values);
        let coeffs = match kind {
            BasisKind::Orthonormal => onb,
            BasisKind::Bernstein => recover_curve_from_onb(&spec, &onb)?,
        };
        let cv = ControlVector::new(kind, spec, coeffs)?;
        let approx = cv.eval_many(ts)?;
        sq += values
            .iter()
            .zip(&approx)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>();
        controls.push(cv);
    }
    Ok(FitReport {
        kind,
        n,
        m: None,
        controls: Controls::Curve(controls),
        error: sq / ts.len() as f64,
        grid: SampleGrid::curve(interval, ts.len())?,
        panels: 0,
        nodes: 0,
    })
}

/// Fits gridded values `values[a][b] = f(xs[a], ys[b])`.
pub fn fit_surface_samples(
    xs: &[f64],
    ys: &[f64],
    values: &[Vec<f64>],
    kind: BasisKind,
    n: usize,
    m: usize,
) -> Result<FitReport> {
    let wx = trapezoid_weights(xs)?;
    let wy = trapezoid_weights(ys)?;
    if values.len() != xs.len() || values.iter().any(|r| r.len() != ys.len()) {
        return Err(Error::Config(format!(
            "surface samples must form a complete {}x{} grid",
            xs.len(),
            ys.len()
        )));
    }
    let (ix, iy) = (span(xs)?, span(ys)?);
    let (x_spec, y_spec) = (BasisSpec::new(n, ix)?, BasisSpec::new(m, iy)?);
    let px = Projector::new(x_spec, xs.to_vec(), wx)?;
    let py = Projector::new(y_spec, ys.to_vec(), wy)?;
    let onb = px.project2(&py, values);
    let coeffs = match kind {
        BasisKind::Orthonormal => onb,
        BasisKind::Bernstein => recover_surface_from_onb(&x_spec, &y_spec, &onb)?,
    };
    let cg = ControlGrid::new(kind, x_spec, y_spec, coeffs)?;
    let approx = cg.eval_grid(xs, ys)?;
    let sq: f64 = values
        .iter()
        .zip(&approx)
        .map(|(r, a)| r.iter().zip(a).map(|(u, v)| (u - v) * (u - v)).sum::<f64>())
        .sum();
    Ok(FitReport {
        kind,
        n,
        m: Some(m),
        controls: Controls::Surface(cg),
        error: sq / (xs.len() * ys.len()) as f64,
        grid: SampleGrid::surface(ix, xs.len(), iy, ys.len())?,
        panels: 0,
        nodes: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_basics() {
        assert_eq!(
            trapezoid_weights(&[0.0, 1.0, 3.0]).unwrap(),
            vec![0.5, 1.5, 1.0]
        );
        assert!(trapezoid_weights(&[0.0]).is_err());
        assert!(trapezoid_weights(&[0.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn dense_samples_of_a_cubic_fit_well() {
        let ts = Interval::new(-1.0, 2.0).unwrap().linspace(2001);
        let ys: Vec<f64> = ts.iter().map(|t| t * t * t - t + 0.5).collect();
        for kind in [BasisKind::Orthonormal, BasisKind::Bernstein] {
            let r = fit_curve_samples(&ts, std::slice::from_ref(&ys), kind, 3).unwrap();
            assert!(r.error < 1e-10, "{kind:?} E={}", r.error);
        }
    }

    #[test]
    fn gridded_surface() {
        let fit = |nx: usize, ny: usize| {
            let xs = Interval::unit().linspace(nx);
            let ys = Interval::new(0.0, 2.0).unwrap().linspace(ny);
            let vals: Vec<Vec<f64>> = xs
                .iter()
                .map(|x| ys.iter().map(|y| x * y + y * y).collect())
                .collect();
            fit_surface_samples(&xs, &ys, &vals, BasisKind::Bernstein, 2, 2)
                .unwrap()
                .error
        };
        // trapezoid projection: E falls like h^4
        let (coarse, fine) = (fit(201, 151), fit(401, 301));
        assert!(coarse < 1e-6, "E={coarse}");
        assert!(fine < coarse / 10.0, "E={fine}");

        let xs = Interval::unit().linspace(5);
        let vals = vec![vec![0.0; 4]; 5];
        assert!(fit_surface_samples(&xs, &xs[1..], &vals, BasisKind::Orthonormal, 2, 2).is_ok());
        assert!(fit_surface_samples(&xs, &xs, &vals, BasisKind::Orthonormal, 2, 2).is_err());
    }
}
