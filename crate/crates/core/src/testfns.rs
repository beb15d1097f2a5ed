//! Benchmark targets: a Lissajous curve, a regularized sinc surface and a
//! Langermann surface.

use std::f64::consts::PI;

use crate::basis::Interval;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LissajousParams {
    pub amp_x: f64,
    pub amp_y: f64,
    pub a_freq: i32,
    pub b_freq: i32,
    pub delta: f64,
    pub t_interval: Interval,
}

impl Default for LissajousParams {
    fn default() -> Self {
        Self {
            amp_x: 1.0,
            amp_y: 1.0,
            a_freq: 4,
            b_freq: 3,
            delta: PI / 3.0,
            t_interval: Interval::new(-PI, PI).expect("valid"),
        }
    }
}

impl LissajousParams {
    /// `A sin(a t + delta)`, unchecked.
    pub fn x(&self, t: f64) -> f64 {
        self.amp_x * (self.a_freq as f64 * t + self.delta).sin()
    }

    /// `B sin(b t)`, unchecked.
    pub fn y(&self, t: f64) -> f64 {
        self.amp_y * (self.b_freq as f64 * t).sin()
    }
}

/// `(x(t), y(t))`; `t` must lie in the parameter interval.
pub fn lissajous(params: &LissajousParams, t: f64) -> Result<(f64, f64)> {
    let iv = params.t_interval;
    if !iv.contains(t) {
        return Err(Error::Domain {
            x: t,
            a: iv.a(),
            b: iv.b(),
        });
    }
    Ok((params.x(t), params.y(t)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SincParams {
    /// Added to the denominator only.
    pub s: f64,
    pub domain: Interval,
}

impl Default for SincParams {
    fn default() -> Self {
        Self {
            s: 1e-6,
            domain: Interval::new(-8.0, 8.0).expect("valid"),
        }
    }
}

impl SincParams {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let r = 1.5 * x.hypot(y);
        r.sin() / (self.s + r)
    }
}

fn check_square(domain: Interval, x: f64, y: f64) -> Result<()> {
    for v in [x, y] {
        if !domain.contains(v) {
            return Err(Error::Domain {
                x: v,
                a: domain.a(),
                b: domain.b(),
            });
        }
    }
    Ok(())
}

/// `sin(1.5 r) / (s + 1.5 r)` with `r = sqrt(x^2 + y^2)`.
pub fn sinc_surface(params: &SincParams, x: f64, y: f64) -> Result<f64> {
    check_square(params.domain, x, y)?;
    Ok(params.eval(x, y))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LangermannParams {
    pub c: Vec<f64>,
    pub q: Vec<f64>,
    pub r: Vec<f64>,
    pub domain: Interval,
}

impl Default for LangermannParams {
    fn default() -> Self {
        Self {
            c: vec![1.0, 2.0],
            q: vec![2.0, 3.0],
            r: vec![3.0, 2.0],
            domain: Interval::new(1.0, 3.0).expect("valid"),
        }
    }
}

impl LangermannParams {
    /// Number of terms `p`.
    pub fn terms(&self) -> usize {
        self.c.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.len() != self.c.len() || self.r.len() != self.c.len() {
            return Err(Error::Config(format!(
                "Langermann parameter lists differ in length: c={}, q={}, r={}",
                self.c.len(),
                self.q.len(),
                self.r.len()
            )));
        }
        Ok(())
    }

    /// Unchecked evaluation; call [`validate`](Self::validate) first.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.c
            .iter()
            .zip(&self.q)
            .zip(&self.r)
            .map(|((c, q), r)| {
                let d = (x - q).powi(2) + (y - r).powi(2);
                c * (-d / PI).exp() * (PI * d).cos()
            })
            .sum()
    }
}

pub fn langermann_surface(params: &LangermannParams, x: f64, y: f64) -> Result<f64> {
    params.validate()?;
    check_square(params.domain, x, y)?;
    Ok(params.eval(x, y))
}
