//! JSON shape of fit reports.

use onb_core::approx::{Controls, FitReport};
use serde::Serialize;

#[derive(Serialize)]
pub struct Degrees {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

#[derive(Serialize)]
pub struct GridSize {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

#[derive(Serialize)]
pub struct Quadrature {
    pub rule: &'static str,
    pub panels: usize,
    pub nodes: usize,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Coefficients {
    /// One vector per curve component.
    Curve(Vec<Vec<f64>>),
    /// Row-major `(n+1) x (m+1)`.
    Surface(Vec<f64>),
}

#[derive(Serialize)]
pub struct ReportJson {
    pub target: String,
    pub basis: &'static str,
    pub degrees: Degrees,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<String>>,
    pub coefficients: Coefficients,
    pub error: f64,
    pub grid: GridSize,
    pub quadrature: Quadrature,
}

impl ReportJson {
    pub fn new(target: &str, report: &FitReport, components: Option<Vec<String>>) -> Self {
        let ivs: Vec<[f64; 2]> = report
            .intervals()
            .iter()
            .map(|iv| [iv.a(), iv.b()])
            .collect();
        let (interval, intervals) = match report.controls {
            Controls::Curve(_) => (ivs.first().copied(), None),
            Controls::Surface(_) => (None, Some(ivs)),
        };
        let coefficients = match &report.controls {
            Controls::Curve(cvs) => {
                Coefficients::Curve(cvs.iter().map(|c| c.values().to_vec()).collect())
            }
            Controls::Surface(g) => Coefficients::Surface(g.values().to_vec()),
        };
        let rule = if report.panels == 0 {
            "trapezoid"
        } else {
            "gauss-legendre"
        };
        Self {
            target: target.to_string(),
            basis: report.kind.as_str(),
            degrees: Degrees {
                n: report.n,
                m: report.m,
            },
            interval,
            intervals,
            components,
            coefficients,
            error: report.error,
            grid: GridSize {
                n: report.grid.n(),
                m: report.grid.m(),
            },
            quadrature: Quadrature {
                rule,
                panels: report.panels,
                nodes: report.nodes,
            },
        }
    }
}

/// Output of a degree sweep.
#[derive(Serialize)]
pub struct SweepJson {
    pub best: Option<SweepBest>,
    pub reports: Vec<ReportJson>,
}

#[derive(Serialize)]
pub struct SweepBest {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub error: f64,
}
