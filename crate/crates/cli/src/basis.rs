use num_rational::BigRational;
use onb_core::{bernstein_eval_all, onb_coeffs, BasisSpec, Interval, OrthoBasis, OrthoCoeffs};
use serde::Serialize;
use serde_json::Number;

use crate::args::{index, points, CoeffsArgs, EvalArgs, Kind};
use crate::error::CliResult;
use crate::output::{Sink, Table};

pub fn eval(args: &EvalArgs) -> CliResult<()> {
    let iv = args.interval.resolve(Interval::unit())?;
    let spec = BasisSpec::new(args.n, iv)?;
    let only = args.j.map(|j| index(j, args.n)).transpose()?;
    let xs = if args.x.is_empty() {
        iv.linspace(points(args.samples, "--samples")?)
    } else {
        args.x.clone()
    };
    let prefix = match args.kind {
        Kind::Ortho => "phi",
        Kind::Bernstein => "B",
    };
    let js: Vec<usize> = only.map_or_else(|| (0..=args.n).collect(), |j| vec![j]);
    let mut table = Table::new(
        std::iter::once("x".to_string()).chain(js.iter().map(|j| format!("{prefix}_{j}"))),
    );
    let ortho = (args.kind == Kind::Ortho).then(|| OrthoBasis::new(spec));
    for &x in &xs {
        let all = match &ortho {
            Some(b) => b.eval_all(x)?,
            None => bernstein_eval_all(&spec, x)?,
        };
        table.rows.push(
            std::iter::once(x)
                .chain(js.iter().map(|&j| all[j]))
                .collect(),
        );
    }
    Sink::open(args.output.as_deref())?.write_table(&table, args.format)
}

#[derive(Serialize)]
struct Weight {
    k: usize,
    /// Multiplies `B_{j-k, n-k}`.
    weight: String,
}

#[derive(Serialize)]
struct CoeffsJson {
    n: usize,
    j: usize,
    /// `phi = sqrt(radicand) * sum_i power[i] t^i` on the unit interval.
    radicand: u64,
    scale: f64,
    power: Vec<Number>,
    /// Exponent of the `(1 - t)` factor.
    one_minus_t_power: usize,
    /// Remaining factor, ascending powers of `t`.
    inner: Vec<Number>,
    bernstein_weights: Vec<Weight>,
}

/// The radical-free coefficients are always integers.
fn number(r: &BigRational) -> Number {
    debug_assert!(r.is_integer());
    r.to_integer()
        .to_string()
        .parse()
        .expect("integer literal is valid JSON")
}

fn coeffs_json(c: &OrthoCoeffs) -> CoeffsJson {
    CoeffsJson {
        n: c.n,
        j: c.j,
        radicand: c.radicand,
        scale: c.scale,
        power: c.power.coeffs().iter().map(number).collect(),
        one_minus_t_power: c.n - c.j,
        inner: c.inner_poly().coeffs().iter().map(number).collect(),
        bernstein_weights: c
            .combo
            .iter()
            .map(|(k, w)| Weight {
                k: *k,
                weight: w.to_string(),
            })
            .collect(),
    }
}

pub fn coeffs(args: &CoeffsArgs) -> CliResult<()> {
    match args.j {
        Some(j) => {
            let c = onb_coeffs(args.n, index(j, args.n)?)?;
            Sink::open(args.output.as_deref())?.write_json(&coeffs_json(&c))
        }
        None => {
            let all = (0..=args.n)
                .map(|j| onb_coeffs(args.n, j).map(|c| coeffs_json(&c)))
                .collect::<Result<Vec<_>, _>>()?;
            Sink::open(args.output.as_deref())?.write_json(&all)
        }
    }
}
