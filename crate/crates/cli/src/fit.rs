use std::path::Path;

use onb_core::approx::{
    best_report, degree_sweep_curve, degree_sweep_surface, fit_curve, fit_surface, BasisKind,
    Controls, CurveFn, FitReport, SampleGrid, SurfaceFn, DEFAULT_CURVE_POINTS,
    DEFAULT_SURFACE_POINTS,
};
use onb_core::sampled::{fit_curve_samples, fit_surface_samples};
use onb_core::BasisSpec;

use crate::args::{points, Degrees, FitArgs};
use crate::error::{CliError, CliResult};
use crate::input::{read_curve, read_surface};
use crate::output::{Format, Sink, Table};
use crate::report::{ReportJson, SweepBest, SweepJson};
use crate::targets::Target;

fn degree_list(d: Degrees) -> Vec<usize> {
    match d {
        Degrees::One(n) => vec![n],
        Degrees::Range(lo, hi) => (lo..=hi).collect(),
    }
}

/// Rejects flags that only make sense for built-in targets.
fn check_sampled(args: &FitArgs) -> CliResult<()> {
    let mut bad = Vec::new();
    if args.quadrature.is_set() {
        bad.push("--panels/--nodes");
    }
    if args.interval.a.is_some() || args.interval.b.is_some() {
        bad.push("--a/--b");
    }
    if args.samples.is_some() || args.grid.is_some() {
        bad.push("--samples/--grid");
    }
    if !args.params.is_empty() {
        bad.push("--param");
    }
    if bad.is_empty() {
        return Ok(());
    }
    Err(CliError::config(format!(
        "{} cannot be combined with --input: sampled data is integrated with trapezoid weights at its own abscissae",
        bad.join(", ")
    )))
}

fn target(args: &FitArgs, want_curve: bool) -> CliResult<Target> {
    let name = args
        .target
        .as_deref()
        .expect("clap requires --target or --input");
    let mut t = Target::parse(name, &args.params)?;
    if t.is_curve() != want_curve {
        let (is, cmd) = if t.is_curve() {
            ("a curve", "fit curve")
        } else {
            ("a surface", "fit surface")
        };
        return Err(CliError::config(format!(
            "target '{name}' is {is}; use `{cmd}`"
        )));
    }
    let iv = args.interval.resolve(t.domain())?;
    t.set_domain(iv);
    Ok(t)
}

fn emit(
    reports: Vec<FitReport>,
    names: Option<Vec<String>>,
    label: &str,
    args: &FitArgs,
) -> CliResult<FitReport> {
    let sink = Sink::open(args.output.as_deref())?;
    if reports.len() == 1 {
        sink.write_json(&ReportJson::new(label, &reports[0], names))?;
    } else {
        let best = best_report(&reports).map(|r| SweepBest {
            n: r.n,
            m: r.m,
            error: r.error,
        });
        let json = SweepJson {
            best,
            reports: reports
                .iter()
                .map(|r| ReportJson::new(label, r, names.clone()))
                .collect(),
        };
        sink.write_json(&json)?;
    }
    let best = best_report(&reports).expect("at least one degree").clone();
    Ok(best)
}

pub fn curve(args: &FitArgs) -> CliResult<()> {
    if args.m.is_some() || args.grid.is_some() {
        return Err(CliError::config(
            "--m and --grid apply to `fit surface`; curves use --n and --samples",
        ));
    }
    let kind = BasisKind::from(args.basis);
    let degrees = degree_list(args.n);
    if let Some(path) = &args.input {
        check_sampled(args)?;
        let data = read_curve(path)?;
        let reports = degrees
            .iter()
            .map(|&n| fit_curve_samples(&data.ts, &data.components, kind, n))
            .collect::<Result<Vec<_>, _>>()?;
        let best = emit(
            reports,
            Some(data.names.clone()),
            &path.display().to_string(),
            args,
        )?;
        if let Some(out) = &args.emit_samples {
            let mut table = curve_header(&data.names);
            let fits = curve_fits(&best);
            for (k, &t) in data.ts.iter().enumerate() {
                let truth: Vec<f64> = data.components.iter().map(|c| c[k]).collect();
                table.rows.push(curve_row(t, &truth, &fits)?);
            }
            write_samples(out, &table)?;
        }
        return Ok(());
    }

    let t = target(args, true)?;
    let Target::Lissajous(p) = &t else {
        unreachable!("curve targets are Lissajous")
    };
    let iv = p.t_interval;
    let fx = |s: f64| p.x(s);
    let fy = |s: f64| p.y(s);
    let components: [&CurveFn<'_>; 2] = [&fx, &fy];
    let rule = args.quadrature.rule()?;
    let grid = SampleGrid::curve(
        iv,
        points(args.samples.unwrap_or(DEFAULT_CURVE_POINTS), "--samples")?,
    )?;
    let reports = match args.n {
        Degrees::One(n) => vec![fit_curve(
            &components,
            kind,
            BasisSpec::new(n, iv)?,
            &rule,
            &grid,
        )?],
        Degrees::Range(..) => degree_sweep_curve(&components, kind, iv, degrees, &rule, &grid)?,
    };
    let names = vec!["x".to_string(), "y".to_string()];
    let best = emit(reports, Some(names.clone()), t.name(), args)?;
    if let Some(out) = &args.emit_samples {
        let mut table = curve_header(&names);
        let fits = curve_fits(&best);
        for s in grid.xs() {
            table.rows.push(curve_row(s, &[fx(s), fy(s)], &fits)?);
        }
        write_samples(out, &table)?;
    }
    Ok(())
}

fn curve_header(names: &[String]) -> Table {
    Table::new(
        std::iter::once("t".to_string())
            .chain(names.iter().cloned())
            .chain(names.iter().map(|c| format!("{c}_fit"))),
    )
}

fn curve_fits(report: &FitReport) -> Vec<onb_core::approx::ControlVector> {
    match &report.controls {
        Controls::Curve(c) => c.clone(),
        Controls::Surface(_) => unreachable!("curve fit"),
    }
}

fn curve_row(
    t: f64,
    truth: &[f64],
    fits: &[onb_core::approx::ControlVector],
) -> CliResult<Vec<f64>> {
    let mut row = vec![t];
    row.extend_from_slice(truth);
    for cv in fits {
        row.push(cv.eval(t)?);
    }
    Ok(row)
}

fn write_samples(path: &Path, table: &Table) -> CliResult<()> {
    Sink::open(Some(path))?.write_table(table, Format::Csv)
}

pub fn surface(args: &FitArgs) -> CliResult<()> {
    if args.samples.is_some() {
        return Err(CliError::config(
            "--samples applies to `fit curve`; surfaces use --grid",
        ));
    }
    if matches!(args.n, Degrees::Range(..)) && args.m.is_some() {
        return Err(CliError::config("a degree range sweeps n = m; drop --m"));
    }
    let kind = BasisKind::from(args.basis);
    let pairs: Vec<(usize, usize)> = match args.n {
        Degrees::One(n) => vec![(n, args.m.unwrap_or(n))],
        Degrees::Range(lo, hi) => (lo..=hi).map(|n| (n, n)).collect(),
    };
    if let Some(path) = &args.input {
        check_sampled(args)?;
        let data = read_surface(path)?;
        let reports = pairs
            .iter()
            .map(|&(n, m)| fit_surface_samples(&data.xs, &data.ys, &data.values, kind, n, m))
            .collect::<Result<Vec<_>, _>>()?;
        let best = emit(reports, None, &path.display().to_string(), args)?;
        if let Some(out) = &args.emit_samples {
            let fitted = surface_grid(&best)?.eval_grid(&data.xs, &data.ys)?;
            write_samples(
                out,
                &surface_table(&data.xs, &data.ys, &data.values, &fitted),
            )?;
        }
        return Ok(());
    }

    let t = target(args, false)?;
    let f = t.surface().expect("surface target");
    let f: &SurfaceFn<'_> = &*f;
    let iv = t.domain();
    let g = points(args.grid.unwrap_or(DEFAULT_SURFACE_POINTS), "--grid")?;
    let grid = SampleGrid::surface(iv, g, iv, g)?;
    let rule = args.quadrature.rule()?;
    let reports = match args.n {
        Degrees::One(_) => {
            let (n, m) = pairs[0];
            vec![fit_surface(
                f,
                kind,
                BasisSpec::new(n, iv)?,
                BasisSpec::new(m, iv)?,
                &rule,
                &grid,
            )?]
        }
        Degrees::Range(lo, hi) => degree_sweep_surface(f, kind, iv, iv, lo..=hi, &rule, &grid)?,
    };
    let best = emit(reports, None, t.name(), args)?;
    if let Some(out) = &args.emit_samples {
        let (xs, ys) = (grid.xs(), grid.ys());
        let truth: Vec<Vec<f64>> = xs
            .iter()
            .map(|&x| ys.iter().map(|&y| f(x, y)).collect())
            .collect();
        let fitted = surface_grid(&best)?.eval_grid(&xs, &ys)?;
        write_samples(out, &surface_table(&xs, &ys, &truth, &fitted))?;
    }
    Ok(())
}

fn surface_grid(report: &FitReport) -> CliResult<&onb_core::approx::ControlGrid> {
    match &report.controls {
        Controls::Surface(g) => Ok(g),
        Controls::Curve(_) => unreachable!("surface fit"),
    }
}

fn surface_table(xs: &[f64], ys: &[f64], truth: &[Vec<f64>], fitted: &[Vec<f64>]) -> Table {
    let mut table = Table::new(["x", "y", "f", "f_fit"]);
    for (a, &x) in xs.iter().enumerate() {
        for (b, &y) in ys.iter().enumerate() {
            table.rows.push(vec![x, y, truth[a][b], fitted[a][b]]);
        }
    }
    table
}
