//! Sampled-data CSV input.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{CliError, CliResult};

/// `t` column plus one column per curve component, in file order.
pub struct CurveData {
    pub ts: Vec<f64>,
    pub names: Vec<String>,
    pub components: Vec<Vec<f64>>,
}

/// Rectangular grid, `values[a][b] = f(xs[a], ys[b])`.
pub struct SurfaceData {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

fn read_rows(path: &Path) -> CliResult<(Vec<String>, Vec<Vec<f64>>)> {
    let name = path.display().to_string();
    let mut rdr = csv::Reader::from_path(path).map_err(|e| CliError::Csv {
        path: name.clone(),
        source: e,
    })?;
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| CliError::Csv {
            path: name.clone(),
            source: e,
        })?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Csv {
            path: name.clone(),
            source: e,
        })?;
        let row = rec
            .iter()
            .map(|v| v.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
            .collect::<Option<Vec<f64>>>()
            .ok_or_else(|| {
                CliError::config(format!(
                    "{name}: non-numeric value in data row {}",
                    line + 1
                ))
            })?;
        if row.len() != header.len() {
            return Err(CliError::config(format!(
                "{name}: data row {} has {} fields",
                line + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

pub fn read_curve(path: &Path) -> CliResult<CurveData> {
    let (header, mut rows) = read_rows(path)?;
    if header.len() < 2 {
        return Err(CliError::config(format!(
            "{}: curve data needs a parameter column and at least one component, e.g. t,x,y",
            path.display()
        )));
    }
    rows.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let ts = rows.iter().map(|r| r[0]).collect();
    let components = (1..header.len())
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect();
    Ok(CurveData {
        ts,
        names: header[1..].to_vec(),
        components,
    })
}

pub fn read_surface(path: &Path) -> CliResult<SurfaceData> {
    let (header, rows) = read_rows(path)?;
    if header.len() != 3 {
        return Err(CliError::config(format!(
            "{}: surface data needs columns x,y,f",
            path.display()
        )));
    }
    let mut grid: BTreeMap<(u64, u64), f64> = BTreeMap::new();
    let key = |v: f64| ordered_bits(v);
    for r in &rows {
        if grid.insert((key(r[0]), key(r[1])), r[2]).is_some() {
            return Err(CliError::config(format!(
                "{}: duplicate point ({}, {})",
                path.display(),
                r[0],
                r[1]
            )));
        }
    }
    let mut xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let mut ys: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    for v in [&mut xs, &mut ys] {
        v.sort_by(f64::total_cmp);
        v.dedup();
    }
    if xs.len() * ys.len() != rows.len() {
        return Err(CliError::config(format!(
            "{}: {} points do not form a rectangular grid ({} distinct x, {} distinct y)",
            path.display(),
            rows.len(),
            xs.len(),
            ys.len()
        )));
    }
    let values = xs
        .iter()
        .map(|&x| ys.iter().map(|&y| grid[&(key(x), key(y))]).collect())
        .collect();
    Ok(SurfaceData { xs, ys, values })
}

/// Order-preserving map of finite floats to integers, so `-0.0 == 0.0`.
fn ordered_bits(v: f64) -> u64 {
    let v = if v == 0.0 { 0.0 } else { v };
    let bits = v.to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | (1 << 63)
    }
}
