use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn onb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_onb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn ok(args: &[&str]) -> Output {
    let o = onb(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    o
}

#[test]
fn coeffs_for_top_index() {
    let v = json(&ok(&["basis", "coeffs", "--n", "5", "--j", "5"]));
    let power: Vec<i64> = v["power"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect();
    assert_eq!(power, [-1, 35, -280, 840, -1050, 462]);
    assert_eq!(v["radicand"], 1);
}

#[test]
fn coeffs_for_all_indices() {
    let v = json(&ok(&["basis", "coeffs", "--n", "5"]));
    let all = v.as_array().unwrap();
    assert_eq!(all.len(), 6);
    assert_eq!(all[0]["radicand"], 11);
    assert_eq!(all[1]["inner"], serde_json::json!([-1, 11]));
    assert_eq!(all[1]["one_minus_t_power"], 4);
}

#[test]
fn large_coefficients_stay_exact() {
    let o = ok(&["basis", "coeffs", "--n", "64", "--j", "64"]);
    // C(129, 64) exceeds every fixed-width integer
    assert!(stdout(&o).contains("47533812913980349072792166510047556550"));
}

#[test]
fn basis_eval_table_shape() {
    let o = ok(&[
        "basis",
        "eval",
        "--kind",
        "ortho",
        "--n",
        "8",
        "--samples",
        "501",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 502);
    assert_eq!(
        lines[0],
        "x,phi_0,phi_1,phi_2,phi_3,phi_4,phi_5,phi_6,phi_7,phi_8"
    );
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 10));
    // phi_{8,8}(0) = 1 (up to sign pattern), 17 significant digits
    assert!(lines[1].ends_with(",1.0000000000000000e0"));
}

#[test]
fn basis_eval_bernstein_json() {
    let v = json(&ok(&[
        "basis",
        "eval",
        "--basis",
        "bernstein",
        "--n",
        "4",
        "--x",
        "0.5",
        "--format",
        "json",
    ]));
    let row = v["rows"][0].as_array().unwrap();
    let sum: f64 = row[1..].iter().map(|x| x.as_f64().unwrap()).sum();
    assert!((sum - 1.0).abs() < 1e-15);
    assert_eq!(v["columns"][1], "B_0");
}

#[test]
fn basis_eval_outside_interval() {
    let o = onb(&["basis", "eval", "--n", "3", "--x", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("x outside interval"));
}

#[test]
fn negative_index_is_an_index_error() {
    let o = onb(&["basis", "eval", "--n", "3", "--j", "-1", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("index -1 out of range"),
        "{}",
        stderr(&o)
    );
    let o = onb(&["basis", "coeffs", "--n", "3", "--j", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn degree_cap_and_bad_interval() {
    assert_eq!(
        onb(&["basis", "coeffs", "--n", "65"]).status.code(),
        Some(2)
    );
    let o = onb(&["basis", "eval", "--n", "3", "--a", "1", "--b", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid interval"));
}

#[test]
fn verify_ortho_passes() {
    let v = json(&ok(&["verify", "ortho", "--n", "8"]));
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 81);
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert_eq!(checks[0]["expected"], "1/17");
}

#[test]
fn verify_sturm_passes_with_zero_residuals() {
    let v = json(&ok(&["verify", "sturm", "--n", "10"]));
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 11);
    assert!(checks
        .iter()
        .all(|c| c["residual"] == "0" && c["pass"] == true));
    assert_eq!(checks[0]["lambda"], "-110");
}

#[test]
fn verify_gram_passes() {
    let v = json(&ok(&["verify", "gram", "--n", "7"]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["failures"], 0);
}

#[test]
fn verify_beyond_exact_guard() {
    let o = onb(&["verify", "sturm", "--n", "20"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exact-verification limit"));
}

#[test]
fn fit_lissajous_both_bases() {
    let v = json(&ok(&[
        "fit",
        "curve",
        "--target",
        "lissajous",
        "--n",
        "20",
        "--basis",
        "ortho",
    ]));
    assert_eq!(v["basis"], "ortho");
    assert!(v["error"].as_f64().unwrap() <= 1e-6);
    assert_eq!(v["grid"]["N"], 1001);
    assert_eq!(v["quadrature"]["panels"], 64);
    assert_eq!(v["quadrature"]["nodes"], 16);

    let v = json(&ok(&[
        "fit",
        "curve",
        "--target",
        "lissajous",
        "--n",
        "20",
        "--basis",
        "bernstein",
    ]));
    assert!(v["error"].as_f64().unwrap() <= 5e-7);
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 2);
    assert!(coeffs.iter().all(|c| c.as_array().unwrap().len() == 21));
}

#[test]
fn fit_report_is_deterministic() {
    let args = [
        "fit",
        "surface",
        "--target",
        "langermann",
        "--n",
        "6",
        "--m",
        "5",
        "--grid",
        "41",
    ];
    let (a, b) = (ok(&args), ok(&args));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let keys = [
        "target",
        "basis",
        "degrees",
        "intervals",
        "coefficients",
        "error",
        "grid",
        "quadrature",
    ];
    let pos: Vec<usize> = keys
        .iter()
        .map(|k| text.find(&format!("\n  \"{k}\"")).expect(k))
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "field order {pos:?}");
    let v = json(&a);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 7 * 6);
    assert_eq!(v["degrees"], serde_json::json!({"n": 6, "m": 5}));
    assert_eq!(v["grid"], serde_json::json!({"N": 41, "M": 41}));
}

#[test]
fn fit_sinc_surface() {
    let v = json(&ok(&[
        "fit", "surface", "--target", "sinc", "--n", "12", "--m", "12", "--basis", "ortho",
    ]));
    let e = v["error"].as_f64().unwrap();
    assert!(e.is_finite() && e < 1e-4, "E={e}");
    assert_eq!(
        v["intervals"],
        serde_json::json!([[-8.0, 8.0], [-8.0, 8.0]])
    );
}

#[test]
fn fit_sweep_reports_every_degree() {
    let v = json(&ok(&[
        "fit",
        "curve",
        "--target",
        "lissajous",
        "--n",
        "16..19",
        "--samples",
        "201",
    ]));
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(
        reports
            .iter()
            .map(|r| r["degrees"]["n"].as_u64().unwrap())
            .collect::<Vec<_>>(),
        [16, 17, 18, 19]
    );
    let best = reports
        .iter()
        .map(|r| r["error"].as_f64().unwrap())
        .fold(f64::INFINITY, f64::min);
    assert_eq!(v["best"]["error"].as_f64().unwrap(), best);
}

#[test]
fn fit_rejects_mismatched_target_and_flags() {
    let o = onb(&["fit", "curve", "--target", "sinc", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fit surface"));
    assert_eq!(
        onb(&[
            "fit",
            "curve",
            "--target",
            "lissajous",
            "--n",
            "4",
            "--m",
            "3"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        onb(&["fit", "surface", "--target", "sinc", "--n", "3..5", "--m", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        onb(&[
            "fit",
            "curve",
            "--target",
            "lissajous",
            "--n",
            "4",
            "--nodes",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    let o = onb(&[
        "fit",
        "curve",
        "--target",
        "lissajous",
        "--n",
        "4",
        "--param",
        "colour=red",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("a_freq"));
}

#[test]
fn fit_langermann_bad_params() {
    let o = onb(&[
        "fit",
        "surface",
        "--target",
        "langermann",
        "--n",
        "3",
        "--param",
        "c=1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("differ in length"));
}

#[test]
fn non_finite_target_is_a_numeric_error() {
    // s = -1.5 makes the sinc denominator vanish on the unit circle of radius 1
    let o = onb(&[
        "fit", "surface", "--target", "sinc", "--n", "3", "--param", "s=-1.5", "--a", "-1", "--b",
        "1", "--nodes", "1", "--panels", "3",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn emit_samples_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("liss.csv");
    let report = json(&ok(&[
        "fit",
        "curve",
        "--target",
        "lissajous",
        "--n",
        "20",
        "--samples",
        "101",
        "--emit-samples",
        out.to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,x,y,x_fit,y_fit");
    assert_eq!(lines.len(), 102);
    let sq: f64 = lines[1..]
        .iter()
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            (v[1] - v[3]).powi(2) + (v[2] - v[4]).powi(2)
        })
        .sum();
    let e = report["error"].as_f64().unwrap();
    assert!((sq / 101.0 - e).abs() <= 1e-12 * e, "{} vs {e}", sq / 101.0);
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn fit_sampled_curve_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("curve.csv");
    let mut text = String::from("t,x,y\n");
    // rows out of order on purpose
    for k in (0..=400).rev() {
        let t = k as f64 / 400.0;
        text += &format!("{t},{},{}\n", t * t, 1.0 - t);
    }
    write(&input, &text);
    let v = json(&ok(&[
        "fit",
        "curve",
        "--input",
        input.to_str().unwrap(),
        "--n",
        "2",
        "--basis",
        "bernstein",
    ]));
    assert!(v["error"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["quadrature"]["rule"], "trapezoid");
    assert_eq!(v["grid"]["N"], 401);
    // x = t^2 has Bernstein control points 0, 0, 1
    let x: Vec<f64> = v["coefficients"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_f64().unwrap())
        .collect();
    assert!(
        (x[0]).abs() < 1e-4 && (x[1]).abs() < 1e-4 && (x[2] - 1.0).abs() < 1e-4,
        "{x:?}"
    );

    let o = onb(&[
        "fit",
        "curve",
        "--input",
        input.to_str().unwrap(),
        "--n",
        "2",
        "--panels",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fit_sampled_surface_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.csv");
    let sampled_error = |points: &str| {
        let o = ok(&[
            "sample",
            "--target",
            "langermann",
            "--grid",
            points,
            "--output",
            grid.to_str().unwrap(),
        ]);
        assert!(o.stdout.is_empty());
        let v = json(&ok(&[
            "fit",
            "surface",
            "--input",
            grid.to_str().unwrap(),
            "--n",
            "13",
            "--m",
            "13",
        ]));
        assert_eq!(v["grid"]["M"].to_string(), points);
        v["error"].as_f64().unwrap()
    };
    // trapezoid projection converges with the sample spacing
    let (coarse, fine) = (sampled_error("81"), sampled_error("161"));
    assert!(fine < 1e-3 && fine < coarse / 10.0, "{coarse} -> {fine}");

    let holey = dir.path().join("holey.csv");
    write(&holey, "x,y,f\n0,0,1\n0,1,2\n1,0,3\n");
    let o = onb(&[
        "fit",
        "surface",
        "--input",
        holey.to_str().unwrap(),
        "--n",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rectangular"));

    let o = onb(&[
        "fit",
        "surface",
        "--input",
        dir.path().join("missing.csv").to_str().unwrap(),
        "--n",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sample_targets() {
    let o = ok(&["sample", "--target", "langermann", "--grid", "201"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 201 * 201 + 1);
    assert_eq!(text.lines().next(), Some("x,y,f"));

    let o = ok(&["sample", "--target", "lissajous", "--samples", "1001"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1002);
    assert_eq!(text.lines().next(), Some("t,x,y"));

    let o = onb(&["sample", "--target", "rosenbrock"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("lissajous") && err.contains("sinc") && err.contains("langermann"));
}

#[test]
fn sample_respects_interval_override() {
    let v = json(&ok(&[
        "sample", "--target", "sinc", "--grid", "3", "--a", "0", "--b", "2", "--format", "json",
    ]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[8][0], 2.0);
}
