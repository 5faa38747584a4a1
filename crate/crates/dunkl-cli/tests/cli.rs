//! End-to-end checks of the `dunkl` binary: flags, formats, exit codes, and
//! the documented cross-checks.

use std::path::PathBuf;
use std::process::{Command, Output};

fn dunkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn ak_reports_the_duplication_value() {
    let out = dunkl(&["ak", "--k", "1"]);
    assert!(out.status.success(), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["schema_version"], "1");
    let rec = &doc["records"][0];
    assert!((rec["a_k"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-10);
    assert!(rec["rel_diff"].as_f64().unwrap() < 1e-7);
}

#[test]
fn ak_classical_case() {
    let out = dunkl(&["ak", "--k", "0"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!((doc["records"][0]["a_k"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn ak_sweep_is_monotone_and_below_sqrt2() {
    let out = dunkl(&["ak", "--k", "0", "--sweep", "0", "10", "50", "--format", "csv"]);
    assert!(out.status.success());
    let body = stdout_str(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "k,a_k,cross_check,rel_diff,sqrt2_gap");
    let mut prev = -1.0;
    let mut last = 0.0;
    for line in lines {
        let a: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(a > prev, "sweep not increasing");
        prev = a;
        last = a;
    }
    assert!(last < 1.41422);
}

#[test]
fn tv_opposite_signs_is_one_and_bounded() {
    let out = dunkl(&["tv", "--k", "1", "--x", "1", "--y=-2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!((doc["tv_direct"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(doc["bound_ok"], true);
    assert_eq!(doc["agree"], true);
}

#[test]
fn tv_routes_agree_on_generic_input() {
    let out = dunkl(&["tv", "--k", "2", "--x", "0.5", "--y", "3"]);
    assert!(out.status.success(), "exit: {:?}", out.status);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let direct = doc["tv_direct"].as_f64().unwrap();
    let theta = doc["tv_theta"].as_f64().unwrap();
    assert!(((direct - theta) / theta).abs() < 1e-7);
    assert!(direct <= doc["a_k"].as_f64().unwrap() + 1e-9);
}

#[test]
fn kernel_scan_integrates_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kernel.csv");
    let out = dunkl(&[
        "kernel",
        "--k",
        "1",
        "--x",
        "1",
        "--y",
        "1",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "z,gamma,weighted_gamma");
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let mut it = l.split(',');
            let z: f64 = it.next().unwrap().parse().unwrap();
            let _gamma: f64 = it.next().unwrap().parse().unwrap();
            let w: f64 = it.next().unwrap().parse().unwrap();
            (z, w)
        })
        .collect();
    let mut total = 0.0;
    for pair in rows.windows(2) {
        let h = pair[1].0 - pair[0].0;
        total += 0.5 * (pair[0].1 + pair[1].1) * h;
    }
    assert!(
        (total - 1.0).abs() < 1e-4,
        "trapezoid of the emitted CSV: {total}"
    );
}

#[test]
fn translate_at_zero_reproduces_input_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.csv");
    let output = dir.path().join("tf.csv");
    // build an input CSV through the transform command (gaussian samples)
    let make = dunkl(&[
        "transform",
        "--k",
        "0",
        "--function",
        "gaussian",
        "--xi-min=-3",
        "--xi-max",
        "3",
        "--count",
        "101",
        "--output",
        input.to_str().unwrap(),
    ]);
    assert!(make.status.success());
    let out = dunkl(&[
        "translate",
        "--k",
        "1",
        "--x",
        "0",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let a = std::fs::read(&input).unwrap();
    let b = std::fs::read(&output).unwrap();
    assert_eq!(a, b, "x = 0 translation must reproduce the input exactly");
}

#[test]
fn transform_of_gaussian_matches_closed_form() {
    let out = dunkl(&[
        "transform",
        "--k",
        "1",
        "--function",
        "gaussian",
        "--xi-min=-4",
        "--xi-max",
        "4",
        "--count",
        "81",
    ]);
    assert!(out.status.success());
    let body = stdout_str(&out);
    for line in body.lines().skip(1) {
        let mut it = line.split(',');
        let xi: f64 = it.next().unwrap().parse().unwrap();
        let re: f64 = it.next().unwrap().parse().unwrap();
        let im: f64 = it.next().unwrap().parse().unwrap();
        let exact = (-0.5 * xi * xi).exp();
        assert!(
            (re - exact).abs() < 1e-7 * exact.max(1e-3),
            "xi={xi}: {re} vs {exact}"
        );
        assert!(im.abs() < 1e-9);
    }
}

#[test]
fn transform_csv_reparses_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("h1.csv");
    let p2 = dir.path().join("h2.csv");
    let args = |p: &PathBuf| {
        vec![
            "transform".to_string(),
            "--k".into(),
            "0.5".into(),
            "--function".into(),
            "gaussian".into(),
            "--xi-min=-2".into(),
            "--xi-max".into(),
            "2".into(),
            "--count".into(),
            "41".into(),
            "--output".into(),
            p.to_str().unwrap().into(),
        ]
    };
    let o1 = Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(args(&p1))
        .output()
        .unwrap();
    let o2 = Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(args(&p2))
        .output()
        .unwrap();
    assert!(o1.status.success() && o2.status.success());
    // determinism plus round-trip: identical bytes, and a parse/print cycle
    // through the library is the identity
    let a = std::fs::read_to_string(&p1).unwrap();
    let b = std::fs::read_to_string(&p2).unwrap();
    assert_eq!(a, b);
    let parsed = dunkl_core::grid::SampledFunction::from_csv(a.as_bytes()).unwrap();
    assert_eq!(parsed.to_csv_string(), a);
}

#[test]
fn rootinfo_a2_and_b2() {
    let out = dunkl(&["rootinfo", "--root", "A2", "--lambda", "1,0"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["group_order"], 6);
    assert_eq!(doc["longest_is_minus_identity"], false);
    assert_eq!(doc["lambda"]["admissible"], true);

    let out = dunkl(&["rootinfo", "--root", "B2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["group_order"], 8);
    assert_eq!(doc["longest_is_minus_identity"], true);

    let out = dunkl(&["rootinfo", "--root", "A1xA1", "--lambda", "1,0"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["lambda"]["admissible"], false);
}

#[test]
fn pw_one_dimensional_rate() {
    let out = dunkl(&["pw", "--k", "1", "--r", "1", "--samples", "24"]);
    assert!(out.status.success(), "{:?}", out.status);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let ratio = doc["ratio"].as_f64().unwrap();
    assert!((0.95..=1.0).contains(&ratio), "ratio {ratio}");
    assert_eq!(doc["schema_version"], "1");
}

#[test]
fn support2d_summary_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let heat = dir.path().join("heat.csv");
    let summary = dir.path().join("summary.json");
    let out = dunkl(&[
        "support2d",
        "--x",
        "1,2",
        "--y",
        "2,1",
        "--eps",
        "0.2",
        "--grid",
        "61",
        "--heatmap",
        heat.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert!(doc["outside_fraction"].as_f64().unwrap() < 0.01);
    assert_eq!(doc["region_matches_predicate"], true);
    assert_eq!(doc["shell_ok"], true);
    let head = std::fs::read_to_string(&heat).unwrap();
    assert!(head.starts_with("z1,z2,gamma_eps\n"));
    // region vertices describe the |z_j| in [1,3] product
    let verts = doc["region_vertices"].as_array().unwrap();
    assert_eq!(verts.len(), 4);
    assert_eq!(verts[0][0].as_f64().unwrap(), 1.0);
    assert_eq!(verts[2][1].as_f64().unwrap(), 3.0);
}

#[test]
fn bad_input_fails_with_usage_error() {
    let out = dunkl(&["tv", "--k=-1", "--x", "1", "--y", "1"]);
    assert!(!out.status.success());
    assert_eq!(out.status.code(), Some(1));
}
