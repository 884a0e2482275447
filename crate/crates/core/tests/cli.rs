use std::process::Command;

use qchrom::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qchrom").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> serde_json::Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn assert_close(csv: &str, expected: &[(f64, u64)]) {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("value,mult"));
    let rows: Vec<(f64, u64)> = lines
        .map(|l| {
            let (v, m) = l.split_once(',').unwrap();
            (v.parse().unwrap(), m.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), expected.len(), "{csv}");
    for ((v, m), (ev, em)) in rows.iter().zip(expected) {
        assert!((v - ev).abs() <= 1e-8 && m == em, "{csv}");
    }
}

#[test]
fn spectrum_json_h4() {
    let v = json(&["spectrum", "--n", "4", "--component", "even", "--method", "character", "--output", "json"]);
    let entries: Vec<(String, u64)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["value"].as_str().unwrap().to_string(), e["mult"].as_u64().unwrap()))
        .collect();
    assert_eq!(entries, [("6".into(), 1), ("0".into(), 4), ("-2".into(), 3)]);
}

#[test]
fn spectrum_methods_agree() {
    let (_, a, _) = call(&["spectrum", "--n", "8", "--output", "csv"]);
    let (_, b, _) = call(&["spectrum", "--n", "8", "--method", "closed-form", "--output", "csv"]);
    assert_eq!(a, b);
    assert_eq!(a, "value,mult\n70,1\n6,35\n0,64\n-10,28\n");
    let (code, dense, _) = call(&["spectrum", "--n", "4", "--method", "dense", "--output", "csv"]);
    assert_eq!(code, 0);
    assert_close(&dense, &[(6.0, 1), (0.0, 4), (-2.0, 3)]);
}

#[test]
fn chromatic_text() {
    let (code, out, _) = call(&["chromatic", "--n", "12", "--sample", "2000", "--output", "text"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("chi_q(H_12) = 12 (lower: Hoffman 12, upper: 12-color strategy"), "{out}");
}

#[test]
fn product_categorical_json() {
    let v = json(&["product", "--kind", "categorical", "--n", "8", "--m", "4", "--output", "json"]);
    assert_eq!(v["integer_bound"], "4");
    assert_eq!(v["exact"], "4");
}

#[test]
fn bound_csv() {
    let (code, out, _) = call(&["bound", "--n", "8", "--output", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "lambda_max,lambda_min,ratio,integer_bound\n70,-10,8,8\n");
}

#[test]
fn verify_strategy_exit_codes() {
    let v = json(&["verify-strategy", "--n", "4", "--output", "json"]);
    assert_eq!(v["verdict"], "PASS");
    assert!(v.get("seed").is_some() && v.get("tolerance").is_some());

    let (code, _, err) = call(&["verify-strategy", "--n", "4", "--root-power", "2"]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1);

    let (code, out, _) =
        call(&["verify-strategy", "--n", "4", "--root-power", "2", "--allow-non-primitive"]);
    assert_eq!(code, 3);
    assert!(out.contains("FAIL"));
}

#[test]
fn parameter_errors_exit_two_with_one_line() {
    for args in [
        &["spectrum", "--n", "6"][..],
        &["build", "--n", "12", "--component", "even"],
        &["bound", "--n", "4", "--output", "dot"],
        &["build", "--n", "4", "--output", "csv"],
        &["spectrum", "--n", "4", "--bogus"],
        &["product", "--kind", "sideways", "--n", "4", "--m", "4"],
        &["spectrum", "--connection", "/nonexistent/file"],
        &["bound", "--n", "4", "--method", "dense"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn edgelist_round_trips_through_files() {
    let dir = std::env::temp_dir().join(format!("qchrom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (code, edges, _) = call(&["build", "--n", "4", "--component", "full", "--output", "edgelist"]);
    assert_eq!(code, 0);
    assert_eq!(edges.lines().count(), 16 * 6 / 2);
    let path = dir.join("h4.edges");
    std::fs::write(&path, &edges).unwrap();
    let (code, again, _) = call(&["build", "--edgelist", path.to_str().unwrap(), "--output", "edgelist"]);
    assert_eq!(code, 0);
    assert_eq!(again, edges);
    let (_, spectrum, _) =
        call(&["spectrum", "--edgelist", path.to_str().unwrap(), "--method", "dense", "--output", "csv"]);
    assert_close(&spectrum, &[(6.0, 2), (0.0, 8), (-2.0, 6)]);

    let conn = dir.join("h4.conn");
    std::fs::write(&conn, "# weight-2 words\n1100\n1010\n1001\n0110\n0101\n0011\n").unwrap();
    let (code, out, err) = call(&["spectrum", "--connection", conn.to_str().unwrap(), "--output", "csv"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "value,mult\n6,2\n0,8\n-2,6\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dot_output_is_a_graph() {
    let (code, out, _) = call(&["build", "--n", "4", "--output", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph"));
    assert_eq!(out.matches(" -- ").count(), 8 * 6 / 2);
}

#[test]
fn binary_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_qchrom");
    let args = ["verify-strategy", "--n", "8", "--sample", "500", "--seed", "9", "--output", "json"];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let bad = Command::new(bin).args(["product", "--kind", "strong", "--n", "5", "--m", "4"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}

#[test]
fn thread_limit_is_validated() {
    let bin = env!("CARGO_BIN_EXE_qchrom");
    let ok = Command::new(bin).env("QCHROM_THREADS", "2").args(["spectrum", "--n", "12"]).output().unwrap();
    assert!(ok.status.success());
    let bad = Command::new(bin).env("QCHROM_THREADS", "zero").args(["spectrum", "--n", "4"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
