use std::fs;
use std::process::{Command, Output};

fn rgspectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgspectra"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sample_then_energy_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let g = graph.to_str().unwrap();
    let o = rgspectra(&[
        "sample", "--n", "30", "--p", "0.4", "--seed", "5", "--out", g,
    ]);
    assert!(o.status.success());
    let rec: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&graph).unwrap()).unwrap();
    assert_eq!(rec["n"], 30);
    assert_eq!(rec["seed"], 5);

    let direct = rgspectra(&["energy", "--n", "30", "--p", "0.4", "--seed", "5"]);
    let via_file = rgspectra(&["energy", "--graph", g]);
    assert!(direct.status.success());
    assert_eq!(stdout(&direct), stdout(&via_file));
    let e: serde_json::Value = serde_json::from_str(&stdout(&direct)).unwrap();
    assert!(e["energy"].as_f64().unwrap() > 0.0);

    let le = rgspectra(&["lenergy", "--graph", g]);
    let le: serde_json::Value = serde_json::from_str(&stdout(&le)).unwrap();
    assert!(le["energy"].as_f64().unwrap() > e["energy"].as_f64().unwrap());
}

#[test]
fn spectrum_of_complete_graph() {
    let o = rgspectra(&["spectrum", "--n", "5", "--p", "1", "--matrix", "adjacency"]);
    assert!(o.status.success());
    let values: Vec<f64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    let expected = [-1.0, -1.0, -1.0, -1.0, 4.0];
    assert!(
        values
            .iter()
            .zip(expected)
            .all(|(a, b)| (a - b).abs() < 1e-12),
        "{values:?}"
    );
}

#[test]
fn esd_is_one_value_per_vertex() {
    let o = rgspectra(&["esd", "--n", "40", "--p", "0.5", "--seed", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 40);
    assert!(rgspectra(&["esd", "--n", "10", "--p", "1"]).status.code() == Some(2));
}

#[test]
fn freeconv_prints_exact_moments() {
    let o = rgspectra(&["freeconv", "--degree", "6"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["moments"],
        serde_json::json!(["0/1", "2/1", "0/1", "9/1", "0/1", "56/1"])
    );
    let b = v["abs_moment_bracket"].as_array().unwrap();
    assert!((b[0].as_f64().unwrap() - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
}

#[test]
fn experiment_csv_to_stdout_is_deterministic() {
    let args = [
        "experiment",
        "conjecture",
        "--n",
        "16,24",
        "--p",
        "0.5",
        "--trials",
        "3",
        "--seed",
        "8",
    ];
    let (a, b) = (rgspectra(&args), rgspectra(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 7);
}

#[test]
fn experiment_json_summary() {
    let o = rgspectra(&[
        "experiment",
        "drift",
        "--n",
        "64",
        "--p",
        "0.5",
        "--trials",
        "20",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "drift");
    assert_eq!(v["cells"][0]["trials"], 20);
    assert_eq!(v["cells"][0]["tail_checks"].as_array().unwrap().len(), 5);
}

#[test]
fn failing_verdict_exits_one() {
    // far too small for the KS threshold
    let o = rgspectra(&[
        "experiment",
        "esd-ks",
        "--n",
        "6",
        "--p",
        "0.5",
        "--trials",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_io_errors_exit_two() {
    assert_eq!(
        rgspectra(&["experiment", "nope", "--n", "8", "--p", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rgspectra(&["experiment", "drift", "--n", "8", "--p", "1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rgspectra(&["experiment", "drift", "--config", "/nonexistent/x.conf"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rgspectra(&["energy", "--graph", "/nonexistent/g.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(rgspectra(&["bogus"]).status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    let out = dir.path().join("runs/out.csv");
    fs::write(
        &conf,
        format!(
            "# drift run\nkind = drift\nn = 32\np = 0.5\ntrials = 2\nseed = 4\nout = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let o = rgspectra(&[
        "experiment",
        "--config",
        conf.to_str().unwrap(),
        "--trials",
        "5",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 6);
    let summary: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("runs/out.summary.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(summary["config"]["trials"], 5);
    assert_eq!(summary["master_seed"], 4);
}
