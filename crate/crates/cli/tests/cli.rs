use std::process::Command;

mod common;
use common::{parse, run_report, BIN};

#[test]
fn verify_nilpotent_example() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_report(
        dir.path(),
        "v",
        &[
            "verify",
            "--type",
            "A",
            "--rank",
            "2",
            "--shift",
            "nilpotent",
            "--orbit",
            "nilpotent",
            "--trials",
            "20",
            "--seed",
            "42",
        ],
    );
    assert_eq!(code, 0);
    let report = parse(&text);
    let trials = report["trials"].as_array().unwrap();
    assert_eq!(trials.len(), 20);
    assert!(trials.iter().all(|t| t["rank"] == 3 && t["expected"] == 3));
    assert_eq!(report["verdict"], "pass");
    assert!(report["elapsed_ms"].is_null());
}

#[test]
fn report_keys_in_stable_order() {
    let dir = tempfile::tempdir().unwrap();
    let (_, text) = run_report(dir.path(), "v", &["verify", "--type", "A", "--rank", "1", "--trials", "2"]);
    let positions: Vec<usize> =
        ["\"config\"", "\"algebra\"", "\"trials\"", "\"verdict\"", "\"elapsed_ms\"", "\"version\""]
            .iter()
            .map(|k| text.find(&format!("\n  {k}")).unwrap_or_else(|| panic!("missing {k}")))
            .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
}

#[test]
fn sl2_prints_coefficients_and_containment() {
    let out = Command::new(BIN).args(["sl2", "--type", "A", "--rank", "2", "--output", "/dev/null"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("c_alpha1 = 2"));
    assert!(stdout.contains("c_alpha2 = 2"));
    assert!(stdout.contains("Lemma containment: PASS"));
}

#[test]
fn unsupported_type_is_a_usage_error() {
    let out = Command::new(BIN).args(["verify", "--type", "D", "--rank", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported type"));
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        vec!["verify", "--type", "A", "--rank", "7"],
        vec!["verify", "--type", "A", "--rank", "2", "--tolerance", "0.5"],
        vec!["verify", "--type", "A", "--rank", "2", "--tolerance", "0"],
        vec!["verify", "--type", "A", "--rank", "2", "--trials", "0"],
        vec!["verify", "--type", "A", "--rank", "2", "--shift", "regular"],
        vec!["frobnicate"],
    ] {
        let mut argv = vec!["argshift"];
        argv.extend(&args);
        assert_eq!(argshift_cli::run(argv), 2, "{args:?}");
    }
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |env: Option<&str>, name: &str| {
        let path = dir.path().join(name);
        let mut cmd = Command::new(BIN);
        cmd.args(["verify", "--type", "A", "--rank", "2", "--trials", "3", "--output"]).arg(&path);
        cmd.env_remove("ARGSHIFT_SEED");
        if let Some(seed) = env {
            cmd.env("ARGSHIFT_SEED", seed);
        }
        assert_eq!(cmd.status().unwrap().code(), Some(0));
        parse(&std::fs::read_to_string(path).unwrap())
    };
    assert_eq!(run(None, "a.json")["config"]["seed"], 42);
    assert_eq!(run(Some("7"), "b.json")["config"]["seed"], 7);
}

#[test]
fn csv_has_one_row_per_trial() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let code = argshift_cli::run([
        "argshift",
        "verify",
        "--type",
        "B",
        "--rank",
        "2",
        "--trials",
        "4",
        "--output",
        dir.path().join("t.json").to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_path(csv).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "rank"));
    let rows: Vec<_> = reader.records().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows.len(), 4);
}

#[test]
fn timing_fills_elapsed() {
    let dir = tempfile::tempdir().unwrap();
    let (_, text) = run_report(dir.path(), "t", &["selftest", "--type", "A", "--rank", "1", "--timing"]);
    assert!(parse(&text)["elapsed_ms"].is_u64());
}

#[test]
fn dump_constants_writes_tensor() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let (code, _) = run_report(
        dir.path(),
        "s",
        &["selftest", "--type", "A", "--rank", "1", "--dump-constants", path.to_str().unwrap()],
    );
    assert_eq!(code, 0);
    let tensor = parse(&std::fs::read_to_string(path).unwrap());
    assert_eq!(tensor["n"], 3);
    // [e, f] = h0 with basis order (e, f, h0)
    let constants = tensor["constants"].as_array().unwrap();
    assert!(constants.iter().any(|c| c == &serde_json::json!([0, 1, 2, 1, 1])));
}
