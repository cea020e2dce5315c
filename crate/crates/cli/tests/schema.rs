mod common;
use common::{parse, run_report};

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/report.schema.json");
    jsonschema::JSONSchema::compile(&serde_json::from_str(text).unwrap()).expect("schema compiles")
}

#[test]
fn every_command_validates() {
    let schema = schema();
    let dir = tempfile::tempdir().unwrap();
    let runs: [(&str, &[&str]); 8] = [
        ("verify", &["verify", "--type", "A", "--rank", "2", "--trials", "3"]),
        (
            "verify-exact",
            &["verify", "--type", "A", "--rank", "2", "--trials", "2", "--mode", "exact", "--shift", "mixed"],
        ),
        ("sl2", &["sl2", "--type", "C", "--rank", "2"]),
        ("slice", &["slice", "--type", "A", "--rank", "2", "--orbits", "2"]),
        ("slice-zero", &["slice", "--type", "B", "--rank", "2", "--zero"]),
        ("singular", &["probe-singular", "--type", "A", "--rank", "2", "--samples", "4", "--generic", "10"]),
        ("regularity", &["probe-slice-regularity", "--type", "B", "--rank", "2", "--samples", "10"]),
        ("selftest", &["selftest", "--type", "A", "--rank", "2", "--timing"]),
    ];
    for (name, args) in runs {
        let (code, text) = run_report(dir.path(), name, args);
        assert_eq!(code, 0, "{name}");
        let report = parse(&text);
        let msgs: Vec<String> = match schema.validate(&report) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
        };
        assert!(msgs.is_empty(), "{name}: {msgs:?}");
    }
}

#[test]
fn schema_rejects_malformed_reports() {
    let schema = schema();
    let dir = tempfile::tempdir().unwrap();
    let (_, text) = run_report(dir.path(), "v", &["verify", "--type", "A", "--rank", "1", "--trials", "1"]);
    let good = parse(&text);
    assert!(schema.is_valid(&good));

    let mut bad = good.clone();
    bad["verdict"] = "maybe".into();
    assert!(!schema.is_valid(&bad));
    let mut bad = good.clone();
    bad["trials"][0].as_object_mut().unwrap().remove("rank");
    assert!(!schema.is_valid(&bad));
    let mut bad = good;
    bad["algebra"]["type"] = "D".into();
    assert!(!schema.is_valid(&bad));
}
