use std::path::{Path, PathBuf};

use serde_json::Value;

#[allow(dead_code)]
pub const BIN: &str = env!("CARGO_BIN_EXE_argshift");

/// Runs the command in-process with `--output <dir>/<name>.json` appended and
/// returns the exit code and the report.
pub fn run_report(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let path: PathBuf = dir.join(format!("{name}.json"));
    let mut argv = vec!["argshift".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--output".into());
    argv.push(path.display().to_string());
    let code = argshift_cli::run(argv);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    (code, text)
}

pub fn parse(text: &str) -> Value {
    serde_json::from_str(text).expect("report is valid JSON")
}
