use std::fs;
use std::time::Instant;

use argshift::verifier::{AlgebraDescriptor, Verdict};
use serde::Serialize;
use serde_json::Value;

use crate::{CliError, CommonArgs, EXIT_FAIL, EXIT_PASS};

/// The run settings echoed into every report. Thread count and output paths
/// are left out so that reports compare byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Config {
    pub command: &'static str,
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub seed: u64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

impl Config {
    pub fn new(command: &'static str, algebra: &crate::AlgebraArgs, common: &CommonArgs) -> Self {
        Config {
            command,
            cartan_type: algebra.cartan_type.to_string(),
            rank: algebra.rank as usize,
            shift: None,
            orbit: None,
            trials: None,
            samples: None,
            seed: common.seed,
            tolerance: common.tolerance,
            mode: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<T, D> {
    pub config: Config,
    pub algebra: AlgebraDescriptor,
    pub trials: Vec<T>,
    pub details: D,
    pub verdict: Verdict,
    pub elapsed_ms: Option<u64>,
    pub version: &'static str,
}

impl<T: Serialize, D: Serialize> Report<T, D> {
    pub fn new(config: Config, algebra: AlgebraDescriptor, trials: Vec<T>, details: D, passed: bool) -> Self {
        Report {
            config,
            algebra,
            trials,
            details,
            verdict: if passed { Verdict::Pass } else { Verdict::Fail },
            elapsed_ms: None,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    /// Writes the JSON (and CSV) report, prints `summary`, and returns the exit code.
    pub fn emit(mut self, common: &CommonArgs, started: Instant, summary: &[String]) -> Result<i32, CliError> {
        if common.timing {
            self.elapsed_ms = Some(started.elapsed().as_millis() as u64);
        }
        let json = serde_json::to_string_pretty(&self).map_err(|e| CliError::Usage(e.to_string()))? + "\n";
        match &common.output {
            Some(path) => {
                fs::write(path, &json)?;
                for line in summary {
                    println!("{line}");
                }
            }
            None => {
                for line in summary {
                    eprintln!("{line}");
                }
                print!("{json}");
            }
        }
        if let Some(path) = &common.csv {
            write_csv(path, &self.trials)?;
        }
        Ok(match self.verdict {
            Verdict::Pass => EXIT_PASS,
            Verdict::Fail => EXIT_FAIL,
        })
    }
}

fn flatten(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(flatten).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

/// One row per trial, columns in sorted key order, nested values joined by `;`.
fn write_csv<T: Serialize>(path: &std::path::Path, trials: &[T]) -> Result<(), CliError> {
    let csv_err = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    let mut header_written = false;
    for trial in trials {
        let Value::Object(map) = serde_json::to_value(trial).map_err(|e| CliError::Usage(e.to_string()))? else {
            continue;
        };
        if !header_written {
            w.write_record(map.keys()).map_err(csv_err)?;
            header_written = true;
        }
        w.write_record(map.values().map(flatten)).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn pair(z: argshift::Complex64) -> [f64; 2] {
    [z.re, z.im]
}
