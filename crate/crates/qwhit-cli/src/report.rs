//! Verification reports and the three output formats.

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// One verification check: what ran, with which parameters, and how it ended.
/// `residual` is populated exactly when the check failed; `message` exactly
/// when it errored before producing a verdict. `table` carries structured
/// numeric data (per-k deviation tables) for the degeneration checks.
pub struct Report {
    pub check: String,
    pub params: Value,
    pub status: Status,
    pub residual: Option<String>,
    pub message: Option<String>,
    pub table: Option<Value>,
    pub wall_ms: f64,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "check": self.check,
            "params": self.params,
            "status": self.status.as_str(),
            "wall_ms": round_ms(self.wall_ms),
        });
        let map = obj.as_object_mut().expect("object literal");
        if let Some(r) = &self.residual {
            map.insert("residual".into(), Value::String(r.clone()));
        }
        if let Some(m) = &self.message {
            map.insert("message".into(), Value::String(m.clone()));
        }
        if let Some(t) = &self.table {
            map.insert("deviations".into(), t.clone());
        }
        obj
    }
}

fn round_ms(ms: f64) -> f64 {
    (ms * 1000.0).round() / 1000.0
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Prints every report to stdout in the chosen format and returns the process
/// exit code: 0 only when every check passed.
pub fn emit(reports: &[Report], format: OutputFormat) -> i32 {
    match format {
        OutputFormat::Json => {
            let arr: Vec<Value> = reports.iter().map(Report::to_json).collect();
            println!("{}", serde_json::to_string_pretty(&Value::Array(arr)).expect("serialize"));
        }
        OutputFormat::Csv => {
            println!("check,status,wall_ms,params,residual");
            for r in reports {
                println!(
                    "{},{},{},{},{}",
                    csv_field(&r.check),
                    r.status.as_str(),
                    round_ms(r.wall_ms),
                    csv_field(&r.params.to_string()),
                    csv_field(r.residual.as_deref().or(r.message.as_deref()).unwrap_or("")),
                );
            }
        }
        OutputFormat::Pretty => {
            for r in reports {
                let tag = match r.status {
                    Status::Pass => "PASS ",
                    Status::Fail => "FAIL ",
                    Status::Error => "ERROR",
                };
                println!("{tag} {:<24} {} ({:.1} ms)", r.check, compact_params(&r.params), r.wall_ms);
                if let Some(m) = &r.message {
                    println!("      message: {m}");
                }
                if let Some(res) = &r.residual {
                    println!("      residual: {res}");
                }
                if let Some(t) = &r.table {
                    print_table(t);
                }
            }
            let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
            let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
            let errored = reports.len() - passed - failed;
            let total_ms: f64 = reports.iter().map(|r| r.wall_ms).sum();
            println!(
                "{} checks: {passed} passed, {failed} failed, {errored} errored ({:.1} ms)",
                reports.len(),
                total_ms
            );
        }
    }
    if reports.iter().all(|r| r.status == Status::Pass) {
        0
    } else {
        1
    }
}

fn compact_params(v: &Value) -> String {
    match v.as_object() {
        Some(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        None => v.to_string(),
    }
}

fn print_table(t: &Value) {
    let (Some(ks), Some(devs)) = (
        t.get("k").and_then(Value::as_array),
        t.get("sup_deviation").and_then(Value::as_array),
    ) else {
        println!("      {t}");
        return;
    };
    for (k, d) in ks.iter().zip(devs) {
        println!("      k={k}: deviation {d}");
    }
}
