//! Run reports written by `--report`.

use serde_json::{json, Value};

use crate::pipeline::Timings;

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: &'static str,
    /// SHA-256 of the input file, hex encoded; empty for generated inputs.
    pub input_sha256: String,
    pub algorithm: Option<&'static str>,
    pub timings: Timings,
    pub payload: Value,
    /// `None` when no verification ran.
    pub verified: Option<bool>,
    /// Exactly what goes to stdout.
    pub output: String,
}

impl RunReport {
    pub fn new(command: &'static str, input_sha256: String, algorithm: Option<&'static str>) -> Self {
        Self {
            command,
            input_sha256,
            algorithm,
            timings: Timings::default(),
            payload: Value::Null,
            verified: None,
            output: String::new(),
        }
    }

    pub fn to_value(&self) -> Value {
        let timings: serde_json::Map<String, Value> = self
            .timings
            .phases()
            .iter()
            .map(|(k, d)| (k.to_string(), json!(d.as_secs_f64() * 1e3)))
            .collect();
        json!({
            "command": self.command,
            "input_sha256": self.input_sha256,
            "algorithm": self.algorithm,
            "timings_ms": timings,
            "payload": self.payload,
            "verified": self.verified,
        })
    }
}

