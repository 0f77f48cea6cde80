//! Run manifests: enough to replay a command and check that the replay
//! produced the same result.

use serde_json::{json, Map, Value};

use crate::io::digest64;

/// Keys that legitimately differ between runs; dropped before hashing.
pub const VOLATILE_KEYS: [&str; 2] = ["wall_time_ms", "nodes"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunManifest {
    pub command: Vec<String>,
    /// digest of the input family file, if the command read one
    pub input_digest: Option<String>,
    pub seeds: Vec<u64>,
    pub version: String,
    pub wall_time_ms: u64,
    pub result_digest: String,
}

impl RunManifest {
    pub fn new(command: Vec<String>, input_digest: Option<String>, seeds: Vec<u64>, result: &Value, wall_time_ms: u64) -> Self {
        RunManifest {
            command,
            input_digest,
            seeds,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms,
            result_digest: result_digest(result),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "seeds": self.seeds,
            "version": self.version,
            "wall_time_ms": self.wall_time_ms,
            "result_digest": self.result_digest,
        })
    }
}

/// Copy of `v` with every [`VOLATILE_KEYS`] entry removed, at any depth.
pub fn stable_view(v: &Value) -> Value {
    match v {
        Value::Object(map) => Value::Object(
            map.iter()
                .filter(|(k, _)| !VOLATILE_KEYS.contains(&k.as_str()))
                .map(|(k, v)| (k.clone(), stable_view(v)))
                .collect::<Map<_, _>>(),
        ),
        Value::Array(items) => Value::Array(items.iter().map(stable_view).collect()),
        other => other.clone(),
    }
}

pub fn result_digest(result: &Value) -> String {
    digest64(stable_view(result).to_string().as_bytes())
}
