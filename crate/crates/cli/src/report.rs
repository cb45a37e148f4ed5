//! Report schema v1.
//!
//! Every command emits one [`Report`]. Apart from `timing`, the JSON form is
//! a pure function of the command line and seed; object keys are sorted.

use repdim::bounds::Citation;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The command succeeded but some requested quantity is unavailable,
    /// e.g. a bound with no known upper half.
    Partial,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandEcho {
    pub subcommand: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: CommandEcho,
    pub seed: u64,
    pub status: Status,
    pub payload: Value,
    pub citations: Vec<Citation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: CommandEcho, seed: u64, status: Status, payload: Value, citations: Vec<Citation>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: Tool { name: "repdim", version: env!("CARGO_PKG_VERSION") },
            command,
            seed,
            status,
            payload,
            citations,
            timing: None,
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// Pretty JSON; `timing` is dropped unless `with_timing`.
    pub fn to_json(&self, with_timing: bool) -> String {
        let mut v = self.to_value();
        if !with_timing {
            v.as_object_mut().expect("object").remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }

    /// One `path: value` line per JSON leaf.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        flatten("", &self.to_value(), &mut out);
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(xs) if !xs.is_empty() => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

pub fn cite(claim: impl Into<String>, source: impl Into<String>) -> Citation {
    Citation { claim: claim.into(), source: source.into() }
}
