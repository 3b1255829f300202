//! The JSON report envelope and its canonical serialization.

use serde::Serialize;
use serde_json::ser::{PrettyFormatter, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

pub const TOOL_NAME: &str = "segre";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for Tool {
    fn default() -> Self {
        Tool {
            name: TOOL_NAME,
            version: TOOL_VERSION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub code: &'static str,
    pub message: String,
}

impl Warning {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        Warning {
            code,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// The computation succeeded but the checked identity or verdict is
    /// negative.
    Negative,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub tool: Tool,
    pub job: Value,
    pub result: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traces: Option<Value>,
    pub warnings: Vec<Warning>,
}

pub fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Inconsistent(format!("serialization: {e}")))
}

/// Keys sorted at every level; `indent == 0` gives one line.
pub fn canonical_json<T: Serialize>(v: &T, indent: usize) -> Result<String> {
    // `Value` objects are BTreeMaps, so going through `Value` sorts keys.
    let value = to_value(v)?;
    let mut out = Vec::new();
    let written = if indent == 0 {
        serde_json::to_writer(&mut out, &value)
    } else {
        let pad = vec![b' '; indent];
        let mut ser = Serializer::with_formatter(&mut out, PrettyFormatter::with_indent(&pad));
        value.serialize(&mut ser)
    };
    written.map_err(|e| Error::Inconsistent(format!("serialization: {e}")))?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::Inconsistent(e.to_string()))
}
