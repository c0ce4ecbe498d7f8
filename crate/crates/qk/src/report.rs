//! Machine-readable command reports.
//!
//! Objects are emitted with sorted keys and no timing data, so the same
//! command on the same input and seed always produces the same bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub tool_version: String,
    /// Subcommand and its normalized options; file paths are left out.
    pub command: String,
    /// SHA-256 of the canonical input: the edge list for file commands, the
    /// generated edge list for `gen`, the serialized configuration otherwise.
    pub input_digest: String,
    pub result: Value,
}

impl JsonReport {
    pub fn new(command: String, input_digest: String, result: &impl Serialize) -> serde_json::Result<Self> {
        Ok(JsonReport {
            tool_version: TOOL_VERSION.to_string(),
            command,
            input_digest,
            result: serde_json::to_value(result)?,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> serde_json::Result<String> {
        // `Value` maps are ordered by key, so converting first sorts every level.
        let mut s = serde_json::to_string_pretty(&serde_json::to_value(self)?)?;
        s.push('\n');
        Ok(s)
    }

    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Digest of a serializable configuration, through its sorted-key JSON form.
pub fn config_digest(cfg: &impl Serialize) -> serde_json::Result<String> {
    use sha2::{Digest, Sha256};
    let canonical = serde_json::to_string(&serde_json::to_value(cfg)?)?;
    Ok(hex::encode(Sha256::digest(canonical.as_bytes())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn keys_are_sorted_at_every_level() {
        let mut inner = HashMap::new();
        for key in ["zeta", "alpha", "mid"] {
            inner.insert(key, 1);
        }
        let r = JsonReport::new("x".into(), "d".into(), &inner).unwrap();
        let text = r.render().unwrap();
        let order: Vec<usize> =
            ["\"command\"", "\"input_digest\"", "\"result\"", "\"alpha\"", "\"mid\"", "\"zeta\"", "\"tool_version\""]
                .iter()
                .map(|k| text.find(k).unwrap())
                .collect();
        assert!(order[..3].windows(2).all(|w| w[0] < w[1]));
        assert!(order[3..6].windows(2).all(|w| w[0] < w[1]));
        assert!(order[5] < order[6]);
        assert_eq!(JsonReport::parse(&text).unwrap(), r);
    }

    #[test]
    fn config_digest_ignores_field_order() {
        #[derive(Serialize)]
        struct A {
            x: u32,
            y: u32,
        }
        #[derive(Serialize)]
        struct B {
            y: u32,
            x: u32,
        }
        assert_eq!(config_digest(&A { x: 1, y: 2 }).unwrap(), config_digest(&B { y: 2, x: 1 }).unwrap());
    }
}
