//! The report schema shared by every command.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::Options;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Every verdict was decided.
    Ok,
    /// At least one verdict is `unknown` within the search bounds.
    Unknown,
}

/// One decision. It points at the certificate that proves it, or carries
/// the bounds of the search that failed to decide it, or both.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub id: usize,
    /// Key of the verdict in [`AnalysisReport::verdicts`].
    pub verdict: String,
    pub kind: String,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub command: String,
    pub status: Status,
    pub tool_version: String,
    /// SHA-256 of the canonical JSON of command, payload and options.
    pub input_sha256: String,
    pub options: Options,
    pub verdicts: BTreeMap<String, Verdict>,
    pub certificates: Vec<Certificate>,
    pub results: Map<String, Value>,
    pub wall_time_us: u64,
}

impl AnalysisReport {
    pub(crate) fn new(command: &str, input_sha256: String, options: Options) -> Self {
        AnalysisReport {
            command: command.to_string(),
            status: Status::Ok,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_sha256,
            options,
            verdicts: BTreeMap::new(),
            certificates: Vec::new(),
            results: Map::new(),
            wall_time_us: 0,
        }
    }

    pub(crate) fn certified(&mut self, key: &str, outcome: &str, kind: &str, data: Value) {
        let id = self.certificates.len();
        self.certificates.push(Certificate {
            id,
            verdict: key.to_string(),
            kind: kind.to_string(),
            data,
        });
        self.verdicts.insert(
            key.to_string(),
            Verdict {
                outcome: outcome.to_string(),
                certificate: Some(id),
                bounds: None,
            },
        );
    }

    pub(crate) fn bounded(&mut self, key: &str, outcome: &str, bounds: Value) {
        if outcome == "unknown" {
            self.status = Status::Unknown;
        }
        self.verdicts.insert(
            key.to_string(),
            Verdict {
                outcome: outcome.to_string(),
                certificate: None,
                bounds: Some(bounds),
            },
        );
    }

    pub(crate) fn attach_bounds(&mut self, key: &str, bounds: Value) {
        if let Some(v) = self.verdicts.get_mut(key) {
            v.bounds = Some(bounds);
        }
    }

    pub(crate) fn result(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    /// Checks the structural invariants: every verdict has a certificate or
    /// search bounds, certificate ids are positions, links go both ways, and
    /// the status agrees with the outcomes.
    pub fn validate(&self) -> Result<(), String> {
        for (i, c) in self.certificates.iter().enumerate() {
            if c.id != i {
                return Err(format!("certificate {i} has id {}", c.id));
            }
            if !self.verdicts.contains_key(&c.verdict) {
                return Err(format!("certificate {i} refers to missing verdict {:?}", c.verdict));
            }
        }
        for (key, v) in &self.verdicts {
            match v.certificate {
                Some(id) if id >= self.certificates.len() || self.certificates[id].verdict != *key => {
                    return Err(format!("verdict {key:?} points at a foreign certificate {id}"));
                }
                None if v.bounds.is_none() => {
                    return Err(format!("verdict {key:?} has neither certificate nor bounds"));
                }
                _ => {}
            }
            if v.outcome == "unknown" && v.bounds.is_none() {
                return Err(format!("unknown verdict {key:?} does not state its bounds"));
            }
        }
        let unknown = self.verdicts.values().any(|v| v.outcome == "unknown");
        if unknown != (self.status == Status::Unknown) {
            return Err("status does not match the verdicts".to_string());
        }
        Ok(())
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Unknown => 1,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
