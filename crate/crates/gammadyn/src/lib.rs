//! JSON front end, reports and parallel search for `gammadyn-core`.
//!
//! A request names a command, carries that command's JSON payload and
//! optional bounds; [`run`] validates the payload, runs the analysis and
//! returns an [`AnalysisReport`] whose verdicts each carry a certificate or
//! the bounds of the search that left them open.
//!
//! ```
//! use gammadyn::{run, AnalysisRequest, Command, OptionOverrides};
//!
//! let request = AnalysisRequest {
//!     command: Command::H1,
//!     payload: Some(serde_json::json!({
//!         "presentation": {"generators": 1, "relators": []},
//!         "action": {"modulus": 3, "rank": 1, "matrices": [[[1]]]},
//!     })),
//!     options: OptionOverrides::default(),
//! };
//! let report = run(&request).unwrap();
//! assert_eq!(report.results["h1"]["order"], "3");
//! ```

use std::fmt;
use std::time::Instant;

use gammadyn_core::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

mod analysis;
pub mod encode;
pub mod input;
pub mod parallel;
pub mod report;

pub use input::Rational;
pub use report::{AnalysisReport, Certificate, Status, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Toral,
    H1,
    Invert,
    Shift,
    PaperExample,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Toral => "toral",
            Command::H1 => "h1",
            Command::Invert => "invert",
            Command::Shift => "shift",
            Command::PaperExample => "paper-example",
        }
    }
}

pub const DEFAULT_NORM_BOUND: u64 = 20;
pub const DEFAULT_ORBIT_CAP: usize = 10_000;
pub const DEFAULT_SEARCH_DEPTH: usize = 8;
pub const DEFAULT_EPSILON: &str = "1/1000000";

/// Effective bounds of a run, echoed in the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub norm_bound: u64,
    pub orbit_cap: usize,
    pub search_depth: usize,
    pub epsilon: Rational,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            norm_bound: DEFAULT_NORM_BOUND,
            orbit_cap: DEFAULT_ORBIT_CAP,
            search_depth: DEFAULT_SEARCH_DEPTH,
            epsilon: Rational(input::parse_rational(DEFAULT_EPSILON).expect("literal")),
        }
    }
}

/// Bounds given explicitly, e.g. on the command line. They take precedence
/// over bounds in the payload, which take precedence over the defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OptionOverrides {
    pub norm_bound: Option<u64>,
    pub orbit_cap: Option<usize>,
    pub search_depth: Option<usize>,
    pub epsilon: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisRequest {
    pub command: Command,
    /// Not needed by `paper-example`.
    pub payload: Option<Value>,
    pub options: OptionOverrides,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    BadInput,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunError {
    pub kind: ErrorKind,
    pub message: String,
}

impl RunError {
    pub fn bad_input(message: impl Into<String>) -> Self {
        RunError {
            kind: ErrorKind::BadInput,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        RunError {
            kind: ErrorKind::Internal,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::BadInput => 2,
            ErrorKind::Internal => 3,
        }
    }

    /// `{"error": {"kind": ..., "message": ..., "exit_code": ...}}`
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "error": {
                "kind": match self.kind {
                    ErrorKind::BadInput => "bad_input",
                    ErrorKind::Internal => "internal",
                },
                "message": self.message,
                "exit_code": self.exit_code(),
            }
        })
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for RunError {}

impl From<gammadyn_core::Error> for RunError {
    fn from(e: gammadyn_core::Error) -> Self {
        match e {
            gammadyn_core::Error::Domain(m) => RunError::bad_input(m),
            gammadyn_core::Error::Internal(m) => RunError::internal(m),
        }
    }
}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        RunError::bad_input(format!("invalid payload: {e}"))
    }
}

fn input_hash(command: Command, payload: &Option<Value>, options: &Options) -> String {
    let canonical = serde_json::json!({
        "command": command.name(),
        "payload": payload,
        "options": options,
    });
    let digest = Sha256::digest(canonical.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs one request. The report is deterministic apart from
/// `wall_time_us`.
pub fn run(request: &AnalysisRequest) -> Result<AnalysisReport, RunError> {
    let start = Instant::now();
    let mut report = analysis::dispatch(request, input_hash)?;
    report.wall_time_us = start.elapsed().as_micros() as u64;
    report
        .validate()
        .map_err(|e| RunError::internal(format!("malformed report: {e}")))?;
    Ok(report)
}
