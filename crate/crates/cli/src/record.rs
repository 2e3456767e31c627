//! Machine-readable record of one engine run.

use serde::Serialize;

use cycledecomp::engine::{Diagnostic, EngineConfig, Outcome};

#[derive(Debug, Serialize)]
pub struct RunRecord {
    pub command: String,
    /// Arguments after the program name, verbatim.
    pub args: Vec<String>,
    pub config: EngineConfig,
    pub seed: u64,
    pub outcome: OutcomeRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    pub log: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct OutcomeRecord {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason_kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<Diagnostic>,
}

impl OutcomeRecord {
    pub fn of(outcome: &Outcome) -> Self {
        let mut r = OutcomeRecord {
            kind: outcome.kind(),
            cycles: None,
            reason: None,
            reason_kind: None,
            diagnostic: None,
        };
        match outcome {
            Outcome::Certificate(d) => r.cycles = Some(d.len()),
            Outcome::Nonexistence(why) => {
                r.reason = Some(why.to_string());
                r.reason_kind = Some(why.kind());
            }
            Outcome::Diagnostic(d) => r.diagnostic = Some(d.clone()),
        }
        r
    }
}

impl RunRecord {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serialises");
        s.push('\n');
        s
    }
}
