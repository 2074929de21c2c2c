use pbforge::checker::Stats;
use serde::Serialize;
use std::collections::BTreeMap;

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

/// Machine-readable summary of one command run, printed with `--json`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Vec<String>,
    pub result: String,
    pub detail: String,
    pub exit_code: i32,
    /// Time spent in the checker (or oracle), excluding formula parsing.
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<ReportStats>,
}

#[derive(Debug, Serialize)]
pub struct ReportStats {
    pub steps_replayed: u64,
    pub constraints_created: u64,
    pub constraints_deleted: u64,
    pub max_live: usize,
    pub rule_counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_line: Option<usize>,
}

impl ReportStats {
    pub fn from_checker(s: &Stats, failed_line: Option<usize>) -> ReportStats {
        ReportStats {
            steps_replayed: s.steps_replayed,
            constraints_created: s.constraints_created,
            constraints_deleted: s.constraints_deleted,
            max_live: s.max_live,
            rule_counts: s.rule_counts.clone(),
            failed_line,
        }
    }
}

impl RunReport {
    pub fn new(command: &str, inputs: Vec<String>) -> RunReport {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            inputs,
            result: String::new(),
            detail: String::new(),
            exit_code: 0,
            wall_time_ms: 0.0,
            stats: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
