//! Structured command output: a stable envelope around per-command bodies.
//! Everything except `timestamp` is deterministic for a fixed scenario and
//! command.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::scenario::Scenario;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub command: String,
    pub scenario_name: String,
    /// sha-256 of the canonical scenario JSON
    pub scenario_hash: String,
    /// seconds since the epoch; excluded from determinism comparisons
    pub timestamp: u64,
    pub body: serde_json::Value,
}

pub fn scenario_hash(scenario: &Scenario) -> Result<String> {
    let canonical = serde_json::to_string(scenario)?;
    let digest = Sha256::digest(canonical.as_bytes());
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

pub fn report(command: &str, scenario: &Scenario, body: serde_json::Value) -> Result<Report> {
    Ok(Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        scenario_name: scenario.name.clone(),
        scenario_hash: scenario_hash(scenario)?,
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        body,
    })
}

/// Equality modulo the timestamp field.
pub fn reports_equal(a: &Report, b: &Report) -> bool {
    let mut a = a.clone();
    let mut b = b.clone();
    a.timestamp = 0;
    b.timestamp = 0;
    serde_json::to_string(&a).ok() == serde_json::to_string(&b).ok()
}
