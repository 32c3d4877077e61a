//! Versioned JSON envelope shared by every subcommand.

use std::time::{Duration, SystemTime, UNIX_EPOCH};

use mvrho::{EfficiencyReport, ExperimentResult, GapRow, PowerCurve, StatValue, Standardized};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub command: String,
    /// Fully resolved flags, defaults included.
    pub config: serde_json::Value,
    pub timestamp: String,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum Payload {
    Stat(StatReport),
    Efficiency(Vec<EfficiencyEntry>),
    Simulation(Vec<ExperimentResult>),
    UGap(Vec<GapRow>),
    Green(GreenReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatReport {
    pub n: usize,
    pub m: usize,
    pub ties: String,
    pub statistics: Vec<StatValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standardized_s: Option<Standardized>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyEntry {
    pub report: EfficiencyReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<PowerCurve>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub subset: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDump {
    pub points_per_axis: usize,
    pub name: String,
    /// Rows `(x_1, …, x_m, Ω(x))`.
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreenReport {
    pub m: usize,
    pub family: Vec<String>,
    pub coefficients: Vec<Coefficient>,
    pub measure: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal: Option<GridDump>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upset_count: Option<u64>,
}

/// RFC 3339 time, taken from `SOURCE_DATE_EPOCH` when set so that reports
/// can be reproduced byte for byte.
pub fn timestamp() -> String {
    let now = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .map(|secs| UNIX_EPOCH + Duration::from_secs(secs))
        .unwrap_or_else(SystemTime::now);
    humantime::format_rfc3339_seconds(now).to_string()
}

impl ReportEnvelope {
    pub fn new(command: &str, config: serde_json::Value, payload: Payload) -> Self {
        Self {
            tool: "mvrho".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            config,
            timestamp: timestamp(),
            payload,
        }
    }
}
