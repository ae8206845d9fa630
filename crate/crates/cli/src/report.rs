//! JSON run reports. Every subcommand emits one; every value that
//! affects the numerical result appears in it, and nothing
//! time-dependent does, so identical invocations produce identical
//! reports.

use std::fs;
use std::path::Path;

use serde::Serialize;

use pogs::pattern::GroupPattern;
use pogs::signalgen::SimConfig;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct PatternReport {
    pub kind: &'static str,
    /// Stored weight layout as a 0/1 string.
    pub bits: String,
    pub group_len: usize,
    pub active_count: usize,
    pub stored_len: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ones_per_period: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeros_per_period: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periods: Option<usize>,
}

impl PatternReport {
    pub fn new(pattern: &GroupPattern) -> Self {
        let kind = match pattern.layout() {
            Some(layout) if layout.periods == 1 && layout.zeros_per_period == 0 => "contiguous",
            Some(_) => "periodic",
            None => "explicit",
        };
        PatternReport {
            kind,
            bits: pattern
                .bits()
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect(),
            group_len: pattern.group_len(),
            active_count: pattern.active_count(),
            stored_len: pattern.stored_len(),
            ones_per_period: pattern.layout().map(|l| l.ones_per_period),
            zeros_per_period: pattern.layout().map(|l| l.zeros_per_period),
            periods: pattern.layout().map(|l| l.periods),
        }
    }
}

#[derive(Serialize)]
pub struct SolveReport {
    pub fs: f64,
    pub penalty: String,
    pub lambda: f64,
    pub auto_lambda: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_estimate: Option<f64>,
    pub nonconvexity: f64,
    pub convexity_bound_ok: bool,
    pub pattern: PatternReport,
    pub tol: f64,
    pub max_iters: usize,
    pub support_eps: f64,
    pub iterations: usize,
    pub converged: bool,
    pub final_objective: f64,
}

#[derive(Serialize)]
pub struct DenoiseReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub input: String,
    pub output: String,
    #[serde(flatten)]
    pub solve: SolveReport,
}

#[derive(Serialize)]
pub struct CompoundRunReport {
    pub fault_freq: f64,
    pub output: String,
    pub envelope_spectrum: String,
    #[serde(flatten)]
    pub solve: SolveReport,
}

#[derive(Serialize)]
pub struct CompoundReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub input: String,
    pub runs: Vec<CompoundRunReport>,
}

#[derive(Serialize)]
pub struct SimulateReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub config: SimConfig,
    pub generator: &'static str,
    pub n_samples: usize,
    pub n_transients: usize,
    pub out_clean: String,
    pub out_noisy: String,
    pub out_labels: String,
}

#[derive(Serialize)]
pub struct EstimateNoiseReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub input: String,
    pub sigma_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periods: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ones_per_period: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

#[derive(Serialize)]
pub struct EvaluateReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub estimate: String,
    pub clean: String,
    pub labels: String,
    pub rmse: f64,
    pub auc: f64,
    pub n_thresholds: usize,
    pub thresholds: Vec<f64>,
    pub false_alarm: Vec<f64>,
    pub detection: Vec<f64>,
}

#[derive(Serialize)]
pub struct SpectrumReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub input: String,
    pub out: String,
    pub mode: &'static str,
    pub fs: f64,
    pub n_samples: usize,
    pub n_bins: usize,
    pub smooth_width: usize,
    pub peak_freq_hz: f64,
    pub peak_magnitude: f64,
}

#[derive(Serialize)]
pub struct OrdersReport {
    pub ftf: f64,
    pub bpfo: f64,
    pub bpfi: f64,
    pub bsf: f64,
}

#[derive(Serialize)]
pub struct FaultFreqsReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub shaft_freq_hz: f64,
    pub orders: OrdersReport,
    pub frequencies_hz: OrdersReport,
}

/// Writes the report to `dest` when given, otherwise prints it.
pub fn emit<T: Serialize>(report: &T, dest: Option<&Path>) -> anyhow::Result<()> {
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    match dest {
        Some(path) => fs::write(path, json)?,
        None => print!("{json}"),
    }
    Ok(())
}
