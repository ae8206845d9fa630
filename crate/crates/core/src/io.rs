//! Text persistence for signals and label metadata.
//!
//! Signals are single-column CSV with an optional `# fs=<Hz>` header and
//! one sample per line, rendered with round-trip-exact decimal formatting
//! so `parse(write(s)) == s` bit for bit. Labels are versioned JSON;
//! unknown fields are rejected on read.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::TransientLabels;
use crate::signalgen::SimConfig;

/// Schema version stamped into every JSON artifact this module writes.
pub const SCHEMA_VERSION: u32 = 1;

/// A signal with the metadata needed to interpret it.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalFile {
    pub samples: Vec<f64>,
    pub fs: f64,
    pub channel_name: Option<String>,
}

/// Reads a signal file. `fs_override` wins over the file header; if
/// neither supplies a sampling rate the read fails.
pub fn read_signal(path: &Path, fs_override: Option<f64>) -> Result<SignalFile> {
    read_signal_from(BufReader::new(File::open(path)?), fs_override)
}

/// Reads a signal from any buffered reader; see [`read_signal`].
pub fn read_signal_from(reader: impl BufRead, fs_override: Option<f64>) -> Result<SignalFile> {
    let mut samples = Vec::new();
    let mut header_fs = None;
    let mut channel_name = None;
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            for token in rest.split_whitespace() {
                if let Some(v) = token.strip_prefix("fs=") {
                    header_fs = Some(v.parse::<f64>().map_err(|e| Error::Parse {
                        line: line_no,
                        msg: format!("bad fs value `{v}`: {e}"),
                    })?);
                } else if let Some(name) = token.strip_prefix("channel=") {
                    channel_name = Some(name.to_string());
                }
            }
            continue;
        }
        let value = trimmed.parse::<f64>().map_err(|e| Error::Parse {
            line: line_no,
            msg: format!("expected a sample value, got `{trimmed}`: {e}"),
        })?;
        samples.push(value);
    }
    let fs = fs_override.or(header_fs).ok_or(Error::MissingSampleRate)?;
    if !fs.is_finite() || fs <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "sampling rate must be finite and positive, got {fs}"
        )));
    }
    Ok(SignalFile {
        samples,
        fs,
        channel_name,
    })
}

/// Writes a signal file. Samples must be finite.
pub fn write_signal(signal: &SignalFile, path: &Path) -> Result<()> {
    let mut writer = BufWriter::new(File::create(path)?);
    write_signal_to(signal, &mut writer)?;
    writer.flush()?;
    Ok(())
}

/// Writes a signal to any writer; see [`write_signal`].
pub fn write_signal_to(signal: &SignalFile, mut writer: impl Write) -> Result<()> {
    for (index, &v) in signal.samples.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { index });
        }
    }
    match &signal.channel_name {
        Some(name) => writeln!(writer, "# fs={} channel={name}", signal.fs)?,
        None => writeln!(writer, "# fs={}", signal.fs)?,
    }
    for v in &signal.samples {
        writeln!(writer, "{v}")?;
    }
    Ok(())
}

/// Ground-truth labels plus the generating configuration, as persisted to
/// JSON next to simulated signals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelsFile {
    pub schema_version: u32,
    pub fs: f64,
    pub n_samples: usize,
    pub transient_intervals: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim_config: Option<SimConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

impl LabelsFile {
    pub fn read(path: &Path) -> Result<Self> {
        let labels: LabelsFile = serde_json::from_reader(BufReader::new(File::open(path)?))?;
        if labels.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaVersion {
                found: labels.schema_version,
                expected: SCHEMA_VERSION,
            });
        }
        Ok(labels)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut writer = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut writer, self)?;
        writeln!(writer)?;
        writer.flush()?;
        Ok(())
    }

    pub fn to_transient_labels(&self) -> Result<TransientLabels> {
        TransientLabels::new(self.transient_intervals.clone(), self.n_samples)
    }
}
