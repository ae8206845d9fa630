//! One-sided magnitude spectra, analytic envelopes, and bearing fault
//! frequency calculators.
//!
//! The envelope spectrum reveals the repetition rate of a train of
//! amplitude-modulated transients: the analytic-signal modulus strips the
//! carrier, and its spectrum peaks at the modulation (fault) frequency.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// One-sided spectrum over `0..=fs/2`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Bin centers in Hz, spaced `fs / N`.
    pub freqs: Vec<f64>,
    /// Nonnegative magnitudes, one per bin.
    pub mags: Vec<f64>,
}

impl Spectrum {
    /// Index of the bin whose center is closest to `freq_hz`.
    pub fn nearest_bin(&self, freq_hz: f64) -> usize {
        if self.freqs.len() < 2 {
            return 0;
        }
        let step = self.freqs[1] - self.freqs[0];
        ((freq_hz / step).round() as usize).min(self.freqs.len() - 1)
    }
}

/// One-sided discrete Fourier magnitude of `y`. Bins other than DC and
/// Nyquist are scaled by `2 / N` so an on-bin sinusoid of amplitude `A`
/// reads as `A`; DC and Nyquist are scaled by `1 / N`.
pub fn magnitude_spectrum(y: &[f64], fs: f64) -> Result<Spectrum> {
    check_fs(fs)?;
    let n = y.len();
    if n < 2 {
        return Err(Error::SignalTooShort { len: n, min: 2 });
    }
    let mut buf: Vec<Complex<f64>> = y.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let half = n / 2;
    let scale = 1.0 / n as f64;
    let mut freqs = Vec::with_capacity(half + 1);
    let mut mags = Vec::with_capacity(half + 1);
    for (k, value) in buf.iter().take(half + 1).enumerate() {
        let edge = k == 0 || (n % 2 == 0 && k == half);
        let factor = if edge { scale } else { 2.0 * scale };
        freqs.push(k as f64 * fs / n as f64);
        mags.push(value.norm() * factor);
    }
    Ok(Spectrum { freqs, mags })
}

/// Modulus of the analytic signal of `y` (the instantaneous amplitude).
/// Nonnegative everywhere.
pub fn analytic_envelope(y: &[f64]) -> Result<Vec<f64>> {
    let n = y.len();
    if n < 4 {
        return Err(Error::SignalTooShort { len: n, min: 4 });
    }
    let mut planner = FftPlanner::new();
    let mut buf: Vec<Complex<f64>> = y.iter().map(|&v| Complex::new(v, 0.0)).collect();
    planner.plan_fft_forward(n).process(&mut buf);

    // Analytic spectrum: keep DC (and Nyquist for even lengths), double
    // the positive frequencies, zero the negative ones.
    let half = n / 2;
    for (k, v) in buf.iter_mut().enumerate() {
        if k == 0 || (n % 2 == 0 && k == half) {
            // unchanged
        } else if k < half || (n % 2 == 1 && k == half) {
            *v *= 2.0;
        } else {
            *v = Complex::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    Ok(buf.iter().map(|v| v.norm() * scale).collect())
}

/// Magnitude spectrum of the mean-removed analytic envelope. Removing
/// the mean keeps the DC bin from dwarfing the fault lines.
pub fn envelope_spectrum(y: &[f64], fs: f64) -> Result<Spectrum> {
    check_fs(fs)?;
    let mut env = analytic_envelope(y)?;
    let mean = env.iter().sum::<f64>() / env.len() as f64;
    for v in &mut env {
        *v -= mean;
    }
    magnitude_spectrum(&env, fs)
}

/// Centered moving average with truncated edges; `width` of zero or one
/// returns the input unchanged.
pub fn moving_average(values: &[f64], width: usize) -> Vec<f64> {
    if width <= 1 || values.is_empty() {
        return values.to_vec();
    }
    let half = width / 2;
    (0..values.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(values.len());
            values[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect()
}

/// Bearing characteristic orders: each fault type repeats at a fixed
/// multiple of the shaft rotation frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BearingSpec {
    shaft_freq: f64,
    ftf: f64,
    bpfo: f64,
    bpfi: f64,
    bsf: f64,
}

impl BearingSpec {
    /// `shaft_freq` in Hz; the four orders are dimensionless multiples of
    /// it (fundamental train, outer race, inner race, ball spin). All
    /// must be positive.
    pub fn new(shaft_freq: f64, ftf: f64, bpfo: f64, bpfi: f64, bsf: f64) -> Result<Self> {
        for (name, v) in [
            ("shaft_freq", shaft_freq),
            ("ftf", ftf),
            ("bpfo", bpfo),
            ("bpfi", bpfi),
            ("bsf", bsf),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(BearingSpec {
            shaft_freq,
            ftf,
            bpfo,
            bpfi,
            bsf,
        })
    }

    /// Shaft frequency from a rotation speed in revolutions per minute.
    pub fn from_rpm(rpm: f64, ftf: f64, bpfo: f64, bpfi: f64, bsf: f64) -> Result<Self> {
        BearingSpec::new(rpm / 60.0, ftf, bpfo, bpfi, bsf)
    }

    pub fn shaft_freq(&self) -> f64 {
        self.shaft_freq
    }
}

/// Characteristic fault frequencies in Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaultFrequencies {
    pub ftf: f64,
    pub bpfo: f64,
    pub bpfi: f64,
    pub bsf: f64,
}

impl FaultFrequencies {
    pub fn as_pairs(&self) -> [(&'static str, f64); 4] {
        [
            ("ftf", self.ftf),
            ("bpfo", self.bpfo),
            ("bpfi", self.bpfi),
            ("bsf", self.bsf),
        ]
    }
}

/// Each order times the shaft frequency.
pub fn fault_frequencies(spec: &BearingSpec) -> FaultFrequencies {
    FaultFrequencies {
        ftf: spec.ftf * spec.shaft_freq,
        bpfo: spec.bpfo * spec.shaft_freq,
        bpfi: spec.bpfi * spec.shaft_freq,
        bsf: spec.bsf * spec.shaft_freq,
    }
}

fn check_fs(fs: f64) -> Result<()> {
    if !fs.is_finite() || fs <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "sampling rate must be finite and positive, got {fs}"
        )));
    }
    Ok(())
}
