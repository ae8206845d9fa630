//! RMSE and detection-rate evaluation.
//!
//! Detection is scored transient-wise: hitting any sample of a
//! ground-truth transient counts the whole transient as detected (see
//! [`relabel`]). A method that clips one sample from each of two
//! transients therefore scores higher than one that recovers two samples
//! of a single transient, even though both mark the same number of
//! samples.

use crate::error::{Error, Result};

/// Ground-truth transient locations within a signal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransientLabels {
    intervals: Vec<(usize, usize)>,
    n_samples: usize,
}

impl TransientLabels {
    /// Intervals are half-open `[start, end)`, must be sorted, disjoint,
    /// nonempty ranges inside `[0, n_samples)`.
    pub fn new(intervals: Vec<(usize, usize)>, n_samples: usize) -> Result<Self> {
        let mut prev_end = 0usize;
        for (i, &(start, end)) in intervals.iter().enumerate() {
            if start >= end {
                return Err(Error::InvalidLabels(format!(
                    "interval {i} is empty or reversed: [{start}, {end})"
                )));
            }
            if end > n_samples {
                return Err(Error::InvalidLabels(format!(
                    "interval {i} ends at {end}, past the signal length {n_samples}"
                )));
            }
            if i > 0 && start < prev_end {
                return Err(Error::InvalidLabels(format!(
                    "interval {i} overlaps or precedes its predecessor"
                )));
            }
            prev_end = end;
        }
        Ok(TransientLabels {
            intervals,
            n_samples,
        })
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// Per-sample truth mask.
    pub fn positive_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n_samples];
        for &(start, end) in &self.intervals {
            for m in mask[start..end].iter_mut() {
                *m = true;
            }
        }
        mask
    }

    pub fn positive_count(&self) -> usize {
        self.intervals.iter().map(|&(s, e)| e - s).sum()
    }
}

/// Root-mean-square error between two equal-length signals.
pub fn rmse(x: &[f64], reference: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    if x.len() != reference.len() {
        return Err(Error::LengthMismatch {
            expected: reference.len(),
            actual: x.len(),
        });
    }
    let sum: f64 = x
        .iter()
        .zip(reference)
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum();
    Ok((sum / x.len() as f64).sqrt())
}

/// Spreads detections across whole transients: if any sample of a
/// ground-truth interval is marked, every sample of that interval is
/// marked. Samples outside all intervals pass through unchanged.
pub fn relabel(detected: &[bool], labels: &TransientLabels) -> Result<Vec<bool>> {
    if detected.len() != labels.n_samples() {
        return Err(Error::LengthMismatch {
            expected: labels.n_samples(),
            actual: detected.len(),
        });
    }
    let mut out = detected.to_vec();
    for &(start, end) in labels.intervals() {
        if detected[start..end].iter().any(|&d| d) {
            for m in out[start..end].iter_mut() {
                *m = true;
            }
        }
    }
    Ok(out)
}

/// One detection curve: per-threshold operating points and the area under
/// them.
#[derive(Debug, Clone)]
pub struct RocCurve {
    /// Thresholds, descending from the peak magnitude to zero.
    pub thresholds: Vec<f64>,
    /// `(false_alarm_prob, detection_prob)` per threshold.
    pub points: Vec<(f64, f64)>,
    /// Trapezoid area under the curve.
    pub auc: f64,
}

/// Sweeps `n_thresholds` uniformly spaced thresholds from `max|x|` down
/// to zero. At positive thresholds a sample is detected when its
/// magnitude strictly exceeds the threshold, so an exactly-zero baseline
/// produces no false alarms; the final zero threshold marks every sample
/// detected, anchoring the curve at (1, 1). Detections are spread across
/// transients with [`relabel`] before rates are computed.
pub fn roc(x: &[f64], labels: &TransientLabels, n_thresholds: usize) -> Result<RocCurve> {
    if n_thresholds < 2 {
        return Err(Error::InvalidParameter(
            "need at least 2 thresholds".into(),
        ));
    }
    if x.len() != labels.n_samples() {
        return Err(Error::LengthMismatch {
            expected: labels.n_samples(),
            actual: x.len(),
        });
    }
    let positives = labels.positive_mask();
    let pos_count = labels.positive_count();
    let neg_count = labels.n_samples() - pos_count;
    if pos_count == 0 || neg_count == 0 {
        return Err(Error::InvalidLabels(
            "detection rates need both positive and negative samples".into(),
        ));
    }

    let peak = x.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    let steps = (n_thresholds - 1) as f64;
    let mut thresholds = Vec::with_capacity(n_thresholds);
    let mut points = Vec::with_capacity(n_thresholds);
    for i in 0..n_thresholds {
        let t = peak * (n_thresholds - 1 - i) as f64 / steps;
        let last = i == n_thresholds - 1;
        let detected: Vec<bool> = if last {
            vec![true; x.len()]
        } else {
            x.iter().map(|&v| v.abs() > t).collect()
        };
        let spread = relabel(&detected, labels)?;
        let mut hits = 0usize;
        let mut false_alarms = 0usize;
        for (d, &p) in spread.iter().zip(&positives) {
            if *d {
                if p {
                    hits += 1;
                } else {
                    false_alarms += 1;
                }
            }
        }
        thresholds.push(t);
        points.push((
            false_alarms as f64 / neg_count as f64,
            hits as f64 / pos_count as f64,
        ));
    }

    let auc = points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[1].1 + w[0].1) / 2.0)
        .sum();

    Ok(RocCurve {
        thresholds,
        points,
        auc,
    })
}
