//! Binary group-weight layouts.
//!
//! A [`GroupPattern`] is the 0/1 weight vector applied to every
//! overlapping signal block in the solver objective. Three layouts exist:
//! periodic (repeated runs of ones separated by runs of zeros, matched to
//! a fault repetition rate), contiguous (all ones, plain group sparsity),
//! and explicit (any bit layout). Trailing zeros never affect the
//! objective, so they are trimmed at construction; the nominal group
//! length before trimming is kept for bookkeeping.

use crate::error::{Error, Result};

/// Periodic structure of a pattern: runs of `ones_per_period` ones
/// followed by `zeros_per_period` zeros, repeated `periods` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicLayout {
    pub ones_per_period: usize,
    pub zeros_per_period: usize,
    pub periods: usize,
}

impl PeriodicLayout {
    /// Samples per repetition.
    pub fn period(&self) -> usize {
        self.ones_per_period + self.zeros_per_period
    }
}

/// A binary weight vector with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPattern {
    bits: Vec<bool>,
    ones: Vec<usize>,
    group_len: usize,
    layout: Option<PeriodicLayout>,
}

impl GroupPattern {
    /// Periodic layout derived from a sampling rate and a fault frequency.
    ///
    /// The repetition period is `round(fs / fault_freq)` samples;
    /// `ones_per_period` of them carry weight 1 and the rest weight 0.
    /// `periods` must be at least 2 (a single period is the contiguous
    /// case and is built with [`GroupPattern::contiguous`]).
    pub fn periodic(
        fs: f64,
        fault_freq: f64,
        ones_per_period: usize,
        periods: usize,
    ) -> Result<Self> {
        if !fs.is_finite() || fs <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "sampling rate must be finite and positive, got {fs}"
            )));
        }
        if !fault_freq.is_finite() || fault_freq <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "fault frequency must be finite and positive, got {fault_freq}"
            )));
        }
        if ones_per_period == 0 {
            return Err(Error::InvalidPattern(
                "ones per period must be at least 1".into(),
            ));
        }
        if periods < 2 {
            return Err(Error::InvalidPattern(
                "periodic layout needs at least 2 periods; use a contiguous pattern for one".into(),
            ));
        }
        let period = (fs / fault_freq).round() as usize;
        if ones_per_period >= period {
            return Err(Error::InvalidPattern(format!(
                "{ones_per_period} ones per period leave no room for zeros in a \
                 {period}-sample period"
            )));
        }
        let zeros_per_period = period - ones_per_period;
        let stored_len = periods * period - zeros_per_period;
        let mut bits = vec![false; stored_len];
        for p in 0..periods {
            for j in 0..ones_per_period {
                bits[p * period + j] = true;
            }
        }
        Ok(Self::from_parts(
            bits,
            periods * period,
            Some(PeriodicLayout {
                ones_per_period,
                zeros_per_period,
                periods,
            }),
        ))
    }

    /// All-ones pattern of the given length (plain group sparsity; a
    /// length of 1 is scalar shrinkage).
    pub fn contiguous(group_len: usize) -> Result<Self> {
        if group_len == 0 {
            return Err(Error::InvalidPattern(
                "group length must be at least 1".into(),
            ));
        }
        Ok(Self::from_parts(
            vec![true; group_len],
            group_len,
            Some(PeriodicLayout {
                ones_per_period: group_len,
                zeros_per_period: 0,
                periods: 1,
            }),
        ))
    }

    /// Arbitrary bit layout. Must contain at least one set bit; trailing
    /// zeros are trimmed.
    pub fn explicit(bits: &[bool]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidPattern("empty bit layout".into()));
        }
        let trimmed_len = match bits.iter().rposition(|&b| b) {
            Some(last_one) => last_one + 1,
            None => {
                return Err(Error::InvalidPattern(
                    "bit layout has no set bits".into(),
                ))
            }
        };
        Ok(Self::from_parts(
            bits[..trimmed_len].to_vec(),
            bits.len(),
            None,
        ))
    }

    fn from_parts(bits: Vec<bool>, group_len: usize, layout: Option<PeriodicLayout>) -> Self {
        let ones = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        GroupPattern {
            bits,
            ones,
            group_len,
            layout,
        }
    }

    /// Stored bits (trailing zeros removed).
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> &[usize] {
        &self.ones
    }

    /// Number of stored bits.
    pub fn stored_len(&self) -> usize {
        self.bits.len()
    }

    /// Nominal group length before trimming.
    pub fn group_len(&self) -> usize {
        self.group_len
    }

    /// Number of unit weights in the group.
    pub fn active_count(&self) -> usize {
        self.ones.len()
    }

    /// Number of zero weights in the nominal group.
    pub fn zero_count(&self) -> usize {
        self.group_len - self.active_count()
    }

    /// Periodic structure, if the pattern was built from one.
    pub fn layout(&self) -> Option<PeriodicLayout> {
        self.layout
    }
}
