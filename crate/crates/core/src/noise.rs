//! Background noise estimation and regularization weight selection.

use crate::error::{Error, Result};

/// Third-quartile constant of the standard normal distribution; dividing
/// the median absolute deviation by it yields a consistent estimate of a
/// Gaussian standard deviation.
pub const MAD_NORMAL_CONSISTENCY: f64 = 0.6745;

/// Regularization multipliers `r` for `lambda = r * sigma`, indexed by
/// `[periods - 1][ones_per_period - 1]`. The table is symmetric; entries
/// exist only for both parameters in 1..=4.
pub const LAMBDA_MULTIPLIERS: [[f64; 4]; 4] = [
    [3.700, 1.700, 1.150, 0.925],
    [1.700, 0.850, 0.625, 0.475],
    [1.150, 0.625, 0.450, 0.375],
    [0.925, 0.475, 0.375, 0.325],
];

/// Robust noise-level estimate: median absolute deviation from the median,
/// divided by [`MAD_NORMAL_CONSISTENCY`]. The median of an even-length
/// vector is the mean of the two central order statistics.
pub fn estimate_sigma(y: &[f64]) -> Result<f64> {
    if y.is_empty() {
        return Err(Error::EmptyInput);
    }
    let center = median(y.to_vec());
    let deviations: Vec<f64> = y.iter().map(|&v| (v - center).abs()).collect();
    Ok(median(deviations) / MAD_NORMAL_CONSISTENCY)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Tabulated multiplier for the given pattern shape. Errors outside the
/// table rather than extrapolating; callers must then choose lambda
/// themselves.
pub fn lambda_multiplier(periods: usize, ones_per_period: usize) -> Result<f64> {
    if !(1..=4).contains(&periods) || !(1..=4).contains(&ones_per_period) {
        return Err(Error::OutOfTable {
            m: periods,
            n1: ones_per_period,
        });
    }
    Ok(LAMBDA_MULTIPLIERS[periods - 1][ones_per_period - 1])
}

/// `lambda = r(periods, ones_per_period) * sigma`.
pub fn lambda_from_table(sigma: f64, periods: usize, ones_per_period: usize) -> Result<f64> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "sigma must be finite and positive, got {sigma}"
        )));
    }
    Ok(lambda_multiplier(periods, ones_per_period)? * sigma)
}
