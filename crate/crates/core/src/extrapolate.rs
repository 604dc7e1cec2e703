//! Polynomial extrapolation to zero regulator.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extrapolated {
    pub value: f64,
    /// Difference between the two highest extrapolation orders.
    pub residual: f64,
}

/// Neville evaluation at `x = 0` of the interpolant through `samples[i..=j]`.
fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for k in 1..n {
        for i in 0..n - k {
            let j = i + k;
            p[i] = (xs[j] * p[i] - xs[i] * p[i + 1]) / (xs[j] - xs[i]);
        }
    }
    p[0]
}

/// Extrapolates `(ε, f(ε))` samples to `ε = 0` with the full-degree
/// interpolating polynomial.
///
/// Samples must have strictly decreasing `ε` and successive differences that
/// do not grow; otherwise the data is not in the asymptotic regime.
pub fn epsilon_extrapolate(samples: &[(f64, f64)]) -> Result<Extrapolated> {
    epsilon_extrapolate_with_floor(samples, 0.0)
}

/// As [`epsilon_extrapolate`], but differences below `noise_floor` never
/// count as growth.
pub fn epsilon_extrapolate_with_floor(samples: &[(f64, f64)], noise_floor: f64) -> Result<Extrapolated> {
    if samples.len() < 3 {
        return domain(format!("need at least 3 samples, got {}", samples.len()));
    }
    if samples.iter().any(|s| !s.0.is_finite() || !s.1.is_finite() || s.0 <= 0.0) {
        return domain("samples must be finite with positive regulators");
    }
    if samples.windows(2).any(|w| w[1].0 >= w[0].0) {
        return domain("regulators must be strictly decreasing");
    }
    let diffs: Vec<f64> = samples.windows(2).map(|w| (w[1].1 - w[0].1).abs()).collect();
    let scale = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    for w in diffs.windows(2) {
        if w[1] > w[0] * (1.0 + 1e-9) + 1e-14 * scale + noise_floor {
            return Err(Error::Extrapolation {
                residual: w[1],
                limit: w[0],
            });
        }
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let value = neville_at_zero(&xs, &ys);
    let lower = neville_at_zero(&xs[1..], &ys[1..]);
    Ok(Extrapolated {
        value,
        residual: (value - lower).abs(),
    })
}
