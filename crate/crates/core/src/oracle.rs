//! Brute-force recomputation of rates, independent of the closed forms.
//!
//! Two routes: a golden-rule sum over the propagating Dirichlet modes of the
//! cavity, and direct numerical Fourier transformation of the regulated
//! Wightman function followed by extrapolation to zero regulator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::extrapolate::{epsilon_extrapolate_with_floor, Extrapolated};
use crate::kernels::KernelValue;
use crate::rates::{self, BathSpec, DetectorSpec, Direction, GeometrySpec, RateResult, TwoAtomConfig};
use crate::series::CompensatedSum;
use crate::wightman;

/// Continuum weight of the transverse momenta for one longitudinal mode,
/// relative to the `2/L` longitudinal normalization. Fixed by requiring
/// that the mode sum reproduces `ω₀/2π` as `L → ∞`.
pub const TRANSVERSE_DENSITY: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSumResult {
    pub result: RateResult,
    /// Contribution of each open mode `p = 1, 2, ...` to the geometric factor.
    pub contributions: Vec<f64>,
    /// No mode propagates at the transition frequency.
    pub no_modes: bool,
    /// The highest mode sits exactly at threshold and carries half weight.
    pub threshold: bool,
}

/// Golden-rule rate from the cavity mode sum.
pub fn mode_sum_rate(
    det: &DetectorSpec,
    temperature: f64,
    geom: &GeometrySpec,
    cfg: Option<&TwoAtomConfig>,
    dir: Direction,
) -> Result<ModeSumResult> {
    det.validate()?;
    let bath = BathSpec::Thermal { temperature };
    bath.validate()?;
    let (l, z0) = match *geom {
        GeometrySpec::Cavity { length, z0 } => (length, z0),
        _ => return domain("mode sum needs a cavity geometry"),
    };
    let extent = match cfg {
        Some(c) => {
            c.validate()?;
            c.d
        }
        None => 0.0,
    };
    if !(l > 0.0) || !(z0 > 0.0 && z0 + extent < l) {
        return domain("atoms must lie strictly inside the cavity");
    }
    let ratio = det.omega0 * l / PI;
    let p_max = ratio.floor() as usize;
    let threshold = p_max >= 1 && ratio == p_max as f64;
    let norm = 2.0 / l * TRANSVERSE_DENSITY;
    let mut contributions = Vec::with_capacity(p_max);
    for p in 1..=p_max {
        let k = p as f64 * PI / l;
        let amp = match cfg {
            None => (k * z0).sin(),
            Some(c) => {
                let (a, b) = rates::site_amplitudes(c.theta);
                a * (k * z0).sin() + b * (k * (z0 + c.d)).sin()
            }
        };
        let weight = if threshold && p == p_max { 0.5 } else { 1.0 };
        contributions.push(weight * norm * amp * amp);
    }
    let mut acc = CompensatedSum::default();
    contributions.iter().for_each(|&c| acc.add(c));
    let occ = rates::occupation_factor(det, &bath, dir)?;
    let geo = acc.value();
    let rate = det.lambda * det.lambda * geo * occ;
    Ok(ModeSumResult {
        result: RateResult {
            geometric_factor: geo,
            occupation_factor: occ,
            rate,
            normalized_rate: rate / det.rate_unit(),
            terms_used: p_max,
        },
        contributions,
        no_modes: p_max == 0,
        threshold,
    })
}

/// Discretization of the response integral `∫ dτ e^{-iΔE τ} G(τ - iε)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Half-width of the integration window.
    pub window: f64,
    pub nodes: usize,
    /// Strictly decreasing regulators used for the extrapolation.
    pub epsilons: Vec<f64>,
    /// Accepted extrapolation residual is ten times this, relative.
    pub tolerance: f64,
}

impl QuadratureSpec {
    /// Defaults scaled to the gap `de` and inverse temperature `beta`.
    pub fn for_gap(de: f64, beta: f64) -> Self {
        let e = de.abs();
        let thermal_decay = if beta.is_finite() { 8.0 * beta } else { 0.0 };
        let window = (1e3 / e).max(thermal_decay);
        let epsilons: Vec<f64> = [1e-2, 5e-3, 2.5e-3].iter().map(|x| x / e).collect();
        // Poles sit ε off the real axis; trapezoid aliasing scales as e^{-2πε/h}.
        let h = epsilons[2] / 6.0;
        let nodes = (2.0 * window / h).ceil() as usize + 1;
        Self {
            window,
            nodes,
            epsilons,
            tolerance: 1e-4,
        }
    }

    pub fn validate(&self, de: f64) -> Result<()> {
        if !(self.window * de.abs() >= 1e3) {
            return domain("window must span at least 10³ oscillations/2π");
        }
        let h = 2.0 * self.window / (self.nodes.max(2) - 1) as f64;
        if 2.0 * PI / (de.abs() * h) < 20.0 {
            return domain("need at least 20 nodes per oscillation");
        }
        if self.epsilons.len() < 3 || self.epsilons.windows(2).any(|w| w[1] >= w[0]) {
            return domain("need at least 3 strictly decreasing regulators");
        }
        if self.epsilons.iter().any(|&e| !(e > 0.0)) {
            return domain("regulators must be positive");
        }
        if !(self.tolerance > 0.0) {
            return domain("tolerance must be positive");
        }
        Ok(())
    }
}

fn taper(t: f64, window: f64) -> f64 {
    let start = 0.9 * window;
    let a = t.abs();
    if a <= start {
        1.0
    } else if a >= window {
        0.0
    } else {
        0.5 * (1.0 + (PI * (a - start) / (window - start)).cos())
    }
}

/// Wightman function along a static trajectory at height `z0`.
fn static_wightman(tau: Complex64, beta: f64, geom: &GeometrySpec) -> Result<Complex64> {
    let direct = wightman::coincident_wightman(tau, beta)?;
    match *geom {
        GeometrySpec::FreeSpace => Ok(direct),
        GeometrySpec::SingleBoundary { z0 } => {
            Ok(direct - wightman::thermal_wightman_coth_at(tau, 2.0 * z0, beta)?)
        }
        GeometrySpec::Cavity { .. } => Err(Error::Unsupported(
            "Fourier route covers free space and a single mirror; use the mode sum for cavities".into(),
        )),
    }
}

/// Trapezoid value of the tapered response integral at one regulator.
pub fn fourier_response_at(
    bath: &BathSpec,
    geom: &GeometrySpec,
    de: f64,
    quad: &QuadratureSpec,
    epsilon: f64,
) -> Result<f64> {
    let beta = match *bath {
        BathSpec::Thermal { temperature } if temperature == 0.0 => f64::INFINITY,
        BathSpec::Thermal { temperature } => 1.0 / temperature,
        BathSpec::UniformAcceleration { .. } => {
            return Err(Error::Unsupported("Fourier route covers thermal baths only".into()))
        }
    };
    bath.validate()?;
    let n = quad.nodes.max(3);
    let h = 2.0 * quad.window / (n - 1) as f64;
    let mut acc = CompensatedSum::default();
    for i in 0..n {
        let t = -quad.window + i as f64 * h;
        let w = taper(t, quad.window);
        if w == 0.0 {
            continue;
        }
        let g = static_wightman(Complex64::new(t, -epsilon), beta, geom)?;
        let (s, c) = (de * t).sin_cos();
        // Re[e^{-iΔE t} G]; the imaginary part integrates to zero by hermiticity.
        acc.add(w * (c * g.re + s * g.im));
    }
    Ok(acc.value() * h)
}

/// Response `∫ dτ e^{-iΔE τ} G⁺(τ)` for a static atom, extrapolated to zero
/// regulator. Multiplying by `λ²` gives the rate.
pub fn fourier_response(
    bath: &BathSpec,
    geom: &GeometrySpec,
    de: f64,
    quad: &QuadratureSpec,
) -> Result<Extrapolated> {
    if !(de != 0.0) || !de.is_finite() {
        return domain("energy gap must be nonzero and finite");
    }
    quad.validate(de)?;
    let mut samples = Vec::with_capacity(quad.epsilons.len());
    for &eps in &quad.epsilons {
        samples.push((eps, fourier_response_at(bath, geom, de, quad, eps)?));
    }
    // Quadrature noise is far below this; genuine divergence is not.
    let ex = epsilon_extrapolate_with_floor(&samples, 1e-9 * de.abs())?;
    let limit = 10.0 * quad.tolerance * ex.value.abs().max(de.abs() * 1e-6);
    if ex.residual > limit {
        return Err(Error::Extrapolation {
            residual: ex.residual,
            limit,
        });
    }
    Ok(ex)
}

/// Closed-form counterpart of [`fourier_response`]: geometric factor at `|ΔE|`
/// times `n̄` (`ΔE > 0`) or `1 + n̄` (`ΔE < 0`).
pub fn closed_form_response(bath: &BathSpec, geom: &GeometrySpec, de: f64) -> Result<f64> {
    let det = DetectorSpec::new(de.abs(), 1.0)?;
    let dir = if de > 0.0 { Direction::Up } else { Direction::Down };
    Ok(rates::single_atom_rate(&det, bath, geom, dir)?.rate)
}

/// The mode-sum geometric factor as a kernel value, for uniform comparison.
pub fn mode_sum_geometric_factor(omega0: f64, geom: &GeometrySpec, cfg: Option<&TwoAtomConfig>) -> Result<KernelValue> {
    let det = DetectorSpec::new(omega0, 1.0)?;
    let r = mode_sum_rate(&det, 1.0, geom, cfg, Direction::Down)?;
    let mut v = KernelValue::exact(r.result.geometric_factor);
    v.terms_used = r.contributions.len();
    v.degenerate = r.threshold;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det() -> DetectorSpec {
        DetectorSpec::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn single_open_mode() {
        let geom = GeometrySpec::Cavity { length: 3.2, z0: 0.8 };
        let r = mode_sum_rate(&det(), 1.0, &geom, None, Direction::Down).unwrap();
        assert_eq!(r.contributions.len(), 1);
        assert!((r.result.geometric_factor - 0.15625).abs() < 1e-15);
        assert!(!r.no_modes && !r.threshold);
    }

    #[test]
    fn closed_cavity_has_no_modes() {
        let geom = GeometrySpec::Cavity { length: 3.0, z0: 0.8 };
        let r = mode_sum_rate(&det(), 1.0, &geom, None, Direction::Up).unwrap();
        assert!(r.no_modes);
        assert_eq!(r.result.rate, 0.0);
    }

    #[test]
    fn atom_on_mode_node() {
        // Modes p = 1, 2 are open at ω₀L = 6.5; z₀ = L/2 is a node of p = 2.
        let geom = GeometrySpec::Cavity { length: 6.5, z0: 3.25 };
        let r = mode_sum_rate(&det(), 1.0, &geom, None, Direction::Up).unwrap();
        assert_eq!(r.contributions.len(), 2);
        assert!(r.contributions[1] < 1e-30);
    }

    #[test]
    fn threshold_mode_half_weight() {
        let geom = GeometrySpec::Cavity { length: PI, z0: 0.5 * PI };
        let r = mode_sum_rate(&det(), 1.0, &geom, None, Direction::Up).unwrap();
        assert!(r.threshold);
        assert!((r.contributions[0] - 0.5 / PI).abs() < 1e-15);
    }

    #[test]
    fn transverse_factor_from_free_space_limit() {
        // Averaging sin² over many open modes must give ω₀/2π.
        let l = 2e4;
        let geom = GeometrySpec::Cavity { length: l, z0: 0.5 * l + 0.3 };
        let r = mode_sum_rate(&det(), 1.0, &geom, None, Direction::Up).unwrap();
        assert!((r.result.geometric_factor - 1.0 / (2.0 * PI)).abs() < 1e-3);
    }

    #[test]
    fn rejects_other_geometries() {
        assert!(mode_sum_rate(&det(), 1.0, &GeometrySpec::FreeSpace, None, Direction::Up).is_err());
        let cfg = TwoAtomConfig::new(0.3, 3.0).unwrap();
        let geom = GeometrySpec::Cavity { length: 3.2, z0: 0.8 };
        assert!(mode_sum_rate(&det(), 1.0, &geom, Some(&cfg), Direction::Up).is_err());
    }

    #[test]
    fn cavity_fourier_is_unsupported() {
        let q = QuadratureSpec::for_gap(1.0, 1.0);
        let th = BathSpec::Thermal { temperature: 1.0 };
        let geom = GeometrySpec::Cavity { length: 3.2, z0: 0.8 };
        assert!(matches!(fourier_response(&th, &geom, 1.0, &q), Err(Error::Unsupported(_))));
    }

    #[test]
    fn quadrature_spec_checks() {
        let mut q = QuadratureSpec::for_gap(1.0, 1.0);
        assert!(q.validate(1.0).is_ok());
        q.epsilons = vec![1e-2, 1e-2, 1e-3];
        assert!(q.validate(1.0).is_err());
        let mut q = QuadratureSpec::for_gap(1.0, 1.0);
        q.window = 10.0;
        assert!(q.validate(1.0).is_err());
        let mut q = QuadratureSpec::for_gap(1.0, 1.0);
        q.nodes = 1000;
        assert!(q.validate(1.0).is_err());
    }
}
