//! Closed-form transition rates.
//!
//! Every rate factors as `λ² × geometric factor × occupation factor`. The
//! geometric factor carries the geometry and, for accelerated atoms, the
//! acceleration; the occupation factor is the Planck factor at the effective
//! temperature (`T`, or `α/2π` for acceleration).

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{domain, Result};
use crate::kernels::{self, KernelValue, SeriesPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorSpec {
    pub omega0: f64,
    pub lambda: f64,
}

impl DetectorSpec {
    pub fn new(omega0: f64, lambda: f64) -> Result<Self> {
        let d = Self { omega0, lambda };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0) || !self.omega0.is_finite() {
            return domain(format!("transition energy must be positive, got {}", self.omega0));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return domain(format!("coupling must be positive, got {}", self.lambda));
        }
        Ok(())
    }

    /// `λ² ω₀ / 2π`, the unit in which normalized rates are quoted.
    pub fn rate_unit(&self) -> f64 {
        self.lambda * self.lambda * self.omega0 / TAU
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BathSpec {
    Thermal { temperature: f64 },
    UniformAcceleration { alpha: f64 },
}

impl BathSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            BathSpec::Thermal { temperature } => {
                if !(temperature >= 0.0) || !temperature.is_finite() {
                    return domain(format!("temperature must be non-negative, got {temperature}"));
                }
            }
            BathSpec::UniformAcceleration { alpha } => {
                if !(alpha > 0.0) || !alpha.is_finite() {
                    return domain(format!("acceleration must be positive, got {alpha}"));
                }
            }
        }
        Ok(())
    }

    pub fn effective_temperature(&self) -> f64 {
        match *self {
            BathSpec::Thermal { temperature } => temperature,
            BathSpec::UniformAcceleration { alpha } => alpha / TAU,
        }
    }

    /// `ω₀ / T_eff`, infinite at zero temperature.
    pub fn energy_ratio(&self, omega0: f64) -> f64 {
        match *self {
            BathSpec::Thermal { temperature } if temperature == 0.0 => f64::INFINITY,
            BathSpec::Thermal { temperature } => omega0 / temperature,
            BathSpec::UniformAcceleration { alpha } => TAU * omega0 / alpha,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeometrySpec {
    FreeSpace,
    SingleBoundary { z0: f64 },
    Cavity { length: f64, z0: f64 },
}

impl GeometrySpec {
    /// Validates the geometry for atoms spanning `[z0, z0 + extent]`.
    fn validate(&self, extent: f64) -> Result<()> {
        match *self {
            GeometrySpec::FreeSpace => Ok(()),
            GeometrySpec::SingleBoundary { z0 } => {
                if !(z0 > 0.0) || !z0.is_finite() {
                    return domain(format!("mirror distance must be positive, got {z0}"));
                }
                Ok(())
            }
            GeometrySpec::Cavity { length, z0 } => {
                if !(length > 0.0) || !length.is_finite() {
                    return domain(format!("cavity length must be positive, got {length}"));
                }
                if !(z0 > 0.0 && z0 + extent < length) {
                    return domain(format!(
                        "atoms must lie strictly inside the cavity (z0 = {z0}, extent = {extent}, L = {length})"
                    ));
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoAtomConfig {
    pub theta: f64,
    pub d: f64,
}

impl TwoAtomConfig {
    pub fn new(theta: f64, d: f64) -> Result<Self> {
        let c = Self { theta, d };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.theta.is_finite() {
            return domain("entanglement angle must be finite");
        }
        if !(self.d > 0.0) || !self.d.is_finite() {
            return domain(format!("separation must be positive, got {}", self.d));
        }
        Ok(())
    }

    fn weights(&self) -> (f64, f64, f64) {
        let (s, c) = self.theta.sin_cos();
        (c * c, s * s, (2.0 * self.theta).sin())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateResult {
    pub geometric_factor: f64,
    pub occupation_factor: f64,
    pub rate: f64,
    pub normalized_rate: f64,
    /// Largest number of image pairs any kernel needed.
    pub terms_used: usize,
}

impl RateResult {
    fn assemble(det: &DetectorSpec, geometric: KernelValue, occupation: f64) -> Self {
        let rate = det.lambda * det.lambda * geometric.value * occupation;
        Self {
            geometric_factor: geometric.value,
            occupation_factor: occupation,
            rate,
            normalized_rate: rate / det.rate_unit(),
            terms_used: geometric.terms_used,
        }
    }
}

/// `n̄` for upward and `1 + n̄` for downward transitions.
pub fn occupation_factor(det: &DetectorSpec, bath: &BathSpec, dir: Direction) -> Result<f64> {
    det.validate()?;
    bath.validate()?;
    let x = bath.energy_ratio(det.omega0);
    let nbar = if x.is_infinite() {
        0.0
    } else {
        kernels::planck_occupation(x)?
    };
    Ok(match dir {
        Direction::Up => nbar,
        Direction::Down => 1.0 + nbar,
    })
}

/// `R↑/R↓ = exp(-ω₀/T_eff)`, zero at zero temperature.
pub fn detailed_balance_ratio(det: &DetectorSpec, bath: &BathSpec) -> Result<f64> {
    det.validate()?;
    bath.validate()?;
    Ok((-bath.energy_ratio(det.omega0)).exp())
}

/// Monopole matrix elements `(⟨f|m_A|ψ⟩, ⟨f|m_B|ψ⟩)` for
/// `|ψ⟩ = sinθ|g_A e_B⟩ + cosθ|e_A g_B⟩` and final state `|e_A e_B⟩` (up) or
/// `|g_A g_B⟩` (down).
pub fn monopole_elements(theta: f64, dir: Direction) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    match dir {
        Direction::Up => (s, c),
        Direction::Down => (c, s),
    }
}

/// Field amplitudes on the two sites `(z0, z0 + d)` behind the shared
/// two-atom geometric factor: `cos θ` on the atom nearer the wall.
pub fn site_amplitudes(theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    (c, s)
}

fn vacuum_term(omega0: f64) -> KernelValue {
    KernelValue::exact(omega0 / TAU)
}

fn p(omega0: f64, s: f64) -> Result<KernelValue> {
    Ok(KernelValue::exact(kernels::sinc_kernel(omega0, s)?))
}

fn g(omega0: f64, alpha: f64, z: f64) -> Result<KernelValue> {
    Ok(KernelValue::exact(kernels::accel_kernel(omega0, alpha, z)?))
}

/// Bracketed spectral factor of the single-atom rate.
pub fn single_atom_geometric_factor(
    omega0: f64,
    bath: &BathSpec,
    geom: &GeometrySpec,
    policy: &SeriesPolicy,
) -> Result<KernelValue> {
    bath.validate()?;
    geom.validate(0.0)?;
    let w = vacuum_term(omega0);
    match (*bath, *geom) {
        (_, GeometrySpec::FreeSpace) => Ok(w),
        (BathSpec::Thermal { .. }, GeometrySpec::SingleBoundary { z0 }) => {
            Ok(w.combine(1.0, p(omega0, 2.0 * z0)?, -1.0))
        }
        (BathSpec::Thermal { .. }, GeometrySpec::Cavity { length, z0 }) => {
            let q = kernels::boundary_sum_q(omega0, 2.0 * length, policy)?;
            let r = kernels::image_sum_r(omega0, 2.0 * z0, 2.0 * length, policy)?;
            Ok(w.combine(1.0, q, 1.0).combine(1.0, r, -1.0))
        }
        (BathSpec::UniformAcceleration { alpha }, GeometrySpec::SingleBoundary { z0 }) => {
            Ok(w.combine(1.0, g(omega0, alpha, z0)?, -1.0))
        }
        (BathSpec::UniformAcceleration { alpha }, GeometrySpec::Cavity { length, z0 }) => {
            let half = 0.5 * length;
            let f = kernels::accel_sum_f(omega0, alpha, half, policy)?;
            let h = kernels::accel_sum_h(omega0, alpha, z0, half, policy)?;
            Ok(w.combine(1.0, f, 1.0).combine(1.0, h, -1.0))
        }
    }
}

/// Bracketed spectral factor shared by both two-atom final states.
pub fn two_atom_geometric_factor(
    omega0: f64,
    bath: &BathSpec,
    geom: &GeometrySpec,
    cfg: &TwoAtomConfig,
    policy: &SeriesPolicy,
) -> Result<KernelValue> {
    bath.validate()?;
    cfg.validate()?;
    geom.validate(cfg.d)?;
    let (cc, ss, s2) = cfg.weights();
    let d = cfg.d;
    let w = vacuum_term(omega0);
    let v = match (*bath, *geom) {
        (BathSpec::Thermal { .. }, GeometrySpec::FreeSpace) => w.combine(1.0, p(omega0, d)?, s2),
        (BathSpec::Thermal { .. }, GeometrySpec::SingleBoundary { z0 }) => w
            .combine(1.0, p(omega0, 2.0 * z0)?, -cc)
            .combine(1.0, p(omega0, 2.0 * z0 + 2.0 * d)?, -ss)
            .combine(1.0, p(omega0, d)?, s2)
            .combine(1.0, p(omega0, 2.0 * z0 + d)?, -s2),
        (BathSpec::Thermal { .. }, GeometrySpec::Cavity { length, z0 }) => {
            let two_l = 2.0 * length;
            let two_z0 = 2.0 * z0;
            let q = kernels::boundary_sum_q(omega0, two_l, policy)?;
            let r = kernels::image_sum_r(omega0, two_z0, two_l, policy)?;
            let s_far = kernels::image_sum_s(omega0, two_z0, 2.0 * d, two_l, policy)?;
            let t = kernels::image_sum_t(omega0, d, two_l, policy)?;
            let s_mid = kernels::image_sum_s(omega0, two_z0, d, two_l, policy)?;
            w.combine(1.0, q, 1.0)
                .combine(1.0, r, -cc)
                .combine(1.0, s_far, -ss)
                .combine(1.0, t, s2)
                .combine(1.0, s_mid, -s2)
        }
        (BathSpec::UniformAcceleration { alpha }, GeometrySpec::FreeSpace) => {
            w.combine(1.0, g(omega0, alpha, 0.5 * d)?, s2)
        }
        (BathSpec::UniformAcceleration { alpha }, GeometrySpec::SingleBoundary { z0 }) => w
            .combine(1.0, g(omega0, alpha, z0)?, -cc)
            .combine(1.0, g(omega0, alpha, z0 + d)?, -ss)
            .combine(1.0, g(omega0, alpha, 0.5 * d)?, s2)
            .combine(1.0, g(omega0, alpha, z0 + 0.5 * d)?, -s2),
        (BathSpec::UniformAcceleration { alpha }, GeometrySpec::Cavity { length, z0 }) => {
            let half = 0.5 * length;
            let f = kernels::accel_sum_f(omega0, alpha, half, policy)?;
            let h = kernels::accel_sum_h(omega0, alpha, z0, half, policy)?;
            let m_far = kernels::accel_sum_m(omega0, alpha, z0, d, half, policy)?;
            let n = kernels::accel_sum_n(omega0, alpha, 0.5 * d, half, policy)?;
            let m_mid = kernels::accel_sum_m(omega0, alpha, z0, 0.5 * d, half, policy)?;
            w.combine(1.0, f, 1.0)
                .combine(1.0, h, -cc)
                .combine(1.0, m_far, -ss)
                .combine(1.0, n, s2)
                .combine(1.0, m_mid, -s2)
        }
    };
    Ok(v)
}

pub fn single_atom_rate(
    det: &DetectorSpec,
    bath: &BathSpec,
    geom: &GeometrySpec,
    dir: Direction,
) -> Result<RateResult> {
    single_atom_rate_with(det, bath, geom, dir, &SeriesPolicy::default())
}

pub fn single_atom_rate_with(
    det: &DetectorSpec,
    bath: &BathSpec,
    geom: &GeometrySpec,
    dir: Direction,
    policy: &SeriesPolicy,
) -> Result<RateResult> {
    let occ = occupation_factor(det, bath, dir)?;
    let geo = single_atom_geometric_factor(det.omega0, bath, geom, policy)?;
    Ok(RateResult::assemble(det, geo, occ))
}

pub fn two_atom_rate(
    det: &DetectorSpec,
    bath: &BathSpec,
    geom: &GeometrySpec,
    cfg: &TwoAtomConfig,
    dir: Direction,
) -> Result<RateResult> {
    two_atom_rate_with(det, bath, geom, cfg, dir, &SeriesPolicy::default())
}

pub fn two_atom_rate_with(
    det: &DetectorSpec,
    bath: &BathSpec,
    geom: &GeometrySpec,
    cfg: &TwoAtomConfig,
    dir: Direction,
    policy: &SeriesPolicy,
) -> Result<RateResult> {
    let occ = occupation_factor(det, bath, dir)?;
    let geo = two_atom_geometric_factor(det.omega0, bath, geom, cfg, policy)?;
    Ok(RateResult::assemble(det, geo, occ))
}

/// Free-space accelerated two-atom rate from the expansion to second order in `αd`.
pub fn two_atom_rate_small_ad(
    det: &DetectorSpec,
    alpha: f64,
    cfg: &TwoAtomConfig,
    dir: Direction,
) -> Result<RateResult> {
    let bath = BathSpec::UniformAcceleration { alpha };
    cfg.validate()?;
    let occ = occupation_factor(det, &bath, dir)?;
    let ad = alpha * cfg.d;
    if ad >= 1.0 {
        return domain(format!("small-αd expansion needs αd < 1, got {ad}"));
    }
    if ad > 0.3 {
        log::warn!("small-αd expansion used at αd = {ad}; truncation error is not small");
    }
    let (_, _, s2) = cfg.weights();
    let wd = det.omega0 * cfg.d;
    let (sn, cs) = wd.sin_cos();
    let bracket = sn - (sn + wd / 3.0 * cs) * ad * ad / 8.0;
    let geo = det.omega0 / TAU + s2 / (TAU * cfg.d) * bracket;
    Ok(RateResult::assemble(det, KernelValue::exact(geo), occ))
}

/// Temperature `α/2π` at which free-space thermal and accelerated rates coincide.
pub fn unruh_temperature(alpha: f64) -> f64 {
    alpha / (2.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn det() -> DetectorSpec {
        DetectorSpec::new(1.0, 1.0).unwrap()
    }

    const CAV: GeometrySpec = GeometrySpec::Cavity { length: 3.2, z0: 0.8 };

    #[test]
    fn free_space_thermal_values() {
        let bath = BathSpec::Thermal { temperature: 1.0 };
        let up = single_atom_rate(&det(), &bath, &GeometrySpec::FreeSpace, Direction::Up).unwrap();
        let down = single_atom_rate(&det(), &bath, &GeometrySpec::FreeSpace, Direction::Down).unwrap();
        // 1/(2π(e-1)) and e/(2π(e-1))
        assert!((up.rate - 0.092_624_469_662_596_31).abs() < 1e-15);
        assert!((down.rate - 0.251_779_412_754_491_67).abs() < 1e-15);
        assert_eq!(up.rate, up.geometric_factor * up.occupation_factor);
    }

    #[test]
    fn zero_temperature() {
        let bath = BathSpec::Thermal { temperature: 0.0 };
        let up = single_atom_rate(&det(), &bath, &CAV, Direction::Up).unwrap();
        let down = single_atom_rate(&det(), &bath, &CAV, Direction::Down).unwrap();
        assert_eq!(up.rate, 0.0);
        assert_eq!(down.occupation_factor, 1.0);
        assert_eq!(detailed_balance_ratio(&det(), &bath).unwrap(), 0.0);
    }

    #[test]
    fn balance_ratio_values() {
        let th = BathSpec::Thermal { temperature: 1.0 };
        let ac = BathSpec::UniformAcceleration { alpha: TAU };
        let e = (-1f64).exp();
        assert!((detailed_balance_ratio(&det(), &th).unwrap() - e).abs() < 1e-16);
        assert!((detailed_balance_ratio(&det(), &ac).unwrap() - e).abs() < 1e-16);
    }

    #[test]
    fn superradiant_and_subradiant_limits() {
        let th = BathSpec::Thermal { temperature: 1.0 };
        let sym = TwoAtomConfig::new(FRAC_PI_4, 1e-6).unwrap();
        let anti = TwoAtomConfig::new(3.0 * FRAC_PI_4, 1e-6).unwrap();
        let p = SeriesPolicy::default();
        let a = two_atom_geometric_factor(1.0, &th, &GeometrySpec::FreeSpace, &sym, &p).unwrap();
        let b = two_atom_geometric_factor(1.0, &th, &GeometrySpec::FreeSpace, &anti, &p).unwrap();
        assert!((a.value - 2.0 / TAU).abs() < 1e-10);
        assert!(b.value.abs() < 1e-10);
    }

    #[test]
    fn geometry_validation() {
        let th = BathSpec::Thermal { temperature: 1.0 };
        let bad = GeometrySpec::Cavity { length: 1.0, z0: 1.0 };
        assert!(single_atom_rate(&det(), &th, &bad, Direction::Up).is_err());
        let cfg = TwoAtomConfig::new(0.3, 2.5).unwrap();
        assert!(two_atom_rate(&det(), &th, &CAV, &cfg, Direction::Up).is_err());
        assert!(TwoAtomConfig::new(0.3, 0.0).is_err());
        assert!(DetectorSpec::new(0.0, 0.1).is_err());
        let ac = BathSpec::UniformAcceleration { alpha: 0.0 };
        assert!(single_atom_rate(&det(), &ac, &CAV, Direction::Up).is_err());
    }

    #[test]
    fn monopole_weights() {
        let (a, b) = monopole_elements(FRAC_PI_4, Direction::Up);
        assert!((a - b).abs() < 1e-15 && (a - 0.5f64.sqrt()).abs() < 1e-15);
        let (a, b) = monopole_elements(0.0, Direction::Up);
        assert_eq!((a, b), (0.0, 1.0));
        let (a, b) = monopole_elements(0.0, Direction::Down);
        assert_eq!((a, b), (1.0, 0.0));
    }

    #[test]
    fn small_ad_correction_vanishes_for_product_states() {
        let ac = BathSpec::UniformAcceleration { alpha: 0.5 };
        for theta in [0.0, PI / 2.0] {
            let cfg = TwoAtomConfig::new(theta, 0.4).unwrap();
            let e = two_atom_rate_small_ad(&det(), 0.5, &cfg, Direction::Up).unwrap();
            let x = two_atom_rate(&det(), &ac, &GeometrySpec::FreeSpace, &cfg, Direction::Up).unwrap();
            assert!((e.geometric_factor - 1.0 / TAU).abs() < 1e-16);
            assert!((x.geometric_factor - 1.0 / TAU).abs() < 1e-16);
        }
        let cfg = TwoAtomConfig::new(0.3, 2.0).unwrap();
        assert!(two_atom_rate_small_ad(&det(), 0.5, &cfg, Direction::Up).is_err());
    }
}
