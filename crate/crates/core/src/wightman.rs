//! Thermal positive-frequency Wightman functions of the massless scalar field.
//!
//! The free-space function is available as the sum over imaginary-time
//! images and in closed coth form. The cavity function superposes free-space
//! functions over the Dirichlet image lattice.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::series::{window, SeriesPolicy};

/// Separation between two spacetime points. The longitudinal coordinates are
/// kept separately because the cavity function depends on `z1 + z2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeSeparation {
    pub dt: f64,
    pub dx: f64,
    pub dy: f64,
    pub z1: f64,
    pub z2: f64,
}

impl SpacetimeSeparation {
    pub fn new(dt: f64, dx: f64, dy: f64, z1: f64, z2: f64) -> Self {
        Self { dt, dx, dy, z1, z2 }
    }

    /// Purely temporal separation at a fixed point.
    pub fn at_point(dt: f64, z: f64) -> Self {
        Self::new(dt, 0.0, 0.0, z, z)
    }

    pub fn transverse(&self) -> f64 {
        self.dx.hypot(self.dy)
    }

    pub fn distance(&self) -> f64 {
        self.transverse().hypot(self.z1 - self.z2)
    }

    fn tau(&self, eps: f64) -> Complex64 {
        Complex64::new(self.dt, -eps)
    }

    fn check(&self) -> Result<()> {
        let all = [self.dt, self.dx, self.dy, self.z1, self.z2];
        if all.iter().any(|v| !v.is_finite()) {
            return domain("separation components must be finite");
        }
        Ok(())
    }
}

/// The `iε` regulator together with the truncation policy for image sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegulatorSpec {
    pub epsilon: f64,
    pub image_policy: SeriesPolicy,
}

impl RegulatorSpec {
    pub fn new(epsilon: f64, image_policy: SeriesPolicy) -> Result<Self> {
        let r = Self {
            epsilon,
            image_policy,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return domain(format!("regulator must be positive, got {}", self.epsilon));
        }
        self.image_policy.validate()
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0) {
        return domain(format!("inverse temperature must be positive, got {beta}"));
    }
    Ok(())
}

const FOUR_PI2: f64 = 4.0 * PI * PI;

/// Zero-temperature function `1/(4π²(r² - τ²))`.
pub fn vacuum_wightman(tau: Complex64, r: f64) -> Complex64 {
    1.0 / (FOUR_PI2 * (r * r - tau * tau))
}

fn coth(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return -coth(-z);
    }
    let e = (-2.0 * z).exp();
    (1.0 + e) / (1.0 - e)
}

fn csch2(z: Complex64) -> Complex64 {
    let z = if z.re < 0.0 { -z } else { z };
    let e = (-2.0 * z).exp();
    4.0 * e / ((1.0 - e) * (1.0 - e))
}

/// Bernoulli numbers `B_2 ... B_20`.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Hurwitz zeta `Σ_{k≥0} (k + a)^{-s}` for `s > 1`, `a > 0`.
pub(crate) fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    // Euler-Maclaurin needs a ≳ s; peel off the leading terms first.
    let mut a = a;
    let mut head = 0.0;
    let start = a.max(17.0).max(2.0 * s);
    while a < start {
        head += a.powf(-s);
        a += 1.0;
    }
    head + euler_maclaurin_zeta(s, a)
}

fn euler_maclaurin_zeta(s: f64, a: f64) -> f64 {
    let mut total = a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    let mut rising = s; // s (s+1) ... (s + 2k - 2)
    let mut fact = 2.0; // (2k)!
    let mut apow = a.powf(-s - 1.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        let term = b / fact * rising * apow;
        total += term;
        if term.abs() < 1e-17 * total.abs() {
            break;
        }
        let k2 = (2 * (k + 1)) as f64;
        rising *= (s + k2 - 1.0) * (s + k2);
        fact *= (k2 + 1.0) * (k2 + 2.0);
        apow /= a * a;
    }
    total
}

/// Image-series form at complex time `tau`.
///
/// Thermal images `m` and `-m` are paired; beyond `M` the pairs are summed
/// through their expansion in `1/(mβ)²` with Hurwitz zeta coefficients.
pub fn thermal_wightman_series_at(
    tau: Complex64,
    r: f64,
    beta: f64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    check_beta(beta)?;
    if !(r >= 0.0) {
        return domain(format!("spatial distance must be non-negative, got {r}"));
    }
    let mut g = -1.0 / (tau * tau - r * r);
    if beta.is_infinite() {
        return Ok(g / FOUR_PI2);
    }
    let span = (tau.norm() + r) / beta;
    let m_max = (4.0 * span + 16.0).ceil();
    if m_max > policy.max_terms as f64 {
        return Err(Error::NonConvergence {
            what: "thermal image series",
            terms: policy.max_terms,
            tail: f64::INFINITY,
        });
    }
    let m_max = m_max as usize;
    let t2 = tau * tau;
    let c = t2 - r * r;
    let mut head = Complex64::new(0.0, 0.0);
    for m in (1..=m_max).rev() {
        let mb = m as f64 * beta;
        let a = c - mb * mb;
        head += 2.0 * a / (a * a + 4.0 * t2 * mb * mb);
    }
    // pair(m) = -2 v (1 - c v) / (1 + d1 v + d2 v²), v = 1/(mβ)²
    let d1 = 2.0 * (t2 + r * r);
    let d2 = c * c;
    let a_start = (m_max + 1) as f64;
    let mut tail = Complex64::new(0.0, 0.0);
    let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let inv_b2 = 1.0 / (beta * beta);
    let mut bpow = inv_b2;
    for j in 0..40 {
        let term = cur * bpow * hurwitz_zeta((2 * j + 2) as f64, a_start);
        tail += term;
        let next = if j == 0 {
            -c - d1
        } else {
            -d1 * cur - d2 * prev
        };
        prev = cur;
        cur = next;
        bpow *= inv_b2;
        if term.norm() < 1e-18 * (head.norm() + tail.norm()) {
            break;
        }
    }
    g -= head - 2.0 * tail;
    Ok(g / FOUR_PI2)
}

/// Image-series form at `τ = dt - iε`.
pub fn thermal_wightman_series(
    sep: &SpacetimeSeparation,
    beta: f64,
    reg: &RegulatorSpec,
) -> Result<Complex64> {
    sep.check()?;
    reg.validate()?;
    thermal_wightman_series_at(sep.tau(reg.epsilon), sep.distance(), beta, &reg.image_policy)
}

/// Two-coth closed form at complex time.
pub fn thermal_wightman_coth_at(tau: Complex64, r: f64, beta: f64) -> Result<Complex64> {
    check_beta(beta)?;
    if !(r > 0.0) {
        return domain("coth form needs a nonzero spatial separation");
    }
    if beta.is_infinite() {
        return Ok(vacuum_wightman(tau, r));
    }
    let k = PI / beta;
    let s = coth(k * (r - tau)) + coth(k * (r + tau));
    Ok(s * (k / (2.0 * r)) / FOUR_PI2)
}

/// Two-coth closed form at `τ = dt - iε`.
pub fn thermal_wightman_coth(
    sep: &SpacetimeSeparation,
    beta: f64,
    reg: &RegulatorSpec,
) -> Result<Complex64> {
    sep.check()?;
    reg.validate()?;
    thermal_wightman_coth_at(sep.tau(reg.epsilon), sep.distance(), beta)
}

/// Spatially coincident limit `-csch²(πτ/β)/(4β²)`.
pub fn coincident_wightman(tau: Complex64, beta: f64) -> Result<Complex64> {
    check_beta(beta)?;
    if beta.is_infinite() {
        return Ok(vacuum_wightman(tau, 0.0));
    }
    Ok(-csch2(PI * tau / beta) / (4.0 * beta * beta))
}

/// Free-space thermal function, choosing whichever form is accurate.
pub(crate) fn free_thermal(tau: Complex64, r: f64, beta: f64, policy: &SeriesPolicy) -> Result<Complex64> {
    if beta.is_infinite() {
        return Ok(vacuum_wightman(tau, r));
    }
    if r == 0.0 {
        coincident_wightman(tau, beta)
    } else if r < 0.1 * beta {
        thermal_wightman_series_at(tau, r, beta, policy)
    } else {
        thermal_wightman_coth_at(tau, r, beta)
    }
}

/// Free function minus its image in a Dirichlet mirror at `z = 0`.
pub fn mirror_thermal_wightman(
    sep: &SpacetimeSeparation,
    beta: f64,
    reg: &RegulatorSpec,
) -> Result<Complex64> {
    sep.check()?;
    reg.validate()?;
    let tau = sep.tau(reg.epsilon);
    let rho = sep.transverse();
    let direct = free_thermal(tau, rho.hypot(sep.z1 - sep.z2), beta, &reg.image_policy)?;
    let image = free_thermal(tau, rho.hypot(sep.z1 + sep.z2), beta, &reg.image_policy)?;
    Ok(direct - image)
}

/// Windowed sum of one image family `Σ_n w(|x_n|/X) G(τ, sqrt(ρ² + x_n²))`,
/// `x_n = offset - n·2L`.
fn image_family(
    tau: Complex64,
    rho: f64,
    offset: f64,
    two_l: f64,
    extent: f64,
    beta: f64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let lo = ((offset - extent) / two_l).ceil() as i64;
    let hi = ((offset + extent) / two_l).floor() as i64;
    let mut terms: Vec<(f64, Complex64)> = Vec::with_capacity((hi - lo + 1).max(0) as usize);
    for n in lo..=hi {
        let x = offset - n as f64 * two_l;
        let w = window(x / extent);
        if w == 0.0 {
            continue;
        }
        terms.push((x.abs(), w * free_thermal(tau, rho.hypot(x), beta, policy)?));
    }
    // Far images first; ties keep a fixed order so mirrored families cancel exactly.
    terms.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(terms.into_iter().map(|t| t.1).sum())
}

/// Thermal function between two points inside a Dirichlet cavity `0 ≤ z ≤ L`.
///
/// `Σ_n [G(x_n) - G(y_n)]` with `x_n = z1 - z2 - 2nL`, `y_n = z1 + z2 - 2nL`.
/// Both families carry the same smooth cutoff in `|x|`, so wall nodes and the
/// `z ↦ L - z` symmetry hold term by term. The cutoff extent is doubled until
/// successive values agree.
pub fn cavity_thermal_wightman(
    sep: &SpacetimeSeparation,
    beta: f64,
    l: f64,
    reg: &RegulatorSpec,
) -> Result<Complex64> {
    sep.check()?;
    reg.validate()?;
    check_beta(beta)?;
    if !(l > 0.0) || !l.is_finite() {
        return domain(format!("cavity length must be positive, got {l}"));
    }
    for z in [sep.z1, sep.z2] {
        if !(0.0..=l).contains(&z) {
            return domain(format!("point z = {z} lies outside the cavity [0, {l}]"));
        }
    }
    let tau = sep.tau(reg.epsilon);
    let rho = sep.transverse();
    let two_l = 2.0 * l;
    let policy = &reg.image_policy;
    let beta_scale = if beta.is_finite() { beta } else { 0.0 };
    let reach = 4.0 * (tau.norm() + rho) + 4.0 * beta_scale + 4.0 * l;
    let mut n = ((2.0 * reach / two_l).ceil() as usize).max(8);
    let eval = |n: usize| -> Result<Complex64> {
        let extent = n as f64 * two_l;
        let d = image_family(tau, rho, sep.z1 - sep.z2, two_l, extent, beta, policy)?;
        let m = image_family(tau, rho, sep.z1 + sep.z2, two_l, extent, beta, policy)?;
        Ok(d - m)
    };
    let mut prev = eval(n)?;
    loop {
        let next = n * 2;
        if next > policy.max_terms {
            return Err(Error::NonConvergence {
                what: "cavity image sum",
                terms: policy.max_terms,
                tail: f64::INFINITY,
            });
        }
        let cur = eval(next)?;
        let diff = (cur - prev).norm();
        if diff <= policy.tolerance(cur.norm()) {
            return Ok(cur);
        }
        prev = cur;
        n = next;
    }
}

/// `|G(dt - iβ) - G(-dt)|` for the series form, with the continuation taken
/// from the regulated side so both sides are evaluated at conjugate offsets.
pub fn kms_residual(sep: &SpacetimeSeparation, beta: f64, reg: &RegulatorSpec) -> Result<f64> {
    sep.check()?;
    reg.validate()?;
    check_beta(beta)?;
    if beta.is_infinite() {
        return domain("KMS condition needs a finite temperature");
    }
    let r = sep.distance();
    let eps = reg.epsilon;
    let shifted = Complex64::new(sep.dt, -beta + eps);
    let lhs = thermal_wightman_series_at(shifted, r, beta, &reg.image_policy)?;
    let rhs = thermal_wightman_series_at(Complex64::new(-sep.dt, -eps), r, beta, &reg.image_policy)?;
    Ok((lhs - rhs).norm())
}
