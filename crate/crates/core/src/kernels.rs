//! Scalar kernels and the image sums built from them.
//!
//! All lengths are measured in units of `1/ω₀` and energies in units of `ω₀`,
//! so every output is a dimensionless multiple of `ω₀`.

use std::f64::consts::{PI, TAU};

use crate::error::{domain, Result};
use crate::quadrature;
use crate::series::{self, converge, detuned_cutoff, phase_detuning, window};

pub use crate::series::{KernelValue, SeriesPolicy};

/// Bose-Einstein occupation `1/(e^x - 1)`.
pub fn planck_occupation(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return domain(format!("occupation needs a positive energy ratio, got {x}"));
    }
    if x < 1e-8 {
        return Ok(1.0 / x - 0.5 + x / 12.0);
    }
    Ok(1.0 / x.exp_m1())
}

pub(crate) fn sinc(x: f64, threshold: f64) -> f64 {
    if x.abs() < threshold {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `sin(dE s)/(2π s)` extended evenly to negative `s`.
pub(crate) fn p_even(de: f64, s: f64, threshold: f64) -> f64 {
    de / TAU * sinc(de * s, threshold)
}

/// `sin(dE·s)/(2π s)`.
pub fn sinc_kernel(de: f64, s: f64) -> Result<f64> {
    check_energy(de)?;
    if !(s >= 0.0) {
        return domain(format!("sinc kernel separation must be non-negative, got {s}"));
    }
    Ok(p_even(de, s, series::DEFAULT_SINC_THRESHOLD))
}

fn check_energy(de: f64) -> Result<()> {
    if !(de > 0.0) || !de.is_finite() {
        return domain(format!("energy gap must be positive and finite, got {de}"));
    }
    Ok(())
}

fn check_length(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return domain(format!("{name} must be positive and finite, got {v}"));
    }
    Ok(())
}

/// `2 Σ_{n≥1} sin(n dE 2L)/(2π n 2L)` via its closed resummation.
pub fn boundary_sum_q(de: f64, two_l: f64, policy: &SeriesPolicy) -> Result<KernelValue> {
    policy.validate()?;
    check_length("cavity length", two_l)?;
    if !(de >= 0.0) || !de.is_finite() {
        return domain(format!("energy gap must be non-negative, got {de}"));
    }
    let m = (two_l * de).rem_euclid(TAU);
    if m == 0.0 {
        return Ok(KernelValue::degenerate(0.0));
    }
    Ok(KernelValue::exact((PI - m) / (2.0 * PI * two_l)))
}

/// The same series as [`boundary_sum_q`] summed directly with the smooth
/// cutoff. Used for cross-checks.
pub fn boundary_sum_q_direct(de: f64, two_l: f64, policy: &SeriesPolicy) -> Result<KernelValue> {
    policy.validate()?;
    check_energy(de)?;
    check_length("cavity length", two_l)?;
    let thr = policy.sinc_threshold;
    let delta = phase_detuning(de * two_l);
    if delta == 0.0 {
        return Ok(KernelValue::degenerate(0.0));
    }
    let f = |s: f64| p_even(de, s, thr);
    converge("boundary sum q", detuned_cutoff(delta), policy, |n| {
        2.0 * series::windowed_unilateral(&f, two_l, n)
    })
}

/// `Σ_n p(dE, offset - n·spacing)` over all integers `n`.
fn thermal_bilateral(
    what: &'static str,
    de: f64,
    offset: f64,
    spacing: f64,
    policy: &SeriesPolicy,
) -> Result<KernelValue> {
    let thr = policy.sinc_threshold;
    let delta = phase_detuning(de * spacing);
    if delta == 0.0 {
        // Every term carries the same sine, sin(dE·offset).
        let ratio = offset / spacing;
        if ratio.fract() == 0.0 {
            return Ok(KernelValue::degenerate(de / TAU));
        }
        let v = (de * offset).sin() / (2.0 * spacing) / (PI * ratio).tan();
        return Ok(KernelValue::degenerate(v));
    }
    let f = |s: f64| p_even(de, s, thr);
    let offset_terms = (4.0 * offset.abs() / spacing).ceil() as usize + 16;
    let n0 = detuned_cutoff(delta).max(offset_terms);
    let mut v = converge(what, n0, policy, |n| {
        series::windowed_bilateral(&f, offset, spacing, n)
    })?;
    v.degenerate = hits_lattice(offset, spacing);
    Ok(v)
}

fn hits_lattice(offset: f64, spacing: f64) -> bool {
    (offset / spacing).fract() == 0.0
}

/// `Σ_n p(dE, 2z₀ - n·2L)`
pub fn image_sum_r(de: f64, two_z0: f64, two_l: f64, policy: &SeriesPolicy) -> Result<KernelValue> {
    policy.validate()?;
    check_energy(de)?;
    check_length("cavity length", two_l)?;
    if !(two_z0 > 0.0 && two_z0 < two_l) {
        return domain(format!(
            "atom must sit strictly inside the cavity (2z0 = {two_z0}, 2L = {two_l})"
        ));
    }
    thermal_bilateral("image sum r", de, two_z0, two_l, policy)
}

/// `Σ_n p(dE, 2z₀ + sep - n·2L)`
pub fn image_sum_s(
    de: f64,
    two_z0: f64,
    sep: f64,
    two_l: f64,
    policy: &SeriesPolicy,
) -> Result<KernelValue> {
    policy.validate()?;
    check_energy(de)?;
    check_length("cavity length", two_l)?;
    check_length("atom offset", two_z0)?;
    if !(sep >= 0.0) || !sep.is_finite() {
        return domain(format!("separation must be non-negative, got {sep}"));
    }
    thermal_bilateral("image sum s", de, two_z0 + sep, two_l, policy)
}

/// `Σ_n p(dE, d - n·2L)`
pub fn image_sum_t(de: f64, d: f64, two_l: f64, policy: &SeriesPolicy) -> Result<KernelValue> {
    policy.validate()?;
    check_energy(de)?;
    check_length("cavity length", two_l)?;
    if !(d >= 0.0) || !d.is_finite() {
        return domain(format!("separation must be non-negative, got {d}"));
    }
    thermal_bilateral("image sum t", de, d, two_l, policy)
}

/// `asinh(y)/y`, accurate near zero.
fn asinh_ratio(y: f64) -> f64 {
    if y < 1e-4 {
        let y2 = y * y;
        1.0 - y2 / 6.0 + 3.0 * y2 * y2 / 40.0
    } else {
        y.asinh() / y
    }
}

/// `sin((2dE/α) asinh(αz)) / (4π z sqrt(1 + α²z²))`, evenly extended.
pub(crate) fn g_even(de: f64, alpha: f64, z: f64, threshold: f64) -> f64 {
    let z = z.abs();
    if alpha == 0.0 {
        return p_even(de, 2.0 * z, threshold);
    }
    let y = alpha * z;
    let a = asinh_ratio(y);
    let phase = 2.0 * de * z * a;
    de / TAU * sinc(phase, threshold) * a / y.hypot(1.0)
}

/// Accelerated-frame kernel.
pub fn accel_kernel(de: f64, alpha: f64, z: f64) -> Result<f64> {
    check_energy(de)?;
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return domain(format!("acceleration must be non-negative, got {alpha}"));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return domain(format!("accelerated kernel argument must be non-negative, got {z}"));
    }
    Ok(g_even(de, alpha, z, series::DEFAULT_SINC_THRESHOLD))
}

/// `∫_{u0}^{∞} sin(c u)/sinh(u) du`
fn sine_over_sinh_tail(c: f64, u0: f64) -> f64 {
    if u0 < 1.0 {
        let head = quadrature::integrate(
            |u| if u == 0.0 { c } else { (c * u).sin() / u.sinh() },
            0.0,
            u0,
            ((c * u0).abs() / 2.0).ceil() as usize + 2,
        );
        return 0.5 * PI * (0.5 * PI * c).tanh() - head;
    }
    // 1/sinh u = 2 Σ_k e^{-(2k+1)u}
    let mut total = 0.0;
    let (s, co) = (c * u0).sin_cos();
    for k in 0.. {
        let m = (2 * k + 1) as f64;
        let e = (-m * u0).exp();
        let term = 2.0 * e * (m * s + c * co) / (m * m + c * c);
        total += term;
        if e < 1e-18 * total.abs().max(1e-300) || e < 1e-300 {
            break;
        }
    }
    total
}

/// One-sided correction `∫_{N/2}^{∞} (1 - w(t/N)) g(t h + shift) dt`.
///
/// For large `α` the terms decay smoothly like `1/n²` without oscillation,
/// which the window alone only captures at `O(1/N)`. Adding the integral of
/// the discarded part removes that error.
fn accel_window_correction(de: f64, alpha: f64, h: f64, shift: f64, n: usize) -> f64 {
    let nf = n as f64;
    let c = 2.0 * de / alpha;
    let z1 = 0.5 * nf * h + shift;
    let z2 = nf * h + shift;
    let local_rate = 2.0 * de * h / (alpha * z1).hypot(1.0);
    if local_rate * 0.5 * nf > 400.0 {
        return 0.0;
    }
    let u1 = (alpha * z1).asinh();
    let u2 = (alpha * z2).asinh();
    let panels = (c * (u2 - u1) / 2.0).ceil() as usize + 16;
    if panels > 20_000 {
        return 0.0;
    }
    let body = quadrature::integrate(
        |u| {
            let t = (u.sinh() / alpha - shift) / h;
            (1.0 - window(t / nf)) * (c * u).sin() / u.sinh()
        },
        u1,
        u2,
        panels,
    );
    (body + sine_over_sinh_tail(c, u2)) / (2.0 * TAU * h)
}

/// Smallest cutoff that keeps the window clear of resonant image crossings.
fn accel_cutoff(de: f64, alpha: f64, offset: f64, h: f64) -> usize {
    let b = 2.0 * de * h;
    let offset_terms = (4.0 * offset.abs() / h).ceil() as usize + 64;
    if b <= PI {
        return offset_terms;
    }
    // Past this index the local phase advance drops below π.
    let t_pi = ((b / PI).powi(2) - 1.0).sqrt() / (alpha * h);
    let by_phase = 2.0 * t_pi + 2.0 * offset.abs() / h + 64.0;
    let delta = phase_detuning(b);
    let by_detuning = detuned_cutoff(delta);
    let drift = b * (2.0 * alpha * h * by_detuning as f64).powi(2);
    let n = if drift < 0.1 * delta && (by_detuning as f64) < by_phase {
        by_detuning as f64
    } else {
        by_phase
    };
    if n > 1e15 {
        usize::MAX
    } else {
        (n.ceil() as usize).max(offset_terms)
    }
}

fn check_accel(de: f64, alpha: f64, half_l: f64, policy: &SeriesPolicy) -> Result<()> {
    policy.validate()?;
    check_energy(de)?;
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return domain(format!("acceleration must be non-negative, got {alpha}"));
    }
    check_length("half cavity length", half_l)
}

/// `Σ_n g(offset - n h)` over all integers `n`, for `α > 0`.
fn accel_bilateral(
    what: &'static str,
    de: f64,
    alpha: f64,
    offset: f64,
    h: f64,
    policy: &SeriesPolicy,
) -> Result<KernelValue> {
    let thr = policy.sinc_threshold;
    let f = |z: f64| g_even(de, alpha, z, thr);
    let n0 = accel_cutoff(de, alpha, offset, h);
    let mut v = converge(what, n0, policy, |n| {
        series::windowed_bilateral(&f, offset, h, n)
            + accel_window_correction(de, alpha, h, -offset, n)
            + accel_window_correction(de, alpha, h, offset, n)
    })?;
    v.degenerate = hits_lattice(offset, h);
    Ok(v)
}

/// `2 Σ_{n≥1} g(dE, α, n L/2)`
pub fn accel_sum_f(de: f64, alpha: f64, half_l: f64, policy: &SeriesPolicy) -> Result<KernelValue> {
    check_accel(de, alpha, half_l, policy)?;
    if alpha == 0.0 {
        return boundary_sum_q(de, 2.0 * half_l, policy);
    }
    let thr = policy.sinc_threshold;
    let f = |z: f64| g_even(de, alpha, z, thr);
    let n0 = accel_cutoff(de, alpha, 0.0, half_l);
    converge("accelerated sum f", n0, policy, |n| {
        2.0 * (series::windowed_unilateral(&f, half_l, n)
            + accel_window_correction(de, alpha, half_l, 0.0, n))
    })
}

/// `Σ_n g(dE, α, z₀ - n L/2)`
pub fn accel_sum_h(
    de: f64,
    alpha: f64,
    z0: f64,
    half_l: f64,
    policy: &SeriesPolicy,
) -> Result<KernelValue> {
    check_accel(de, alpha, half_l, policy)?;
    check_length("atom offset", z0)?;
    if alpha == 0.0 {
        return thermal_bilateral("image sum r", de, 2.0 * z0, 2.0 * half_l, policy);
    }
    accel_bilateral("accelerated sum h", de, alpha, z0, half_l, policy)
}

/// `Σ_n g(dE, α, z₀ + sep - n L/2)`
pub fn accel_sum_m(
    de: f64,
    alpha: f64,
    z0: f64,
    sep: f64,
    half_l: f64,
    policy: &SeriesPolicy,
) -> Result<KernelValue> {
    check_accel(de, alpha, half_l, policy)?;
    check_length("atom offset", z0)?;
    if !(sep >= 0.0) || !sep.is_finite() {
        return domain(format!("separation must be non-negative, got {sep}"));
    }
    let offset = z0 + sep;
    if alpha == 0.0 {
        return thermal_bilateral("image sum s", de, 2.0 * offset, 2.0 * half_l, policy);
    }
    accel_bilateral("accelerated sum m", de, alpha, offset, half_l, policy)
}

/// `Σ_n g(dE, α, d/2 - n L/2)`
pub fn accel_sum_n(
    de: f64,
    alpha: f64,
    half_d: f64,
    half_l: f64,
    policy: &SeriesPolicy,
) -> Result<KernelValue> {
    check_accel(de, alpha, half_l, policy)?;
    if !(half_d >= 0.0) || !half_d.is_finite() {
        return domain(format!("separation must be non-negative, got {half_d}"));
    }
    if alpha == 0.0 {
        return thermal_bilateral("image sum t", de, 2.0 * half_d, 2.0 * half_l, policy);
    }
    accel_bilateral("accelerated sum n", de, alpha, half_d, half_l, policy)
}
