//! Independent brute-force references used by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// sin(E s)/(2π s) straight from the definition.
pub fn p_ref(e: f64, s: f64) -> f64 {
    if s == 0.0 {
        e / (2.0 * PI)
    } else {
        (e * s).sin() / (2.0 * PI * s)
    }
}

/// Accelerated kernel straight from the definition.
pub fn g_ref(e: f64, alpha: f64, z: f64) -> f64 {
    let z = z.abs();
    if z == 0.0 {
        return e / (2.0 * PI);
    }
    ((2.0 * e / alpha) * (alpha * z).asinh()).sin() / (4.0 * PI * z * (1.0 + alpha * alpha * z * z).sqrt())
}

fn neville_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    for k in 1..xs.len() {
        for i in 0..xs.len() - k {
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
        }
    }
    p[0]
}

const ETAS: [f64; 5] = [4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4];

/// Abel mean `Σ_n r^{|n|} f(a - n P)` extrapolated to `r → 1` (Richardson in `1 - r`).
pub fn abel_bilateral(f: impl Fn(f64) -> f64, offset: f64, spacing: f64) -> f64 {
    abel_bilateral_scaled(f, offset, spacing, 1.0)
}

/// As [`abel_bilateral`] with the `1 - r` ladder shrunk by `scale`; needed when the
/// phase per step is within `~1e-2` of a multiple of 2π.
pub fn abel_bilateral_scaled(f: impl Fn(f64) -> f64, offset: f64, spacing: f64, scale: f64) -> f64 {
    let etas: Vec<f64> = ETAS.iter().map(|e| e * scale).collect();
    let ys: Vec<f64> = etas
        .iter()
        .map(|&eta| {
            let r: f64 = 1.0 - eta;
            let k_max = (45.0 / eta) as usize;
            let mut s = 0.0;
            let mut w = 1.0;
            let mut terms = Vec::with_capacity(k_max);
            for k in 1..=k_max {
                w *= r;
                let kp = k as f64 * spacing;
                terms.push(w * (f(offset - kp) + f(offset + kp)));
            }
            for t in terms.iter().rev() {
                s += t;
            }
            s + f(offset)
        })
        .collect();
    neville_zero(&etas, &ys)
}

/// Abel mean of `Σ_{n≥1} f(n P)`, extrapolated the same way.
pub fn abel_unilateral(f: impl Fn(f64) -> f64, spacing: f64) -> f64 {
    let ys: Vec<f64> = ETAS
        .iter()
        .map(|&eta| {
            let r: f64 = 1.0 - eta;
            let k_max = (45.0 / eta) as usize;
            let mut terms = Vec::with_capacity(k_max);
            let mut w = 1.0;
            for k in 1..=k_max {
                w *= r;
                terms.push(w * f(k as f64 * spacing));
            }
            terms.iter().rev().sum::<f64>()
        })
        .collect();
    neville_zero(&ETAS, &ys)
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// `∫_U^∞ sin(c u)/sinh u du` by composite Simpson out to `U + 45`.
fn log_phase_tail(c: f64, u0: f64) -> f64 {
    let n = 400_000usize;
    let h = 45.0 / n as f64;
    let f = |u: f64| (c * u).sin() / u.sinh();
    let mut s = f(u0) + f(u0 + 45.0);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(u0 + i as f64 * h);
    }
    s * h / 3.0
}

/// `Σ_n g(a - n h)` for the accelerated kernel: direct terms out to `|z| ≈ N h`,
/// then the Euler–Maclaurin tail (integral minus half end term) on each side.
pub fn accel_bilateral_ref(e: f64, alpha: f64, offset: f64, spacing: f64) -> f64 {
    let n = 1_000_000usize;
    let c = 2.0 * e / alpha;
    let mut terms = Vec::with_capacity(2 * n + 1);
    for k in -(n as i64)..=(n as i64) {
        terms.push(g_ref(e, alpha, offset - k as f64 * spacing));
    }
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let mut s: f64 = terms.iter().sum();
    for z_end in [offset + n as f64 * spacing, n as f64 * spacing - offset] {
        let z_end = z_end.abs();
        let u = (alpha * z_end).asinh();
        s += log_phase_tail(c, u) / (4.0 * PI * spacing) - 0.5 * g_ref(e, alpha, z_end);
    }
    s
}
