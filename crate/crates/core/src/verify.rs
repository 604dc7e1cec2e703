//! Invariant suites shared by the test harness and the `verify` command.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_4, PI, TAU};

use crate::error::{domain, Result};
use crate::oracle::{self, QuadratureSpec};
use crate::rates::{
    self, BathSpec, DetectorSpec, Direction, GeometrySpec, TwoAtomConfig,
};
use crate::series::SeriesPolicy;
use crate::wightman::{self, RegulatorSpec, SpacetimeSeparation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Balance,
    Equivalence,
    Limits,
    Oracle,
    Wightman,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Balance,
        Suite::Equivalence,
        Suite::Limits,
        Suite::Oracle,
        Suite::Wightman,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Balance => "balance",
            Suite::Equivalence => "equivalence",
            Suite::Limits => "limits",
            Suite::Oracle => "oracle",
            Suite::Wightman => "wightman",
        }
    }

    /// Parses a suite name; `all` yields every suite.
    pub fn parse(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Self::ALL.to_vec());
        }
        Self::ALL
            .iter()
            .copied()
            .find(|s| s.name() == name)
            .map(|s| vec![s])
            .ok_or_else(|| crate::Error::Domain(format!("unknown suite {name:?}")))
    }

    pub fn run(self) -> Vec<Check> {
        match self {
            Suite::Balance => balance(),
            Suite::Equivalence => equivalence(),
            Suite::Limits => limits(),
            Suite::Oracle => oracle_suite(),
            Suite::Wightman => wightman_suite(),
        }
    }
}

/// Outcome of one check. `worst` is compared against `tolerance` with the
/// sense given by `lower_bound`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
    /// True when the check requires `worst > tolerance`.
    pub lower_bound: bool,
    pub error: Option<String>,
}

impl Check {
    fn upper(suite: Suite, name: impl Into<String>, worst: Result<f64>, tolerance: f64) -> Self {
        Self::build(suite, name, worst, tolerance, false)
    }

    fn lower(suite: Suite, name: impl Into<String>, worst: Result<f64>, tolerance: f64) -> Self {
        Self::build(suite, name, worst, tolerance, true)
    }

    fn build(suite: Suite, name: impl Into<String>, worst: Result<f64>, tolerance: f64, lower: bool) -> Self {
        let (worst, passed, error) = match worst {
            Ok(w) => {
                let ok = if lower { w > tolerance } else { w <= tolerance };
                (w, ok && w.is_finite(), None)
            }
            Err(e) => (f64::NAN, false, Some(e.to_string())),
        };
        Self {
            suite: suite.name(),
            name: name.into(),
            passed,
            worst,
            tolerance,
            lower_bound: lower,
            error,
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(a.abs())
    }
}

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random scenario covering every geometry, frame and atom count.
#[derive(Debug, Clone, Copy)]
pub struct Scenario {
    pub bath: BathSpec,
    pub geom: GeometrySpec,
    pub cfg: Option<TwoAtomConfig>,
}

pub fn random_scenario(r: &mut StdRng, index: usize) -> Scenario {
    let bath = if index % 2 == 0 {
        BathSpec::Thermal {
            temperature: r.gen_range(0.2..3.0),
        }
    } else {
        BathSpec::UniformAcceleration {
            alpha: r.gen_range(0.5..15.0),
        }
    };
    let cfg = if (index / 2) % 2 == 0 {
        None
    } else {
        Some(TwoAtomConfig {
            theta: r.gen_range(0.0..PI),
            d: r.gen_range(0.1..1.0),
        })
    };
    let extent = cfg.map_or(0.0, |c| c.d);
    let geom = match (index / 4) % 3 {
        0 => GeometrySpec::FreeSpace,
        1 => GeometrySpec::SingleBoundary {
            z0: r.gen_range(0.1..5.0),
        },
        _ => {
            let length = extent + r.gen_range(1.0..12.0);
            let z0 = r.gen_range(0.05..0.95) * (length - extent);
            GeometrySpec::Cavity { length, z0 }
        }
    };
    Scenario { bath, geom, cfg }
}

pub fn scenario_rate(det: &DetectorSpec, s: &Scenario, dir: Direction) -> Result<rates::RateResult> {
    match &s.cfg {
        None => rates::single_atom_rate(det, &s.bath, &s.geom, dir),
        Some(c) => rates::two_atom_rate(det, &s.bath, &s.geom, c, dir),
    }
}

fn worst_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for v in values {
        worst = worst.max(v?);
    }
    Ok(worst)
}

fn det() -> DetectorSpec {
    DetectorSpec {
        omega0: 1.0,
        lambda: 0.1,
    }
}

/// Up/down ratio against the Boltzmann factor over random scenarios.
pub fn balance() -> Vec<Check> {
    let mut r = rng(11);
    let scenarios: Vec<Scenario> = (0..120).map(|i| random_scenario(&mut r, i)).collect();
    let worst = worst_of(scenarios.iter().map(|s| {
        let up = scenario_rate(&det(), s, Direction::Up)?;
        let down = scenario_rate(&det(), s, Direction::Down)?;
        let expect = rates::detailed_balance_ratio(&det(), &s.bath)?;
        Ok(rel(up.rate / down.rate, expect))
    }));
    let t0 = rates::detailed_balance_ratio(&det(), &BathSpec::Thermal { temperature: 0.0 });
    vec![
        Check::upper(Suite::Balance, "up/down = exp(-w0/T_eff), 120 scenarios", worst, 1e-12),
        Check::upper(Suite::Balance, "zero temperature ratio", t0, 0.0),
    ]
}

/// Relative gap between thermal free-space and accelerated two-atom
/// geometric factors at `αd` (`ω₀d = 1`, `θ = π/4`).
pub fn two_atom_frame_gap(ad: f64) -> Result<f64> {
    let cfg = TwoAtomConfig { theta: FRAC_PI_4, d: 1.0 };
    let p = SeriesPolicy::default();
    let th = rates::two_atom_geometric_factor(1.0, &BathSpec::Thermal { temperature: ad / TAU }, &GeometrySpec::FreeSpace, &cfg, &p)?;
    let ac = rates::two_atom_geometric_factor(1.0, &BathSpec::UniformAcceleration { alpha: ad }, &GeometrySpec::FreeSpace, &cfg, &p)?;
    Ok(rel(ac.value, th.value))
}

/// Relative error of the small-`αd` expansion against the exact accelerated factor.
pub fn small_ad_error(ad: f64) -> Result<f64> {
    let cfg = TwoAtomConfig { theta: FRAC_PI_4, d: 1.0 };
    let d = DetectorSpec { omega0: 1.0, lambda: 1.0 };
    let exact = rates::two_atom_rate(&d, &BathSpec::UniformAcceleration { alpha: ad }, &GeometrySpec::FreeSpace, &cfg, Direction::Down)?;
    let approx = rates::two_atom_rate_small_ad(&d, ad, &cfg, Direction::Down)?;
    Ok(rel(approx.geometric_factor, exact.geometric_factor))
}

pub fn equivalence() -> Vec<Check> {
    let s = Suite::Equivalence;
    let fdu = worst_of([0.3, 1.0, 2.5].iter().flat_map(|&t| {
        [Direction::Up, Direction::Down].into_iter().map(move |dir| {
            let th = rates::single_atom_rate(&det(), &BathSpec::Thermal { temperature: t }, &GeometrySpec::FreeSpace, dir)?;
            let ac = rates::single_atom_rate(&det(), &BathSpec::UniformAcceleration { alpha: TAU * t }, &GeometrySpec::FreeSpace, dir)?;
            Ok(rel(th.rate, ac.rate))
        })
    }));
    let cav = GeometrySpec::Cavity { length: 3.2, z0: 0.8 };
    let th_bath = BathSpec::Thermal { temperature: 1.0 };
    let ac_bath = BathSpec::UniformAcceleration { alpha: TAU };
    let pair = |b: &BathSpec| -> Result<(f64, f64)> {
        let up = rates::single_atom_rate(&det(), b, &cav, Direction::Up)?.rate;
        let down = rates::single_atom_rate(&det(), b, &cav, Direction::Down)?.rate;
        Ok((up, down))
    };
    let gap = pair(&th_bath).and_then(|t| pair(&ac_bath).map(|a| rel(t.0, a.0)));
    let ratio = pair(&th_bath).and_then(|t| pair(&ac_bath).map(|a| rel(t.0 / t.1, a.0 / a.1)));
    let scaling = two_atom_frame_gap(1e-2).and_then(|a| two_atom_frame_gap(5e-3).map(|b| (a / b / 4.0 - 1.0).abs()));
    let exponent = small_ad_error(2e-2).and_then(|a| small_ad_error(1e-2).map(|b| (a / b).log2()));
    vec![
        Check::upper(s, "free-space thermal vs accelerated single-atom rates (relative)", fdu, 1e-14),
        Check::lower(s, "cavity rates differ between frames (relative gap)", gap, 1e-3),
        Check::upper(s, "cavity up/down ratios agree between frames", ratio, 1e-12),
        Check::upper(s, "two-atom frame gap scales as (ad)^2 (|ratio/4 - 1|)", scaling, 0.1),
        Check::lower(s, "small-ad expansion error exponent", exponent, 3.5),
    ]
}

/// Geometric factor for a scenario (single atom if `cfg` is `None`).
fn factor(bath: &BathSpec, geom: &GeometrySpec, cfg: Option<&TwoAtomConfig>) -> Result<f64> {
    let p = SeriesPolicy::default();
    Ok(match cfg {
        None => rates::single_atom_geometric_factor(1.0, bath, geom, &p)?.value,
        Some(c) => rates::two_atom_geometric_factor(1.0, bath, geom, c, &p)?.value,
    })
}

/// Relative deviations of the cavity → mirror and mirror → free-space collapses.
pub fn limit_deviations(bath: &BathSpec, cfg: Option<&TwoAtomConfig>) -> Result<(f64, f64)> {
    let z0 = 0.8;
    let cav = factor(bath, &GeometrySpec::Cavity { length: 1e4, z0 }, cfg)?;
    let mirror = factor(bath, &GeometrySpec::SingleBoundary { z0 }, cfg)?;
    let far = factor(bath, &GeometrySpec::SingleBoundary { z0: 1e4 }, cfg)?;
    let free = factor(bath, &GeometrySpec::FreeSpace, cfg)?;
    Ok((rel(cav, mirror), rel(far, free)))
}

pub fn limits() -> Vec<Check> {
    let s = Suite::Limits;
    let two = TwoAtomConfig { theta: 0.6, d: 0.4 };
    let mut out = Vec::new();
    for (bname, bath) in [
        ("thermal", BathSpec::Thermal { temperature: 1.0 }),
        ("accelerated", BathSpec::UniformAcceleration { alpha: TAU }),
    ] {
        for (aname, cfg) in [("one atom", None), ("two atoms", Some(&two))] {
            let dev = limit_deviations(&bath, cfg);
            out.push(Check::upper(s, format!("{bname}, {aname}: cavity L=1e4 -> mirror"), dev.clone().map(|d| d.0), 1e-3));
            out.push(Check::upper(s, format!("{bname}, {aname}: mirror z0=1e4 -> free"), dev.map(|d| d.1), 1e-3));
        }
    }
    let exact = factor(&BathSpec::Thermal { temperature: 1.0 }, &GeometrySpec::FreeSpace, Some(&TwoAtomConfig { theta: FRAC_PI_4, d: 1e-3 }))
        .map(|g| rel(g, 2.0 / TAU));
    let sub = factor(&BathSpec::Thermal { temperature: 1.0 }, &GeometrySpec::FreeSpace, Some(&TwoAtomConfig { theta: 3.0 * FRAC_PI_4, d: 1e-3 }))
        .map(|g| g.abs() * TAU);
    out.push(Check::upper(s, "super-radiant doubling at w0d = 1e-3", exact, 1e-6));
    out.push(Check::upper(s, "sub-radiant cancellation at w0d = 1e-3 (units of w0/2pi)", sub, 1e-6));
    out
}

/// Relative closed-form vs mode-sum deviation over random single-atom
/// cavities, and the smallest per-mode contribution seen.
pub fn mode_sum_single(points: usize, seed: u64) -> Result<(f64, f64)> {
    let mut r = rng(seed);
    let (mut worst, mut least) = (0.0f64, f64::INFINITY);
    for _ in 0..points {
        let length = r.gen_range(3.2..30.0);
        let z0 = r.gen_range(0.05..0.95) * length;
        let t = r.gen_range(0.5..2.0);
        let geom = GeometrySpec::Cavity { length, z0 };
        let closed = rates::single_atom_rate(&det(), &BathSpec::Thermal { temperature: t }, &geom, Direction::Up)?;
        let modes = oracle::mode_sum_rate(&det(), t, &geom, None, Direction::Up)?;
        worst = worst.max(rel(closed.rate, modes.result.rate));
        least = modes.contributions.iter().copied().fold(least, f64::min);
    }
    Ok((worst, least))
}

/// Same comparison for two-atom geometric factors; the first three points use
/// `θ = 0, π/4, 3π/4`.
pub fn mode_sum_two_atom(points: usize, seed: u64) -> Result<(f64, f64)> {
    let mut r = rng(seed);
    let (mut worst, mut least) = (0.0f64, f64::INFINITY);
    let thermal = BathSpec::Thermal { temperature: 1.0 };
    for i in 0..points {
        let theta = match i {
            0 => 0.0,
            1 => FRAC_PI_4,
            2 => 3.0 * FRAC_PI_4,
            _ => r.gen_range(0.0..PI),
        };
        let d = r.gen_range(0.2..1.0);
        let length = d + r.gen_range(3.2..30.0);
        let z0 = r.gen_range(0.05..0.95) * (length - d);
        let geom = GeometrySpec::Cavity { length, z0 };
        let cfg = TwoAtomConfig { theta, d };
        let closed = rates::two_atom_geometric_factor(1.0, &thermal, &geom, &cfg, &SeriesPolicy::default())?;
        let modes = oracle::mode_sum_rate(&det(), 1.0, &geom, Some(&cfg), Direction::Up)?;
        worst = worst.max(rel(closed.value, modes.result.geometric_factor));
        least = modes.contributions.iter().copied().fold(least, f64::min);
    }
    Ok((worst, least))
}

/// Closed form against the mode sum on both sides of the first mode threshold.
pub fn threshold_crossing() -> Result<f64> {
    let th = BathSpec::Thermal { temperature: 1.0 };
    let mut worst = 0.0f64;
    for length in [PI - 1e-3, PI + 1e-3] {
        let geom = GeometrySpec::Cavity { length, z0: 0.37 * length };
        let closed = rates::single_atom_geometric_factor(1.0, &th, &geom, &SeriesPolicy::default())?.value;
        let modes = oracle::mode_sum_geometric_factor(1.0, &geom, None)?.value;
        // Below threshold both vanish; compare in units of ω₀/2π there.
        let dev = if modes == 0.0 { closed.abs() * TAU } else { rel(closed, modes) };
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// Fourier-route response against the closed form for a static atom.
pub fn fourier_deviation(temperature: f64, geom: &GeometrySpec, de: f64) -> Result<f64> {
    let bath = BathSpec::Thermal { temperature };
    let beta = if temperature > 0.0 { 1.0 / temperature } else { f64::INFINITY };
    let quad = QuadratureSpec::for_gap(de, beta);
    let got = oracle::fourier_response(&bath, geom, de, &quad)?.value;
    if temperature == 0.0 && de > 0.0 {
        return Ok(got.abs() * TAU / de);
    }
    Ok(rel(got, oracle::closed_form_response(&bath, geom, de)?))
}

pub fn oracle_suite() -> Vec<Check> {
    let s = Suite::Oracle;
    let single = mode_sum_single(20, 21);
    let two = mode_sum_two_atom(10, 22);
    let mirror = GeometrySpec::SingleBoundary { z0: 0.8 };
    vec![
        Check::upper(s, "mode sum vs closed form, 20 single-atom cavities", single.clone().map(|v| v.0), 1e-6),
        Check::upper(s, "mode sum vs closed form, 10 two-atom cavities", two.clone().map(|v| v.0), 1e-6),
        Check::lower(s, "smallest per-mode contribution is non-negative", single.and_then(|a| two.map(|b| a.1.min(b.1))), -1e-300),
        Check::upper(s, "closed form tracks the first mode threshold (w0L = pi +- 1e-3)", threshold_crossing(), 1e-6),
        Check::upper(s, "Fourier route, free space, upward", fourier_deviation(1.0, &GeometrySpec::FreeSpace, 1.0), 1e-3),
        Check::upper(s, "Fourier route, free space, downward", fourier_deviation(1.0, &GeometrySpec::FreeSpace, -1.0), 1e-3),
        Check::upper(s, "Fourier route, single mirror, upward", fourier_deviation(0.7, &mirror, 1.0), 1e-3),
        Check::upper(s, "Fourier route, vacuum excitation vanishes", fourier_deviation(0.0, &GeometrySpec::FreeSpace, 1.0), 1e-3),
    ]
}

/// Fixed pseudo-random grid of `(separation, β)` used by the Wightman checks.
pub fn wightman_grid(points: usize, seed: u64) -> Vec<(SpacetimeSeparation, f64)> {
    let mut r = rng(seed);
    (0..points)
        .map(|_| {
            let sep = SpacetimeSeparation::new(
                r.gen_range(-3.0..3.0),
                r.gen_range(-1.0..1.0),
                r.gen_range(-1.0..1.0),
                r.gen_range(0.0..2.0),
                r.gen_range(0.0..2.0),
            );
            (sep, r.gen_range(0.5..3.0))
        })
        .collect()
}

fn crel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

pub fn series_coth_deviation(grid: &[(SpacetimeSeparation, f64)], reg: &RegulatorSpec) -> Result<f64> {
    worst_of(grid.iter().map(|(sep, beta)| {
        let a = wightman::thermal_wightman_series(sep, *beta, reg)?;
        let b = wightman::thermal_wightman_coth(sep, *beta, reg)?;
        Ok(crel(a, b))
    }))
}

pub fn kms_deviation(grid: &[(SpacetimeSeparation, f64)], reg: &RegulatorSpec) -> Result<f64> {
    worst_of(grid.iter().map(|(sep, beta)| wightman::kms_residual(sep, *beta, reg)))
}

pub fn hermiticity_deviation(grid: &[(SpacetimeSeparation, f64)], reg: &RegulatorSpec) -> Result<f64> {
    worst_of(grid.iter().map(|(sep, beta)| {
        let a = wightman::thermal_wightman_series(sep, *beta, reg)?;
        let flipped = SpacetimeSeparation { dt: -sep.dt, ..*sep };
        let b = wightman::thermal_wightman_series(&flipped, *beta, reg)?;
        Ok((a.conj() - b).norm())
    }))
}

/// Largest cavity value with one point on either wall.
pub fn dirichlet_deviation(grid: &[(SpacetimeSeparation, f64)], length: f64, reg: &RegulatorSpec) -> Result<f64> {
    worst_of(grid.iter().enumerate().map(|(i, (sep, beta))| {
        let wall = if i % 2 == 0 { 0.0 } else { length };
        let other = sep.z2.min(length);
        let at_wall = SpacetimeSeparation { z1: wall, z2: other, ..*sep };
        Ok(wightman::cavity_thermal_wightman(&at_wall, *beta, length, reg)?.norm())
    }))
}

pub fn wightman_suite() -> Vec<Check> {
    let s = Suite::Wightman;
    let grid = wightman_grid(20, 31);
    let reg = match RegulatorSpec::new(1e-3, SeriesPolicy::default()) {
        Ok(r) => r,
        Err(e) => return vec![Check::upper(s, "regulator", Err(e), 0.0)],
    };
    vec![
        Check::upper(s, "series vs coth representation (relative)", series_coth_deviation(&grid, &reg), 1e-10),
        Check::upper(s, "KMS residual", kms_deviation(&grid, &reg), 1e-10),
        Check::upper(s, "hermiticity G(dt)* = G(-dt)", hermiticity_deviation(&grid, &reg), 1e-12),
        Check::upper(s, "Dirichlet walls (L = 3.2)", dirichlet_deviation(&grid, 3.2, &reg), 1e-12),
    ]
}

/// Runs the named suite (`all` for every suite).
pub fn run(name: &str) -> Result<Vec<Check>> {
    let suites = Suite::parse(name)?;
    if suites.is_empty() {
        return domain("no suite selected");
    }
    Ok(suites.into_iter().flat_map(Suite::run).collect())
}
