//! Truncation control for the slowly convergent image sums.
//!
//! Terms of the thermal image sums decay only like `1/n` and oscillate, so a
//! sharp cutoff never settles. Every lattice sum here is evaluated with a
//! smooth, compactly supported cutoff `w(|n|/N)` (identically one on
//! `[0, 1/2]`, zero from `1` on). For oscillating terms whose phase advance per
//! index stays away from multiples of `2π`, the windowed sum reaches the
//! Abel-regularized value faster than any power of `N`. `N` is doubled until
//! two successive estimates agree under the [`SeriesPolicy`].

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_ABS_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;
pub const DEFAULT_SINC_THRESHOLD: f64 = 1e-4;

/// Convergence policy for image sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPolicy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Cap on the number of summed image pairs.
    pub max_terms: usize,
    /// `|x|` below which `sin(x)/x` switches to its Taylor polynomial.
    pub sinc_threshold: f64,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            max_terms: DEFAULT_MAX_TERMS,
            sinc_threshold: DEFAULT_SINC_THRESHOLD,
        }
    }
}

impl SeriesPolicy {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize, sinc_threshold: f64) -> Result<Self> {
        let p = Self {
            rel_tol,
            abs_tol,
            max_terms,
            sinc_threshold,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, self.abs_tol, self.max_terms, self.sinc_threshold)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        if self.max_terms < 1 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        if !(self.sinc_threshold > 0.0 && self.sinc_threshold < 0.1) {
            return Err(Error::Domain("sinc_threshold must lie in (0, 0.1)".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Result of a kernel or image-sum evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub value: f64,
    pub terms_used: usize,
    pub converged: bool,
    /// Difference between the last two cutoff estimates.
    pub tail_estimate: f64,
    /// Set when the evaluation hit an exactly degenerate point and fell back
    /// to a special closed value.
    pub degenerate: bool,
}

impl KernelValue {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            terms_used: 0,
            converged: true,
            tail_estimate: 0.0,
            degenerate: false,
        }
    }

    pub fn degenerate(value: f64) -> Self {
        Self {
            degenerate: true,
            ..Self::exact(value)
        }
    }

    /// Combines two sums linearly, keeping the worse bookkeeping.
    pub fn combine(self, a: f64, other: KernelValue, b: f64) -> KernelValue {
        KernelValue {
            value: a * self.value + b * other.value,
            terms_used: self.terms_used.max(other.terms_used),
            converged: self.converged && other.converged,
            tail_estimate: a.abs() * self.tail_estimate + b.abs() * other.tail_estimate,
            degenerate: self.degenerate || other.degenerate,
        }
    }
}

fn bump(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// Smooth cutoff: 1 on `[0, 1/2]`, 0 on `[1, ∞)`, `C^∞` in between.
pub fn window(u: f64) -> f64 {
    let u = u.abs();
    if u <= 0.5 {
        1.0
    } else if u >= 1.0 {
        0.0
    } else {
        let a = bump(1.0 - u);
        let b = bump(u - 0.5);
        a / (a + b)
    }
}

/// Distance of a per-index phase advance from the nearest multiple of `2π`.
pub fn phase_detuning(phase: f64) -> f64 {
    let m = phase.rem_euclid(TAU);
    m.min(TAU - m)
}

/// Cutoff at which a windowed sum with the given phase detuning starts to be
/// trustworthy.
pub(crate) fn detuned_cutoff(detuning: f64) -> usize {
    const CYCLES: f64 = 96.0;
    if detuning <= 0.0 {
        return usize::MAX;
    }
    let n = (CYCLES / detuning).ceil();
    if n > 1e15 {
        usize::MAX
    } else {
        (n as usize).max(256)
    }
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `f(a) + Σ_{k=1}^{N} w(k/N) [f(a - k h) + f(a + k h)]`
pub(crate) fn windowed_bilateral(f: &impl Fn(f64) -> f64, offset: f64, spacing: f64, n: usize) -> f64 {
    let mut acc = CompensatedSum::default();
    let nf = n as f64;
    // Small terms first.
    for k in (1..=n).rev() {
        let wk = window(k as f64 / nf);
        if wk == 0.0 {
            continue;
        }
        let kh = k as f64 * spacing;
        acc.add(wk * (f(offset - kh) + f(offset + kh)));
    }
    acc.add(f(offset));
    acc.value()
}

/// `Σ_{k=1}^{N} w(k/N) f(k h)`
pub(crate) fn windowed_unilateral(f: &impl Fn(f64) -> f64, spacing: f64, n: usize) -> f64 {
    let mut acc = CompensatedSum::default();
    let nf = n as f64;
    for k in (1..=n).rev() {
        let wk = window(k as f64 / nf);
        if wk == 0.0 {
            continue;
        }
        acc.add(wk * f(k as f64 * spacing));
    }
    acc.value()
}

/// Doubles the cutoff starting from `n_start` until successive estimates
/// agree. `eval(N)` must return the cutoff-`N` estimate.
pub(crate) fn converge(
    what: &'static str,
    n_start: usize,
    policy: &SeriesPolicy,
    eval: impl Fn(usize) -> f64,
) -> Result<KernelValue> {
    let mut n = n_start.max(16);
    if n > policy.max_terms {
        return Err(Error::NonConvergence {
            what,
            terms: policy.max_terms,
            tail: f64::INFINITY,
        });
    }
    let mut prev = eval(n);
    loop {
        let next_n = n.saturating_mul(2);
        if next_n > policy.max_terms {
            // One last look at the cap itself.
            let cur = if n < policy.max_terms {
                eval(policy.max_terms)
            } else {
                prev
            };
            let diff = (cur - prev).abs();
            if n < policy.max_terms && diff <= policy.tolerance(cur) {
                return Ok(KernelValue {
                    value: cur,
                    terms_used: policy.max_terms,
                    converged: true,
                    tail_estimate: diff,
                    degenerate: false,
                });
            }
            return Err(Error::NonConvergence {
                what,
                terms: policy.max_terms,
                tail: if n < policy.max_terms { diff } else { f64::INFINITY },
            });
        }
        let cur = eval(next_n);
        let diff = (cur - prev).abs();
        if !cur.is_finite() {
            return Err(Error::NonConvergence {
                what,
                terms: next_n,
                tail: f64::INFINITY,
            });
        }
        if diff <= policy.tolerance(cur) {
            return Ok(KernelValue {
                value: cur,
                terms_used: next_n,
                converged: true,
                tail_estimate: diff,
                degenerate: false,
            });
        }
        prev = cur;
        n = next_n;
    }
}
