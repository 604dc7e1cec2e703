use std::f64::consts::FRAC_PI_4;
use std::fmt;

use udw_core::rates::{self, BathSpec, DetectorSpec, Direction, GeometrySpec, RateResult, TwoAtomConfig};
use udw_core::SeriesPolicy;

use crate::args::{Axis, BathKind, Dir, GeomKind, ScenarioArgs};

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<udw_core::Error> for CliError {
    fn from(e: udw_core::Error) -> Self {
        let code = match e {
            udw_core::Error::NonConvergence { .. } => 3,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Scenario {
    pub det: DetectorSpec,
    pub bath: BathSpec,
    pub geom: GeometrySpec,
    pub cfg: Option<TwoAtomConfig>,
    pub dir: Direction,
    pub policy: SeriesPolicy,
}

fn need(v: Option<f64>, flag: &str, why: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::invalid(format!("{flag} is required {why}")))
}

impl ScenarioArgs {
    pub fn build(&self) -> Result<Scenario, CliError> {
        let det = DetectorSpec::new(1.0, self.lambda)?;
        let bath = match self.bath {
            BathKind::Thermal => {
                if self.alpha_over_w0.is_some() {
                    return Err(CliError::invalid("--alpha-over-w0 needs --bath accel"));
                }
                BathSpec::Thermal { temperature: need(self.t_over_w0, "--T-over-w0", "for a thermal bath")? }
            }
            BathKind::Accel => {
                if self.t_over_w0.is_some() {
                    return Err(CliError::invalid("--T-over-w0 needs --bath thermal"));
                }
                BathSpec::UniformAcceleration { alpha: need(self.alpha_over_w0, "--alpha-over-w0", "for an accelerated frame")? }
            }
        };
        let geom = match self.geom {
            GeomKind::Free => GeometrySpec::FreeSpace,
            GeomKind::Mirror => GeometrySpec::SingleBoundary { z0: need(self.w0z0, "--w0z0", "for a mirror")? },
            GeomKind::Cavity => GeometrySpec::Cavity {
                length: need(self.w0l, "--w0L", "for a cavity")?,
                z0: need(self.w0z0, "--w0z0", "for a cavity")?,
            },
        };
        let cfg = match self.atoms {
            1 => {
                if self.w0d.is_some() || self.theta.is_some() {
                    return Err(CliError::invalid("--w0d and --theta need --atoms 2"));
                }
                None
            }
            _ => Some(TwoAtomConfig::new(
                self.theta.unwrap_or(FRAC_PI_4),
                need(self.w0d, "--w0d", "for two atoms")?,
            )?),
        };
        let policy = match self.policy_rel_tol {
            Some(t) => SeriesPolicy::default().with_rel_tol(t)?,
            None => SeriesPolicy::default(),
        };
        if let Some(e) = self.omega0_ev {
            if !e.is_finite() || e <= 0.0 {
                return Err(CliError::invalid(format!("--omega0-ev must be positive, got {e}")));
            }
        }
        let dir = match self.dir {
            Dir::Up => Direction::Up,
            Dir::Down => Direction::Down,
        };
        Ok(Scenario { det, bath, geom, cfg, dir, policy })
    }

    /// Copy with the swept parameter set; fails if the axis is also given
    /// as a fixed flag or does not apply to the scenario.
    pub fn with_axis(&self, axis: Axis, value: f64) -> Result<ScenarioArgs, CliError> {
        let applies = match axis {
            Axis::TOverW0 => self.bath == BathKind::Thermal,
            Axis::AlphaOverW0 => self.bath == BathKind::Accel,
            Axis::W0L => self.geom == GeomKind::Cavity,
            Axis::W0z0 => self.geom != GeomKind::Free,
            Axis::W0d | Axis::Theta => self.atoms == 2,
        };
        if !applies {
            return Err(CliError::invalid(format!("axis {} does not apply to this scenario", axis.name())));
        }
        let mut a = self.clone();
        let slot = match axis {
            Axis::TOverW0 => &mut a.t_over_w0,
            Axis::AlphaOverW0 => &mut a.alpha_over_w0,
            Axis::W0L => &mut a.w0l,
            Axis::W0z0 => &mut a.w0z0,
            Axis::W0d => &mut a.w0d,
            Axis::Theta => &mut a.theta,
        };
        if slot.is_some() {
            return Err(CliError::invalid(format!("{} is swept and cannot also be fixed", axis.name())));
        }
        *slot = Some(value);
        Ok(a)
    }
}

impl Scenario {
    pub fn evaluate(&self) -> udw_core::Result<RateResult> {
        match &self.cfg {
            None => rates::single_atom_rate_with(&self.det, &self.bath, &self.geom, self.dir, &self.policy),
            Some(c) => rates::two_atom_rate_with(&self.det, &self.bath, &self.geom, c, self.dir, &self.policy),
        }
    }
}
