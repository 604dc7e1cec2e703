//! Transition rates of two-level Unruh-DeWitt detectors coupled to a massless
//! scalar field.
//!
//! Single atoms and entangled atom pairs are covered, static in a thermal bath
//! or uniformly accelerated through the Minkowski vacuum, in free space, next
//! to one Dirichlet mirror, or inside a Dirichlet cavity. Natural units
//! (`ħ = c = k_B = 1`) are used throughout; [`units`] converts laboratory
//! quantities.
//!
//! * [`kernels`] – spectral kernels and convergence-controlled image sums.
//! * [`wightman`] – thermal two-point functions (free space and cavity).
//! * [`rates`] – closed-form rates for every scenario.
//! * [`oracle`] – independent mode-sum and Fourier-quadrature recomputation.
//! * [`units`] – laboratory conversions and the Rb/Cs presets.
//! * [`verify`] – invariant suites shared by the CLI.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::redundant_guards, clippy::manual_is_multiple_of)]

pub mod error;
pub mod extrapolate;
pub mod kernels;
pub mod oracle;
pub mod quadrature;
pub mod rates;
pub mod series;
pub mod units;
pub mod verify;
pub mod wightman;

pub use error::{Error, Result};
pub use kernels::{KernelValue, SeriesPolicy};
pub use rates::{BathSpec, DetectorSpec, Direction, GeometrySpec, RateResult, TwoAtomConfig};
