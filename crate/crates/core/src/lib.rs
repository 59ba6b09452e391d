//! Quantum teleportation through Fock states entangled on a beam splitter.
//!
//! Two Fock states `|n_in>_A |m_in>_B` meet on a beam splitter of angle `β`;
//! mode A goes to the sender and mode B to the receiver. The sender measures
//! number sum and phase difference of a target mode and mode A, and the
//! receiver amplifies and phase-shifts his mode to reconstruct the target.
//!
//! * [`numerics`]: log-factorials and the rotation-matrix elements `d^j_{m',m}(β)`
//! * [`states`]: resource coefficients and target-state builders
//! * [`protocol`]: outcome statistics, fidelities and `(m, β)` sweeps
//! * [`phase`]: joint phase-difference distribution and its maximum
//! * [`oracle`]: dense brute-force cross-checks on small sectors
//! * [`grid`]: density maps with CSV and PGM output
//!
//! Every numerical routine is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the double-precision instantiation used by the CLI.

pub mod error;
pub mod grid;
pub mod numerics;
pub mod oracle;
pub mod phase;
pub mod protocol;
pub mod scalar;
pub mod states;
pub mod sweep;

pub use error::{Error, Result};
pub use numerics::{HalfInt, WignerIndex};
pub use scalar::{CompensatedSum, Real};
pub use sweep::SweepOptions;

pub type LogFactorialTable = numerics::LogFactorialTable<f64>;
pub type RotationGenerator = numerics::RotationGenerator<f64>;
pub type ResourceParams = states::ResourceParams<f64>;
pub type ResourceCoeffs = states::ResourceCoeffs<f64>;
pub type TargetCoeffs = states::TargetCoeffs<f64>;
pub type OutcomeDistribution = protocol::OutcomeDistribution<f64>;
pub type OutputState = protocol::OutputState<f64>;
pub type FidelityGrid = grid::FidelityGrid<f64>;
pub type PhaseProfile = phase::PhaseProfile<f64>;

pub type ResourceParams32 = states::ResourceParams<f32>;
pub type ResourceCoeffs32 = states::ResourceCoeffs<f32>;
pub type TargetCoeffs32 = states::TargetCoeffs<f32>;
pub type FidelityGrid32 = grid::FidelityGrid<f32>;
