//! Error type shared by all modules of the crate.

use num_complex::Complex64;
use thiserror::Error;

use crate::lti::Stability;

/// Errors raised during construction, analysis, synthesis, and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The denominator polynomial is identically zero.
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,

    /// Numerator degree exceeds denominator degree.
    #[error("improper transfer function: numerator degree {num_degree} exceeds denominator degree {den_degree}")]
    ImproperTransferFunction {
        num_degree: usize,
        den_degree: usize,
    },

    /// Power-series division needs a nonzero constant denominator term.
    #[error("series division requires a nonzero leading denominator coefficient")]
    ZeroLeadingDenominator,

    /// State-space matrices have inconsistent shapes.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The transfer function was evaluated at (or too close to) a pole.
    #[error("evaluation point {point} is a pole of the transfer function")]
    PoleAtEvaluationPoint { point: Complex64 },

    /// Steady-state formulas only hold for asymptotically stable plants.
    #[error("plant is not asymptotically stable (verdict: {verdict})")]
    NotAsymptoticallyStable { verdict: Stability },

    /// |W(lambda)| is numerically zero: no bounded input in the signal class
    /// can produce output in this mode.
    #[error("transmission zero at mode lambda = {lambda}: |W(lambda)| = {gain:.3e}")]
    TransmissionZeroAtMode { lambda: Complex64, gain: f64 },

    /// Signal term degree above the supported cap.
    #[error("signal degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    /// A signal term carries a non-finite field.
    #[error("invalid signal term: {0}")]
    InvalidSignalTerm(String),

    /// Simulation configuration violates its invariants.
    #[error("invalid simulation config: {0}")]
    InvalidSimConfig(String),

    /// Fixed integration step too large for the plant dynamics.
    #[error("step size too large: dt * ||A||_inf = {0:.3e} exceeds 0.5")]
    StepSizeTooLarge(f64),

    /// The integrated state overflowed to inf/NaN.
    #[error("state became non-finite at t = {0}")]
    NonFiniteState(f64),
}

impl Error {
    /// Stable identifier of the variant, independent of the display message.
    /// Used by front ends for exit-code mapping and terse diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "ZeroDenominator",
            Error::ImproperTransferFunction { .. } => "ImproperTransferFunction",
            Error::ZeroLeadingDenominator => "ZeroLeadingDenominator",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::PoleAtEvaluationPoint { .. } => "PoleAtEvaluationPoint",
            Error::NotAsymptoticallyStable { .. } => "NotAsymptoticallyStable",
            Error::TransmissionZeroAtMode { .. } => "TransmissionZeroAtMode",
            Error::DegreeTooLarge { .. } => "DegreeTooLarge",
            Error::InvalidSignalTerm(_) => "InvalidSignalTerm",
            Error::InvalidSimConfig(_) => "InvalidSimConfig",
            Error::StepSizeTooLarge(_) => "StepSizeTooLarge",
            Error::NonFiniteState(_) => "NonFiniteState",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
