use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("quadrature did not converge after {panels} panels: estimate {value} +/- {error_estimate}")]
    QuadratureFailed {
        value: f64,
        error_estimate: f64,
        panels: usize,
    },

    #[error("log-gamma is only defined here for x > 0 (got {0})")]
    LogGammaDomain(f64),

    #[error("no slow-motion scale for this regime")]
    NoSlowMotionScale,

    #[error("standing wave inversion table is not monotone near x = {0}")]
    NonMonotoneTable(f64),

    #[error("{0}")]
    InvalidJumps(String),

    #[error("epsilon {epsilon} is not below the compacton threshold {epsilon_bar}")]
    NotCompacton { epsilon: f64, epsilon_bar: f64 },

    #[error("insufficient tail samples: {0}")]
    InsufficientTail(String),

    #[error("non-finite value after step {step} at t = {time}")]
    BlowUp { step: usize, time: f64 },

    #[error("energy increased from {before} to {after} at t = {time} (scheme failure)")]
    EnergyIncrease { before: f64, after: f64, time: f64 },

    #[error("Hausdorff undefined on empty set")]
    EmptySet,

    #[error("field mismatch: {0}")]
    FieldMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
