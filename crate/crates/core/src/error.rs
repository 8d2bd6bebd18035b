use thiserror::Error;

use crate::model::{Constraint, QuantumNumbers};

/// Errors raised by the orbit, spectrum and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("separation constants violate {constraint}: {lhs} vs {rhs}")]
    Unbound {
        constraint: Constraint,
        lhs: f64,
        rhs: f64,
    },

    #[error("degenerate orbit: {0}")]
    DegenerateOrbit(&'static str),

    #[error("orbit does not lie on a fixed cone when gamma = {gamma} != 0")]
    NotACone { gamma: f64 },

    #[error("action variables outside the domain of H(J): {0}")]
    InvalidAction(&'static str),

    #[error("no bound state for {qn}: {reason}")]
    NoBoundState {
        qn: QuantumNumbers,
        reason: &'static str,
    },

    #[error("quadrature did not converge: estimated error {achieved:e} above tolerance {tol:e}")]
    OracleNonConvergence { achieved: f64, tol: f64 },

    #[error("target {target} not bracketed by [{f_lo}, {f_hi}]")]
    BracketViolation { target: f64, f_lo: f64, f_hi: f64 },

    #[error("trajectory has {len} samples, at least {min} are required")]
    TrajectoryTooShort { len: usize, min: usize },

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
