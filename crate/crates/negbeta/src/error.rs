//! Shared error type for all modules.

use thiserror::Error;

/// Errors surfaced by the library. Domain violations map to CLI exit code 1.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("beta must lie strictly between 1 and 2, got {0}")]
    BetaOutOfRange(f64),
    #[error("alpha {alpha} outside the switch region [{s_lo}, {s_hi}]")]
    AlphaOutsideSwitch { alpha: f64, s_lo: f64, s_hi: f64 },
    #[error("unknown alpha preset '{0}' (expected ito-sadahiro, odd-greedy, midpoint, s-left or s-right)")]
    UnknownPreset(String),
    #[error("point {x} outside domain [{lo}, {hi}]")]
    XOutOfDomain { x: f64, lo: f64, hi: f64 },
    #[error("digit word may only contain 0 and 1, got '{0}'")]
    BadDigit(char),
    #[error("coin stream exhausted after {consumed} coins and no default digit set")]
    CoinsExhausted { consumed: usize },
    #[error("power iteration did not reach tolerance: residual {residual} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },
    #[error("no witness against a single-cut greedy generator found for alpha {alpha}")]
    WitnessNotFound { alpha: f64 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
