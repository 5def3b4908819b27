// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("operator is not hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("ket is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("degenerate steady-state manifold: {count} singular values below {threshold:e}")]
    DegenerateSteadyState { count: usize, threshold: f64 },

    #[error("ambiguous zero eigenvalue: {count} eigenvalues within {threshold:e}")]
    AmbiguousZeroEigenvalue { count: usize, threshold: f64 },

    #[error("solver did not converge: {0}")]
    NotConverged(String),

    #[error("trace drifted to {trace} at t = {time:e} s")]
    TraceDrift { trace: f64, time: f64 },

    #[error("time step underflow at t = {time:e} s")]
    StepUnderflow { time: f64 },

    #[error("time grid is not monotone at index {index}")]
    NonMonotoneGrid { index: usize },

    #[error("fit failed: {0}")]
    FitFailed(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("serialization failed: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
