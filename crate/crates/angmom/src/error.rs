// SPDX-License-Identifier: MIT OR Apache-2.0

//! Error type shared by every module.

/// Failure modes of the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Parameters violate a structural precondition (ranges, integrality).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// A point is not on `S² × S²` within the accepted tolerance.
    #[error("point is off the sphere product (deviation {0:.3e})")]
    OffSphere(f64),
    /// A point lies outside the stereographic chart domain.
    #[error("point outside the chart domain: {0}")]
    ChartDomain(&'static str),
    /// An argument lies outside the domain of the operation.
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    /// The operation is not defined for this parameter regime.
    #[error("unsupported regime: {0}")]
    Unsupported(String),
    /// Quantum level requested is absent from the spectrum of the quantized `J`.
    #[error("parity: {0}")]
    Parity(String),
    /// An iterative or adaptive numerical procedure failed to converge.
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    /// Input contained NaN or infinite values.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    /// A polygon operation produced a non-convex or degenerate polygon.
    #[error("admissibility: {0}")]
    Admissibility(String),
}

/// Library result alias.
pub type Result<T> = std::result::Result<T, Error>;
