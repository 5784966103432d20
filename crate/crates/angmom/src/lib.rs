// SPDX-License-Identifier: MIT OR Apache-2.0

//! Coupled angular momenta on `S² × S²`.
//!
//! The system is the momentum map `F = (J, H)` with
//! `J = R₁z₁ + R₂z₂` and `H = (1 − t)z₁ + t(x₁x₂ + y₁y₂ + z₁z₂)` for the
//! symplectic form `ω = −(R₁ω_{S²} ⊕ R₂ω_{S²})`.
//!
//! - [`geometry`]: phase space, momentum map, charts, Hamiltonian vector fields.
//! - [`critical`]: fixed points, Williamson types, corank-one family, image boundary.
//! - [`invariants`]: height, polygons, linear Eliasson frame, Taylor coefficients.
//! - [`tridiag`]: symmetric tridiagonal eigenvalues by Sturm bisection.
//! - [`quantum`]: Berezin-Toeplitz blocks, joint spectrum, gap law, Weyl height.
//! - [`numerics`]: adaptive Gauss-Kronrod quadrature and Richardson extrapolation.

pub mod critical;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod numerics;
pub mod quantum;
pub mod tridiag;

pub use error::{Error, Result};
pub use geometry::{PhasePoint, StereoPoint, SystemParams};
