// SPDX-License-Identifier: MIT OR Apache-2.0

//! Height invariant: the reduced-space volume below the focus-focus value.

use std::f64::consts::PI;

use crate::geometry::SystemParams;
use crate::numerics::{integrate, QuadratureOptions};
use crate::Result;

/// Both evaluations of the height invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightResult {
    /// Closed-form value.
    pub closed_form: f64,
    /// Adaptive quadrature value.
    pub quadrature: f64,
    /// `Θ = R₂/R₁`.
    pub theta: f64,
}

/// `h = (2R₁/π)arccos(1/(2√Θ)) + (R₁/π)√(4Θ − 1) − (2R₁(Θ − 1)/π)arctan(2Θ − 1)
///   + (2R₁(Θ − 1)/π)arctan(((2Θ² − 2Θ + 1)√(4Θ − 1) − 2Θ²)/(2Θ − 1)²)`.
pub fn height_closed_form(params: &SystemParams) -> Result<f64> {
    params.require_half()?;
    let r1 = params.r1();
    let th = params.theta();
    let s = (4.0 * th - 1.0).sqrt();
    let q = 2.0 * th - 1.0;
    let inner = ((2.0 * th * th - 2.0 * th + 1.0) * s - 2.0 * th * th) / (q * q);
    Ok(2.0 * r1 / PI * (1.0 / (2.0 * th.sqrt())).acos() + r1 / PI * s - 2.0 * r1 * (th - 1.0) / PI * q.atan()
        + 2.0 * r1 * (th - 1.0) / PI * inner.atan())
}

/// `∫₀^ζ 4R₁ρ/(1 + ρ²)² · (2π − 2arccos((ρ² − 1)f(ρ)/2))/(2π) dρ + 2R₁/(1 + ζ²)`,
/// the last term being the part of the reduced space with `ρ > ζ`, entirely below the focus-focus value.
pub fn height_quadrature(params: &SystemParams) -> Result<f64> {
    params.require_half()?;
    let (r1, r2) = (params.r1(), params.r2());
    let zeta = (4.0 * r2 / r1 - 1.0).sqrt();
    let integrand = |rho: f64| {
        let f = (r1 / (r2 + (r2 - r1) * rho * rho)).sqrt();
        let c = (0.5 * (rho * rho - 1.0) * f).clamp(-1.0, 1.0);
        4.0 * r1 * rho / (2.0 * PI * (1.0 + rho * rho).powi(2)) * (2.0 * PI - 2.0 * c.acos())
    };
    let opts = QuadratureOptions { abs_tol: 1e-11, rel_tol: 1e-14, ..QuadratureOptions::default() };
    let q = integrate(integrand, 0.0, zeta, opts)?;
    Ok(q.value + 2.0 * r1 / (1.0 + zeta * zeta))
}

/// Closed form and quadrature together.
pub fn height(params: &SystemParams) -> Result<HeightResult> {
    Ok(HeightResult {
        closed_form: height_closed_form(params)?,
        quadrature: height_quadrature(params)?,
        theta: params.theta(),
    })
}
