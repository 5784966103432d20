// SPDX-License-Identifier: MIT OR Apache-2.0

//! Linear Taylor coefficients `a₁`, `a₂` from regularized limits along a radial loop in the
//! singular fiber `Λ₀`.
//!
//! The loop leaves the pinch point on the branch `S_A` where the flow of `X_{q₂}` decreases
//! `ρ` backwards in time, reaches the gluing circle at `ρ = ζ`, `θ = 0`, and returns on the
//! other branch `S_B`. For `A = S_A(ρ, θ_A)` and `B = S_B(ρ, θ_B)` on the loop,
//! `a₂ = lim (κ(ρ) + ln(r_A σ_B))` and `a₁ = lim (ν_A − μ_B)`, where `κ` is minus the
//! `X_{q₂}`-time from `A` to `B` and `(r, ν)`, `(σ, μ)` are polar coordinates of `(u₁, u₂)` and
//! `(ξ₁, ξ₂)` in the linear Eliasson frame.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use super::{eliasson_frame, is_reference_pair, EliassonFrame};
use crate::critical::{singular_fiber_point, zeta};
use crate::geometry::{hamiltonian_vector_field, stereo_inverse, Observable, StereoPoint, SystemParams};
use crate::numerics::{integrate, richardson, QuadratureOptions};
use crate::{Error, Result};

/// Largest accepted Richardson residual for `a₁` and `a₂`.
pub const EXTRAPOLATION_TOLERANCE: f64 = 1e-5;

/// Linear Taylor coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorCoeffs {
    /// `a₁` in `[0, 2π)`.
    pub a1: f64,
    /// `a₂`.
    pub a2: f64,
    /// True unless `(R₁, R₂) = (1, 5/2)`.
    pub experimental: bool,
}

/// The regularized quantities at one loop parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorSample {
    /// Loop parameter.
    pub rho: f64,
    /// Minus the `X_{q₂}`-time from `A` to `B`.
    pub kappa: f64,
    /// `ln(r_A σ_B)`.
    pub log_radii: f64,
    /// `κ + ln(r_A σ_B)`.
    pub a2: f64,
    /// `ν_A − μ_B` in `(−π, π]`.
    pub a1: f64,
}

/// `ρ_m = 0.1·2^{−m}`, `m = 0, …, 6`.
pub fn rho_sequence() -> Vec<f64> {
    (0..7).map(|m| 0.1 * 0.5f64.powi(m)).collect()
}

/// `−(ε/3)ρ√((ρ² + 1)(9 − ρ²))`, the rate `dρ/ds` along `X_{q₂}` on `Λ₀^ε` for `(R₁, R₂) = (1, 5/2)`.
pub fn colinearity_factor(eps: i8, rho: f64) -> f64 {
    -f64::from(eps) / 3.0 * rho * ((rho * rho + 1.0) * (9.0 - rho * rho)).sqrt()
}

/// `∫_{ρ₁}^3 dρ/(ρ√((ρ² + 1)(9 − ρ²))) = (ln(4ρ₁² + 9 + 3√((ρ₁² + 1)(9 − ρ₁²))) − 2ln ρ₁ − ln 5)/6`.
pub fn kappa_integral_closed_form(rho1: f64) -> f64 {
    let s = ((rho1 * rho1 + 1.0) * (9.0 - rho1 * rho1)).sqrt();
    ((4.0 * rho1 * rho1 + 9.0 + 3.0 * s).ln() - 2.0 * rho1.ln() - 5f64.ln()) / 6.0
}

fn check_eps(eps: i8) -> Result<()> {
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidParams(format!("eps must be +1 or -1, got {eps}")));
    }
    Ok(())
}

/// `(dρ/ds, dθ/ds)` along the flow of `X_{q₂} = B₁₀X_J + B₁₁X_H` on `Λ₀^ε` at radius `ρ > 0`.
pub fn polar_rates(params: &SystemParams, frame: &EliassonFrame, eps: i8, rho: f64) -> Result<(f64, f64)> {
    check_eps(eps)?;
    if rho <= 0.0 {
        return Err(Error::OutOfDomain(format!("polar rates need rho > 0, got {rho}")));
    }
    let s = singular_fiber_point(params, eps, rho, 0.0)?;
    let xj = hamiltonian_vector_field(Observable::J, &s, params)?;
    let xh = hamiltonian_vector_field(Observable::H, &s, params)?;
    let zdot: Complex64 = xj[0] * frame.b_matrix[(1, 0)] + xh[0] * frame.b_matrix[(1, 1)];
    Ok((zdot.re, zdot.im / rho))
}

struct Loop<'a> {
    params: &'a SystemParams,
    frame: EliassonFrame,
    zeta: f64,
    branch_a: i8,
}

impl<'a> Loop<'a> {
    fn new(params: &'a SystemParams) -> Result<Self> {
        params.require_half()?;
        let frame = eliasson_frame(params)?;
        let zeta = zeta(params);
        let (rate, _) = polar_rates(params, &frame, 1, 0.5 * zeta)?;
        Ok(Self { params, frame, zeta, branch_a: if rate < 0.0 { 1 } else { -1 } })
    }

    /// `∫_ρ^ζ g(r) dr` through `r = ζ sin φ`.
    fn integral<F: Fn(f64) -> Result<f64> + Sync>(&self, rho: f64, g: F) -> Result<f64> {
        let z = self.zeta;
        let lo = (rho / z).clamp(0.0, 1.0).asin();
        let err = std::sync::Mutex::new(None);
        let opts = QuadratureOptions { abs_tol: 1e-12, rel_tol: 1e-13, max_intervals: 4000 };
        let q = integrate(
            |phi| match g(z * phi.sin()) {
                Ok(v) => v * z * phi.cos(),
                Err(e) => {
                    *err.lock().expect("lock") = Some(e);
                    f64::NAN
                }
            },
            lo,
            FRAC_PI_2,
            opts,
        );
        if let Some(e) = err.into_inner().expect("lock") {
            return Err(e);
        }
        Ok(q?.value)
    }

    fn time_to_gluing(&self, eps: i8, rho: f64) -> Result<f64> {
        self.integral(rho, |r| Ok(1.0 / polar_rates(self.params, &self.frame, eps, r)?.0))
    }

    fn angle(&self, eps: i8, rho: f64) -> Result<f64> {
        if rho >= self.zeta {
            return Ok(0.0);
        }
        let v = self.integral(rho, |r| {
            let (dr, dt) = polar_rates(self.params, &self.frame, eps, r)?;
            Ok(dt / dr)
        })?;
        Ok(-v)
    }

    fn point(&self, eps: i8, rho: f64) -> Result<StereoPoint> {
        let theta = if rho == 0.0 { 0.0 } else { self.angle(eps, rho)? };
        singular_fiber_point(self.params, eps, rho, theta)
    }

    fn local(&self, s: &StereoPoint) -> Result<[f64; 4]> {
        let p = stereo_inverse(s)?;
        Ok(self.frame.coordinates([p.first[0], p.first[1], p.second[0], p.second[1]]))
    }

    fn sample(&self, rho: f64) -> Result<TaylorSample> {
        let (a, b) = (self.branch_a, -self.branch_a);
        let kappa = -(self.time_to_gluing(a, rho)? - self.time_to_gluing(b, rho)?);
        let ua = self.local(&self.point(a, rho)?)?;
        let ub = self.local(&self.point(b, rho)?)?;
        let r_a = ua[0].hypot(ua[1]);
        let sigma_b = ub[2].hypot(ub[3]);
        let log_radii = (r_a * sigma_b).ln();
        let nu = ua[1].atan2(ua[0]);
        let mu = ub[3].atan2(ub[2]);
        let mut d = (nu - mu).rem_euclid(2.0 * PI);
        if d > PI {
            d -= 2.0 * PI;
        }
        Ok(TaylorSample { rho, kappa, log_radii, a2: kappa + log_radii, a1: d })
    }
}

/// Point of the radial loop on branch `ε` at radius `ρ`, with `θ = 0` on the gluing circle.
pub fn radial_loop(params: &SystemParams, eps: i8, rho: f64) -> Result<StereoPoint> {
    check_eps(eps)?;
    let l = Loop::new(params)?;
    if !(0.0..=l.zeta).contains(&rho) {
        return Err(Error::OutOfDomain(format!("rho = {rho} outside [0, {}]", l.zeta)));
    }
    l.point(eps, rho)
}

/// Regularized quantities at each `ρ` of [`rho_sequence`].
pub fn taylor_samples(params: &SystemParams) -> Result<Vec<TaylorSample>> {
    let l = Loop::new(params)?;
    rho_sequence().into_par_iter().map(|rho| l.sample(rho)).collect()
}

fn extrapolate(values: &[f64], what: &str) -> Result<f64> {
    let e = richardson(values, 4.0)?;
    if e.residual > EXTRAPOLATION_TOLERANCE {
        return Err(Error::NonConvergence(format!("{what} extrapolation residual {:.3e}", e.residual)));
    }
    Ok(e.value)
}

/// Both coefficients from one pass over the loop samples.
pub fn taylor_coefficients(params: &SystemParams) -> Result<TaylorCoeffs> {
    let samples = taylor_samples(params)?;
    let a2 = extrapolate(&samples.iter().map(|s| s.a2).collect::<Vec<_>>(), "a2")?;
    let a1 = extrapolate(&samples.iter().map(|s| s.a1).collect::<Vec<_>>(), "a1")?;
    Ok(TaylorCoeffs { a1: a1.rem_euclid(2.0 * PI), a2, experimental: !is_reference_pair(params) })
}

/// `a₂ = lim_{ρ→0} (κ(ρ) + ln(r_A σ_B))`.
pub fn taylor_a2(params: &SystemParams) -> Result<f64> {
    Ok(taylor_coefficients(params)?.a2)
}

/// `a₁ = lim_{ρ→0} (ν_A − μ_B)`, reduced to `[0, 2π)`.
pub fn taylor_a1(params: &SystemParams) -> Result<f64> {
    Ok(taylor_coefficients(params)?.a1)
}
