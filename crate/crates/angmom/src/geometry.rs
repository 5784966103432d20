// SPDX-License-Identifier: MIT OR Apache-2.0

//! Phase space `S² × S²`, momentum map, stereographic charts and Hamiltonian vector fields.
//!
//! The chart is `Ψ = (π_S, π_N)` with `π_S(x, y, z) = (x − iy)/(1 + z)` on the first
//! factor and `π_N(x, y, z) = (x + iy)/(1 − z)` on the second. In chart coordinates
//! `(z, w)` a tangent vector is stored as its coefficients on
//! `(∂z, ∂z̄, ∂w, ∂w̄)`, the second and fourth being conjugates of the first and third.

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest accepted deviation from unit norm on each sphere factor.
pub const SPHERE_TOLERANCE: f64 = 1e-9;
/// Deviations at or below this value are left untouched; larger accepted ones are renormalized.
pub const RENORMALIZE_THRESHOLD: f64 = 1e-12;

/// Parameters `(R₁, R₂, t)` of the coupled system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    r1: f64,
    r2: f64,
    t: f64,
}

impl SystemParams {
    /// Validates `R₂ > R₁ > 0` and `t ∈ [0, 1]`.
    pub fn new(r1: f64, r2: f64, t: f64) -> Result<Self> {
        if !(r1.is_finite() && r2.is_finite() && t.is_finite()) {
            return Err(Error::NonFinite("system parameters"));
        }
        if r1 <= 0.0 || r2 <= r1 {
            return Err(Error::InvalidParams(format!("need r2 > r1 > 0, got r1 = {r1}, r2 = {r2}")));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParams(format!("need t in [0, 1], got {t}")));
        }
        Ok(Self { r1, r2, t })
    }

    /// Norm of the first angular momentum.
    pub fn r1(&self) -> f64 {
        self.r1
    }

    /// Norm of the second angular momentum.
    pub fn r2(&self) -> f64 {
        self.r2
    }

    /// Coupling parameter.
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Ratio `Θ = R₂/R₁`.
    pub fn theta(&self) -> f64 {
        self.r2 / self.r1
    }

    /// Same radii with a different coupling parameter.
    pub fn with_t(&self, t: f64) -> Result<Self> {
        Self::new(self.r1, self.r2, t)
    }

    /// Errors unless `t = 1/2` within `1e-12`.
    pub fn require_half(&self) -> Result<()> {
        if (self.t - 0.5).abs() > 1e-12 {
            return Err(Error::Unsupported(format!("operation is defined at t = 1/2 only, got t = {}", self.t)));
        }
        Ok(())
    }
}

/// A point of `S² × S²` in ambient coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    /// First factor `(x₁, y₁, z₁)`.
    pub first: [f64; 3],
    /// Second factor `(x₂, y₂, z₂)`.
    pub second: [f64; 3],
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

impl PhasePoint {
    /// Builds a point, rejecting deviations from the spheres above [`SPHERE_TOLERANCE`].
    pub fn new(first: [f64; 3], second: [f64; 3]) -> Result<Self> {
        let mut p = Self { first, second };
        p.validate()?;
        for v in [&mut p.first, &mut p.second] {
            let n = norm3(v);
            if (n - 1.0).abs() > RENORMALIZE_THRESHOLD {
                v.iter_mut().for_each(|c| *c /= n);
            }
        }
        Ok(p)
    }

    /// Builds a point from `(x₁, y₁, z₁, x₂, y₂, z₂)`.
    pub fn from_array(c: [f64; 6]) -> Result<Self> {
        Self::new([c[0], c[1], c[2]], [c[3], c[4], c[5]])
    }

    /// Coordinates `(x₁, y₁, z₁, x₂, y₂, z₂)`.
    pub fn to_array(&self) -> [f64; 6] {
        let (a, b) = (self.first, self.second);
        [a[0], a[1], a[2], b[0], b[1], b[2]]
    }

    /// Largest deviation of either factor from unit norm.
    pub fn sphere_deviation(&self) -> f64 {
        (norm3(&self.first) - 1.0).abs().max((norm3(&self.second) - 1.0).abs())
    }

    fn validate(&self) -> Result<()> {
        if self.to_array().iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("phase point"));
        }
        let dev = self.sphere_deviation();
        if dev > SPHERE_TOLERANCE {
            return Err(Error::OffSphere(dev));
        }
        Ok(())
    }
}

/// Chart image `(z, w) = Ψ(p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StereoPoint {
    /// `π_S` image of the first factor.
    pub z: Complex64,
    /// `π_N` image of the second factor.
    pub w: Complex64,
}

impl StereoPoint {
    /// Creates a chart point.
    pub fn new(z: Complex64, w: Complex64) -> Self {
        Self { z, w }
    }
}

/// `(J, H)` at a point of `S² × S²`.
pub fn momentum_map(p: &PhasePoint, params: &SystemParams) -> Result<(f64, f64)> {
    p.validate()?;
    Ok(momentum_map_unchecked(&p.to_array(), params))
}

/// `(J, H)` evaluated on raw ambient coordinates without sphere validation.
pub fn momentum_map_unchecked(c: &[f64; 6], params: &SystemParams) -> (f64, f64) {
    let t = params.t;
    let j = params.r1 * c[2] + params.r2 * c[5];
    let h = (1.0 - t) * c[2] + t * (c[0] * c[3] + c[1] * c[4] + c[2] * c[5]);
    (j, h)
}

/// Ambient gradients `(∇J, ∇H)` in `ℝ⁶`.
pub fn ambient_gradients(c: &[f64; 6], params: &SystemParams) -> ([f64; 6], [f64; 6]) {
    let t = params.t;
    let gj = [0.0, 0.0, params.r1, 0.0, 0.0, params.r2];
    let gh = [t * c[3], t * c[4], (1.0 - t) + t * c[5], t * c[0], t * c[1], t * c[2]];
    (gj, gh)
}

/// Projects an ambient vector onto `T_p(S² × S²)`.
pub fn project_tangent(c: &[f64; 6], v: &[f64; 6]) -> [f64; 6] {
    let mut out = *v;
    for k in 0..2 {
        let base = 3 * k;
        let n2: f64 = (0..3).map(|i| c[base + i] * c[base + i]).sum();
        let dot: f64 = (0..3).map(|i| c[base + i] * v[base + i]).sum();
        for i in 0..3 {
            out[base + i] -= dot / n2 * c[base + i];
        }
    }
    out
}

/// `Ψ(p) = (π_S(first), π_N(second))`.
pub fn stereo_forward(p: &PhasePoint) -> Result<StereoPoint> {
    p.validate()?;
    let [x1, y1, z1] = p.first;
    let [x2, y2, z2] = p.second;
    if 1.0 + z1 <= 0.0 {
        return Err(Error::ChartDomain("first factor at the south pole"));
    }
    if 1.0 - z2 <= 0.0 {
        return Err(Error::ChartDomain("second factor at the north pole"));
    }
    Ok(StereoPoint {
        z: Complex64::new(x1, -y1) / (1.0 + z1),
        w: Complex64::new(x2, y2) / (1.0 - z2),
    })
}

/// `Ψ⁻¹(z, w)`.
pub fn stereo_inverse(s: &StereoPoint) -> Result<PhasePoint> {
    Ok(PhasePoint { first: south_inverse(s.z)?, second: north_inverse(s.w)? })
}

fn south_inverse(z: Complex64) -> Result<[f64; 3]> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::ChartDomain("first chart coordinate is not finite"));
    }
    let n = z.norm_sqr();
    Ok([2.0 * z.re / (1.0 + n), -2.0 * z.im / (1.0 + n), (1.0 - n) / (1.0 + n)])
}

fn north_inverse(w: Complex64) -> Result<[f64; 3]> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::ChartDomain("second chart coordinate is not finite"));
    }
    let n = w.norm_sqr();
    Ok([2.0 * w.re / (1.0 + n), 2.0 * w.im / (1.0 + n), (n - 1.0) / (1.0 + n)])
}

/// Component of the momentum map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// `J = R₁z₁ + R₂z₂`.
    J,
    /// `H = (1 − t)z₁ + t(x₁x₂ + y₁y₂ + z₁z₂)`.
    H,
}

/// `(∂f/∂z̄, ∂f/∂w̄)` for `f ∈ {J, H}` in the chart.
fn antiholomorphic_derivatives(which: Observable, s: &StereoPoint, params: &SystemParams) -> (Complex64, Complex64) {
    let (z, w) = (s.z, s.w);
    let a = 1.0 + z.norm_sqr();
    let b = 1.0 + w.norm_sqr();
    let dz1 = -2.0 * z / (a * a);
    let dz2 = 2.0 * w / (b * b);
    match which {
        Observable::J => (params.r1 * dz1, params.r2 * dz2),
        Observable::H => {
            let t = params.t;
            let n = 2.0 * (z * w + (z * w).conj()) + (1.0 - z.norm_sqr()) * (w.norm_sqr() - 1.0);
            let dd_z = ((2.0 * w.conj() - z * (w.norm_sqr() - 1.0)) * a - n * z) / (a * a * b);
            let dd_w = ((2.0 * z.conj() + (1.0 - z.norm_sqr()) * w) * b - n * w) / (a * b * b);
            ((1.0 - t) * dz1 + t * dd_z, t * dd_w)
        }
    }
}

/// Coefficients of `X_f` on `(∂z, ∂z̄, ∂w, ∂w̄)` for the chart symplectic form
/// `2iR₁ dz∧dz̄/(1+|z|²)² + 2iR₂ dw∧dw̄/(1+|w|²)²` and the convention `ι_{X_f} ω = −df`.
pub fn hamiltonian_vector_field(which: Observable, s: &StereoPoint, params: &SystemParams) -> Result<[Complex64; 4]> {
    if !(s.z.re.is_finite() && s.z.im.is_finite() && s.w.re.is_finite() && s.w.im.is_finite()) {
        return Err(Error::ChartDomain("chart point is not finite"));
    }
    let (fz, fw) = antiholomorphic_derivatives(which, s, params);
    let a = 1.0 + s.z.norm_sqr();
    let b = 1.0 + s.w.norm_sqr();
    let i = Complex64::i();
    let cz = i * a * a / (2.0 * params.r1) * fz;
    let cw = i * b * b / (2.0 * params.r2) * fw;
    Ok([cz, cz.conj(), cw, cw.conj()])
}

/// `X_H` written with the functions `λ₁, λ₂` valid at `t = 1/2`.
pub fn hamiltonian_vector_field_h_half(s: &StereoPoint, params: &SystemParams) -> Result<[Complex64; 4]> {
    params.require_half()?;
    let (z, w) = (s.z, s.w);
    let (r1, r2) = (params.r1, params.r2);
    let l1 = (w.conj() - 2.0 * z * w.norm_sqr() - z * z * w) / (r1 * (1.0 + w.norm_sqr()));
    let l2 = (z.conj() + w - w * z.norm_sqr() - z * w * w) / (r2 * (1.0 + z.norm_sqr()));
    let h = Complex64::i() / 2.0;
    Ok([h * l1, (h * l1).conj(), h * l2, (h * l2).conj()])
}

/// `X_H` in the reduced form valid on the singular fiber `Λ₀ ∖ {(0, 0)}` at `t = 1/2`.
pub fn hamiltonian_vector_field_h_on_fiber(s: &StereoPoint, params: &SystemParams) -> Result<[Complex64; 4]> {
    params.require_half()?;
    let (z, w) = (s.z, s.w);
    if z == Complex64::new(0.0, 0.0) || w == Complex64::new(0.0, 0.0) {
        return Err(Error::OutOfDomain("reduced field is undefined at the pinch point".into()));
    }
    let h = Complex64::i() / 2.0;
    let cz = h * (-(z * (z + w.conj())) / (params.r2 * w.conj()));
    let cw = h * (-(w * w) / (params.r1 * z.conj()));
    Ok([cz, cz.conj(), cw, cw.conj()])
}

/// `{J, H}(p) = dJ(X_H)`, evaluated in the chart when `p` is in its domain and with the
/// ambient cross-product formula otherwise.
pub fn poisson_bracket(p: &PhasePoint, params: &SystemParams) -> Result<f64> {
    match stereo_forward(p) {
        Ok(s) => {
            let xh = hamiltonian_vector_field(Observable::H, &s, params)?;
            let (jz, jw) = antiholomorphic_derivatives(Observable::J, &s, params);
            Ok(2.0 * (xh[1] * jz + xh[3] * jw).re)
        }
        Err(Error::ChartDomain(_)) => Ok(poisson_bracket_ambient(p, params)),
        Err(e) => Err(e),
    }
}

/// `{J, H}` from ambient gradients: `Σᵢ −(1/Rᵢ) xᵢ · (∇ᵢJ × ∇ᵢH)`.
pub fn poisson_bracket_ambient(p: &PhasePoint, params: &SystemParams) -> f64 {
    let c = p.to_array();
    let (gj, gh) = ambient_gradients(&c, params);
    let mut total = 0.0;
    for (k, r) in [params.r1, params.r2].into_iter().enumerate() {
        let b = 3 * k;
        let x = [c[b], c[b + 1], c[b + 2]];
        let u = [gj[b], gj[b + 1], gj[b + 2]];
        let v = [gh[b], gh[b + 1], gh[b + 2]];
        let cross = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
        total -= (x[0] * cross[0] + x[1] * cross[1] + x[2] * cross[2]) / r;
    }
    total
}
