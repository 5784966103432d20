// SPDX-License-Identifier: MIT OR Apache-2.0

//! Critical points of the momentum map: the four fixed points and their Williamson types,
//! the thresholds `t^±`, the corank-one family, the admissible `λ`-intervals, the boundary
//! of the image `F(M)` and the singular fiber through `m₀`.

use std::fmt;

use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64;

use crate::geometry::{ambient_gradients, project_tangent, PhasePoint, StereoPoint, SystemParams};
use crate::{Error, Result};

/// Eigenvalue separation, relative to the Frobenius norm of the element, above which a pencil
/// element counts as regular.
pub const REGULARITY_GAP: f64 = 1e-7;
/// `|T(t)| / R₂²` below which `m₀` is reported degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;
/// Rank tolerance on the smallest singular value of `dF` at corank-one points.
pub const RANK_TOLERANCE: f64 = 1e-9;

/// Label of a fixed point of the circle action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixedPointLabel {
    /// `(0, 0, 1, 0, 0, −1)`.
    M0,
    /// `(0, 0, −1, 0, 0, −1)`.
    M1,
    /// `(0, 0, −1, 0, 0, 1)`.
    M2,
    /// `(0, 0, 1, 0, 0, 1)`.
    M3,
}

impl FixedPointLabel {
    /// All labels in order.
    pub const ALL: [Self; 4] = [Self::M0, Self::M1, Self::M2, Self::M3];

    /// `(z₁, z₂)` at the point.
    pub fn poles(self) -> (f64, f64) {
        match self {
            Self::M0 => (1.0, -1.0),
            Self::M1 => (-1.0, -1.0),
            Self::M2 => (-1.0, 1.0),
            Self::M3 => (1.0, 1.0),
        }
    }
}

impl fmt::Display for FixedPointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::M0 => "m0",
            Self::M1 => "m1",
            Self::M2 => "m2",
            Self::M3 => "m3",
        };
        f.write_str(s)
    }
}

/// A fixed point together with its critical value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointRecord {
    /// Which fixed point.
    pub label: FixedPointLabel,
    /// The point itself.
    pub point: PhasePoint,
    /// `F(point)`.
    pub value: (f64, f64),
}

/// The four fixed points `m₀, m₁, m₂, m₃` with their values `c₀, …, c₃`.
pub fn fixed_points(params: &SystemParams) -> [FixedPointRecord; 4] {
    FixedPointLabel::ALL.map(|label| fixed_point(label, params))
}

/// A single fixed point record.
pub fn fixed_point(label: FixedPointLabel, params: &SystemParams) -> FixedPointRecord {
    let (s1, s2) = label.poles();
    let t = params.t();
    FixedPointRecord {
        label,
        point: PhasePoint { first: [0.0, 0.0, s1], second: [0.0, 0.0, s2] },
        value: (params.r1() * s1 + params.r2() * s2, (1.0 - t) * s1 + t * s1 * s2),
    }
}

/// Hessians and symplectic matrix at a fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalHessians {
    /// `d²J` in the basis `(x₁, y₁, x₂, y₂)`.
    pub d2j: Matrix4<f64>,
    /// `d²H` in the same basis.
    pub d2h: Matrix4<f64>,
    /// `Ω_{ij} = ω(eᵢ, eⱼ)`.
    pub omega: Matrix4<f64>,
}

/// `d²J`, `d²H` and `Ω` at a fixed point in the local coordinates `(x₁, y₁, x₂, y₂)`.
pub fn local_hessians(label: FixedPointLabel, params: &SystemParams) -> LocalHessians {
    let (s1, s2) = label.poles();
    let (r1, r2, t) = (params.r1(), params.r2(), params.t());
    let d2j = Matrix4::from_diagonal(&nalgebra::Vector4::new(-s1 * r1, -s1 * r1, -s2 * r2, -s2 * r2));
    let a = -(1.0 - t) * s1 - t * s1 * s2;
    let c = -t * s1 * s2;
    #[rustfmt::skip]
    let d2h = Matrix4::new(
        a, 0.0, t, 0.0,
        0.0, a, 0.0, t,
        t, 0.0, c, 0.0,
        0.0, t, 0.0, c,
    );
    let (w1, w2) = (-r1 * s1, -r2 * s2);
    #[rustfmt::skip]
    let omega = Matrix4::new(
        0.0, w1, 0.0, 0.0,
        -w1, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, w2,
        0.0, 0.0, -w2, 0.0,
    );
    LocalHessians { d2j, d2h, omega }
}

/// `(Ω⁻¹d²J, Ω⁻¹d²H)` at a fixed point.
pub fn hessian_pencil(record: &FixedPointRecord, params: &SystemParams) -> (Matrix4<f64>, Matrix4<f64>) {
    let h = local_hessians(record.label, params);
    let inv = symplectic_inverse(&h.omega);
    (inv * h.d2j, inv * h.d2h)
}

fn symplectic_inverse(omega: &Matrix4<f64>) -> Matrix4<f64> {
    let (w1, w2) = (omega[(0, 1)], omega[(2, 3)]);
    #[rustfmt::skip]
    let inv = Matrix4::new(
        0.0, -1.0 / w1, 0.0, 0.0,
        1.0 / w1, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, -1.0 / w2,
        0.0, 0.0, 1.0 / w2, 0.0,
    );
    inv
}

/// Eigenvalues of a real 4×4 matrix, from `X⁴ + pX² + q` with `p = −tr(M²)/2`, `q = det M`
/// when the odd coefficients vanish, and from a bounded Schur iteration otherwise (NaN if it stalls).
pub fn pencil_eigenvalues(m: &Matrix4<f64>) -> [Complex64; 4] {
    let norm = m.abs().max().max(f64::MIN_POSITIVE);
    let m2 = m * m;
    let tr1 = m.trace();
    let tr3 = (m2 * m).trace();
    if tr1.abs() <= 1e-12 * norm && tr3.abs() <= 1e-12 * norm.powi(3) {
        let p = -0.5 * m2.trace();
        let q = m.determinant();
        let disc = p * p - 4.0 * q;
        let ys: [Complex64; 2] = if disc >= 0.0 {
            let s = disc.sqrt();
            let y1 = if p >= 0.0 { -0.5 * (p + s) } else { -0.5 * (p - s) };
            let y2 = if y1 != 0.0 { q / y1 } else { 0.0 };
            [Complex64::new(y1, 0.0), Complex64::new(y2, 0.0)]
        } else {
            let s = Complex64::new(0.0, (-disc).sqrt());
            [(-p + s) / 2.0, (-p - s) / 2.0]
        };
        let roots = ys.map(real_aware_sqrt);
        return [roots[0], -roots[0], roots[1], -roots[1]];
    }
    match nalgebra::Schur::try_new(*m, f64::EPSILON, 10_000) {
        Some(schur) => {
            let ev = schur.complex_eigenvalues();
            [ev[0], ev[1], ev[2], ev[3]]
        }
        None => [Complex64::new(f64::NAN, f64::NAN); 4],
    }
}

fn real_aware_sqrt(y: Complex64) -> Complex64 {
    if y.im == 0.0 {
        if y.re >= 0.0 {
            Complex64::new(y.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-y.re).sqrt())
        }
    } else {
        y.sqrt()
    }
}

/// Williamson type at a fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WilliamsonKind {
    /// Eigenvalues `±α ± iβ`.
    FocusFocus,
    /// Eigenvalues `±iα, ±iβ`, `α ≠ β`.
    EllipticElliptic,
    /// No regular element in the Hessian pencil.
    Degenerate,
}

impl WilliamsonKind {
    /// Snake-case name used in serialized output.
    pub fn as_str(self) -> &'static str {
        match self {
            Self::FocusFocus => "focus_focus",
            Self::EllipticElliptic => "elliptic_elliptic",
            Self::Degenerate => "degenerate",
        }
    }
}

/// Classification of a fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilliamsonVerdict {
    /// Williamson type.
    pub kind: WilliamsonKind,
    /// Coefficients `(a, b)` of the regular element `aΩ⁻¹d²J + bΩ⁻¹d²H`, when one was found.
    pub witness_combo: Option<(f64, f64)>,
    /// Eigenvalues of the witness element, or of `Ω⁻¹d²H` when there is none.
    pub eigenvalues: [Complex64; 4],
    /// True when the verdict comes from the discriminant sign rather than a regular element.
    pub analytic: bool,
}

fn spectral_radius(ev: &[Complex64; 4]) -> f64 {
    ev.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Frobenius norm of a pencil element, the scale for [`is_regular`] and [`eigen_pattern`].
pub fn regularity_scale(m: &Matrix4<f64>) -> f64 {
    m.norm()
}

/// True when every pairwise eigenvalue distance exceeds [`REGULARITY_GAP`] times `scale`.
pub fn is_regular(ev: &[Complex64; 4], scale: f64) -> bool {
    if spectral_radius(ev) == 0.0 || !scale.is_finite() {
        return false;
    }
    (0..4).all(|i| ((i + 1)..4).all(|j| (ev[i] - ev[j]).norm() > REGULARITY_GAP * scale))
}

/// Williamson type read off the eigenvalues of a regular element, if the pattern is one of the two.
pub fn eigen_pattern(ev: &[Complex64; 4], scale: f64) -> Option<WilliamsonKind> {
    if !is_regular(ev, scale) {
        return None;
    }
    let tol = REGULARITY_GAP * scale;
    if ev.iter().all(|z| z.re.abs() <= tol && z.im.abs() > tol) {
        return Some(WilliamsonKind::EllipticElliptic);
    }
    if ev.iter().all(|z| z.re.abs() > tol && z.im.abs() > tol) {
        return Some(WilliamsonKind::FocusFocus);
    }
    None
}

/// Values of `c` tried for `cΩ⁻¹d²J + Ω⁻¹d²H`, in search order.
pub fn search_grid(params: &SystemParams) -> Vec<f64> {
    let (r1, r2) = (params.r1(), params.r2());
    let mut grid = vec![0.0];
    for e in -4..=4 {
        let c = 2f64.powi(e);
        grid.push(c);
        grid.push(-c);
    }
    grid.extend([1.0 / (2.0 * r2 - r1), 1.0 / r1, -1.0 / r1, -1.0 / (r1 + 2.0 * r2)]);
    grid
}

/// `T(t) = (R₁² + 4R₂²)t² − 2R₂(R₁ + 2R₂)t + R₂²`; negative exactly on `(t⁻, t⁺)`.
pub fn focus_discriminant(params: &SystemParams) -> f64 {
    let (r1, r2, t) = (params.r1(), params.r2(), params.t());
    (r1 * r1 + 4.0 * r2 * r2) * t * t - 2.0 * r2 * (r1 + 2.0 * r2) * t + r2 * r2
}

/// Williamson type from the sign of the discriminant polynomials alone.
pub fn analytic_classify(label: FixedPointLabel, params: &SystemParams) -> WilliamsonKind {
    match label {
        FixedPointLabel::M0 => {
            let d = focus_discriminant(params);
            if d.abs() < DEGENERACY_TOLERANCE * params.r2() * params.r2() {
                WilliamsonKind::Degenerate
            } else if d < 0.0 {
                WilliamsonKind::FocusFocus
            } else {
                WilliamsonKind::EllipticElliptic
            }
        }
        _ => WilliamsonKind::EllipticElliptic,
    }
}

/// Classifies a fixed point by the first regular element of the Hessian pencil on the search grid.
pub fn williamson_classify(record: &FixedPointRecord, params: &SystemParams) -> WilliamsonVerdict {
    let (aj, ah) = hessian_pencil(record, params);
    for c in search_grid(params) {
        let m = aj * c + ah;
        let ev = pencil_eigenvalues(&m);
        if let Some(kind) = eigen_pattern(&ev, regularity_scale(&m)) {
            return WilliamsonVerdict { kind, witness_combo: Some((c, 1.0)), eigenvalues: ev, analytic: false };
        }
    }
    WilliamsonVerdict {
        kind: analytic_classify(record.label, params),
        witness_combo: None,
        eigenvalues: pencil_eigenvalues(&ah),
        analytic: true,
    }
}

/// Thresholds `t^± = R₂/(2R₂ + R₁ ∓ 2√(R₁R₂))`.
pub fn critical_t_range(params: &SystemParams) -> (f64, f64) {
    let (r1, r2) = (params.r1(), params.r2());
    let s = 2.0 * (r1 * r2).sqrt();
    (r2 / (2.0 * r2 + r1 + s), r2 / (2.0 * r2 + r1 - s))
}

/// `z₁ = f(λ)`, `z₂ = g(λ)` on the corank-one family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorankOneProfile {
    /// Lagrange multiplier.
    pub lambda: f64,
    /// `f(λ)`.
    pub z1_of_lambda: f64,
    /// `g(λ)`.
    pub z2_of_lambda: f64,
}

/// Evaluates `f(λ)` and `g(λ)`.
pub fn corank_profile(params: &SystemParams, lambda: f64) -> Result<CorankOneProfile> {
    let (r1, r2, t) = (params.r1(), params.r2(), params.t());
    if t == 0.0 {
        return Err(Error::Unsupported("the corank-one profile is defined for t > 0".into()));
    }
    let u = 1.0 - t - r1 * lambda;
    if lambda == 0.0 || u == 0.0 {
        return Err(Error::OutOfDomain(format!("lambda = {lambda} is a pole of the corank-one profile")));
    }
    let l2 = r2 * r2 * lambda * lambda;
    let f = ((t * t + l2) * u * u - t * t * l2) / (2.0 * t * r2 * lambda * u * u);
    let g = ((t * t - l2) * u * u - t * t * l2) / (2.0 * t * l2 * u);
    Ok(CorankOneProfile { lambda, z1_of_lambda: f, z2_of_lambda: g })
}

/// Which ordering of the roots applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaRegime {
    /// `0 < t < t⁻`.
    BelowLower,
    /// `t⁻ ≤ t ≤ t⁺`.
    Focus,
    /// `t⁺ < t < 1`.
    AboveUpper,
    /// `t = 1`.
    One,
}

/// Roots `λ_i^± = (λ_i^−, λ_i^+)` of the factors of `f ± 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaRoots {
    /// Present only outside `[t⁻, t⁺]`.
    pub l0: Option<(f64, f64)>,
    /// Roots of `P`.
    pub l1: (f64, f64),
    /// Roots of `Q`.
    pub l2: (f64, f64),
    /// Roots of `S`.
    pub l3: (f64, f64),
}

/// The admissible set `f⁻¹([−1, 1]) = g⁻¹([−1, 1])` as a union of closed intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaIntervals {
    /// Roots of the factor polynomials.
    pub roots: LambdaRoots,
    /// Regime selecting the ordering.
    pub regime: LambdaRegime,
    /// Disjoint closed intervals in increasing order.
    pub intervals: Vec<(f64, f64)>,
}

impl LambdaIntervals {
    /// True when `λ` lies in one of the intervals, with a relative slack `tol`.
    pub fn contains(&self, lambda: f64, tol: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| {
            let slack = tol * a.abs().max(b.abs()).max(1.0);
            lambda >= a - slack && lambda <= b + slack
        })
    }
}

fn quadratic_roots(mid: f64, disc: f64, denom: f64) -> (f64, f64) {
    let s = disc.max(0.0).sqrt();
    ((mid - s) / denom, (mid + s) / denom)
}

/// Roots and intervals of the admissible `λ` set for `0 < t ≤ 1`.
pub fn lambda_intervals(params: &SystemParams) -> Result<LambdaIntervals> {
    let (r1, r2, t) = (params.r1(), params.r2(), params.t());
    if t == 0.0 {
        return Err(Error::Unsupported("lambda intervals are defined for t > 0".into()));
    }
    let den = 2.0 * r1 * r2;
    let b1 = (1.0 - 2.0 * t) * r2 - t * r1;
    let l1 = quadratic_roots(b1, b1 * b1 + 4.0 * r1 * r2 * t * (1.0 - t), den);
    let b2 = r2 - t * r1;
    let l2 = quadratic_roots(b2, b2 * b2 + 4.0 * r1 * r2 * t * (1.0 - t), den);
    let l3 = quadratic_roots(t * r1 + r2, b2 * b2 + 4.0 * t * t * r1 * r2, den);
    let delta = focus_discriminant(params);
    let l0 = (delta > 0.0).then(|| quadratic_roots((1.0 - 2.0 * t) * r2 + t * r1, delta, den));
    let roots = LambdaRoots { l0, l1, l2, l3 };
    let (tm, tp) = critical_t_range(params);
    let (regime, intervals, chain) = if t == 1.0 {
        let (a, b) = (1.0 / r1, 1.0 / r2);
        (LambdaRegime::One, vec![(-b - a, b - a), (a - b, a + b)], vec![])
    } else {
        match l0 {
            Some((l0m, l0p)) if t < tm => (
                LambdaRegime::BelowLower,
                vec![(l1.0, l2.0), (l3.0, l0m), (l0p, l1.1), (l2.1, l3.1)],
                vec![l1.0, l2.0, 0.0, l3.0, l0m, l0p, l1.1, l2.1, l3.1],
            ),
            Some((l0m, l0p)) if t > tp => (
                LambdaRegime::AboveUpper,
                vec![(l1.0, l0m), (l0p, l2.0), (l3.0, l1.1), (l2.1, l3.1)],
                vec![l1.0, l0m, l0p, l2.0, 0.0, l3.0, l1.1, l2.1, l3.1],
            ),
            _ => (
                LambdaRegime::Focus,
                vec![(l1.0, l2.0), (l3.0, l1.1), (l2.1, l3.1)],
                vec![l1.0, l2.0, 0.0, l3.0, l1.1, l2.1, l3.1],
            ),
        }
    };
    if chain.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NonConvergence(format!("lambda root ordering violated at t = {t}: {chain:?}")));
    }
    Ok(LambdaIntervals { roots, regime, intervals })
}

fn clamp_unit(x: f64, what: &'static str) -> Result<f64> {
    if x.abs() > 1.0 + 1e-9 {
        return Err(Error::OutOfDomain(format!("{what} = {x} is outside [-1, 1]")));
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// Singular values of `dF` restricted to the tangent space, largest first.
pub fn tangent_jacobian_singular_values(p: &PhasePoint, params: &SystemParams) -> (f64, f64) {
    let c = p.to_array();
    let (gj, gh) = ambient_gradients(&c, params);
    let (pj, ph) = (project_tangent(&c, &gj), project_tangent(&c, &gh));
    let m = SMatrix::<f64, 2, 6>::from_fn(|i, j| if i == 0 { pj[j] } else { ph[j] });
    let sv = m.svd(false, false).singular_values;
    (sv[0].max(sv[1]), sv[0].min(sv[1]))
}

/// The corank-one point with multiplier `λ` whose first factor has polar angle `angle`.
pub fn corank_one_point(params: &SystemParams, lambda: f64, angle: f64) -> Result<PhasePoint> {
    let (r1, r2, t) = (params.r1(), params.r2(), params.t());
    if t == 0.0 || t == 1.0 {
        return Err(Error::Unsupported(format!("corank-one parametrization requires 0 < t < 1, got {t}")));
    }
    if !(lambda.is_finite() && angle.is_finite()) {
        return Err(Error::NonFinite("corank-one parameters"));
    }
    let profile = corank_profile(params, lambda)?;
    if !lambda_intervals(params)?.contains(lambda, 1e-12) {
        return Err(Error::OutOfDomain(format!("lambda = {lambda} is outside the admissible intervals")));
    }
    let z1 = clamp_unit(profile.z1_of_lambda, "z1")?;
    let z2 = clamp_unit(profile.z2_of_lambda, "z2")?;
    let rho1 = (1.0 - z1 * z1).max(0.0).sqrt();
    let (x1, y1) = (rho1 * angle.cos(), rho1 * angle.sin());
    let k = (1.0 - t - r1 * lambda) / (r2 * lambda);
    let p = PhasePoint::new([x1, y1, z1], [k * x1, k * y1, z2])?;
    let (s1, s2) = tangent_jacobian_singular_values(&p, params);
    if s2 > RANK_TOLERANCE * s1.max(1.0) {
        return Err(Error::NonConvergence(format!("dF has rank 2 at lambda = {lambda} (sigma2 = {s2:.3e})")));
    }
    Ok(p)
}

/// `F` at the corank-one point with multiplier `λ` (independent of the angle).
pub fn boundary_value(params: &SystemParams, lambda: f64) -> Result<(f64, f64)> {
    let (r1, r2, t) = (params.r1(), params.r2(), params.t());
    let f = corank_profile(params, lambda)?.z1_of_lambda;
    let j = (t * (1.0 - t) * f - r2 * (1.0 - t) * lambda + r1 * r2 * lambda * lambda) / (t * lambda);
    let h = (t * (1.0 - t) - t * r1 * lambda + r1 * r2 * lambda * lambda * f) / (r2 * lambda);
    Ok((j, h))
}

/// Chebyshev-Lobatto nodes on `[a, b]`, endpoints included.
pub fn chebyshev_lobatto(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![0.5 * (a + b)];
    }
    (0..n)
        .map(|i| {
            if i == 0 {
                a
            } else if i + 1 == n {
                b
            } else {
                let c = (std::f64::consts::PI * i as f64 / (n - 1) as f64).cos();
                0.5 * (a + b) - 0.5 * (b - a) * c
            }
        })
        .collect()
}

fn segment(p: (f64, f64), q: (f64, f64), n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let s = i as f64 / (n - 1) as f64;
            (p.0 + s * (q.0 - p.0), p.1 + s * (q.1 - p.1))
        })
        .collect()
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Joins arcs end to end, reversing where needed, into one closed polyline.
fn chain_arcs(mut arcs: Vec<Vec<(f64, f64)>>, tol: f64) -> Result<Vec<(f64, f64)>> {
    let mut out = arcs.remove(0);
    while !arcs.is_empty() {
        let end = *out.last().expect("arcs are non-empty");
        let (idx, rev, d) = arcs
            .iter()
            .enumerate()
            .flat_map(|(i, a)| {
                [(i, false, dist(end, a[0])), (i, true, dist(end, *a.last().expect("arcs are non-empty")))]
            })
            .min_by(|x, y| x.2.total_cmp(&y.2))
            .expect("arcs are non-empty");
        if d > tol {
            return Err(Error::NonConvergence(format!("boundary arcs fail to meet (gap {d:.3e})")));
        }
        let mut next = arcs.remove(idx);
        if rev {
            next.reverse();
        }
        out.extend_from_slice(&next[1..]);
    }
    let gap = dist(out[0], *out.last().expect("non-empty"));
    if gap > tol {
        return Err(Error::NonConvergence(format!("boundary curve does not close (gap {gap:.3e})")));
    }
    let last = out.len() - 1;
    out[last] = out[0];
    Ok(out)
}

/// Closed polyline tracing `∂F(M)`; the last point repeats the first.
pub fn boundary_curve(params: &SystemParams, samples_per_interval: usize) -> Result<Vec<(f64, f64)>> {
    if samples_per_interval < 2 {
        return Err(Error::InvalidParams("need at least 2 samples per interval".into()));
    }
    let (r1, r2, t) = (params.r1(), params.r2(), params.t());
    let n = samples_per_interval;
    let scale = r1 + r2 + 1.0;
    let arcs: Vec<Vec<(f64, f64)>> = if t == 0.0 {
        let v = [(-(r1 + r2), -1.0), (r1 - r2, 1.0), (r1 + r2, 1.0), (r2 - r1, -1.0)];
        (0..4).map(|i| segment(v[i], v[(i + 1) % 4], n)).collect()
    } else if t == 1.0 {
        let para = |l: f64| (r1 * r2 * l, (r1 * r1 * r2 * r2 * l * l - r1 * r1 - r2 * r2) / (2.0 * r1 * r2));
        let iv = lambda_intervals(params)?.intervals;
        let mut arcs = vec![
            segment((-(r1 + r2), 1.0), (r1 + r2, 1.0), n),
            segment((r2 - r1, -1.0), (r1 - r2, -1.0), n),
        ];
        arcs.extend(iv.iter().map(|&(a, b)| chebyshev_lobatto(a, b, n).into_iter().map(para).collect()));
        arcs
    } else {
        lambda_intervals(params)?
            .intervals
            .iter()
            .map(|&(a, b)| chebyshev_lobatto(a, b, n).into_iter().map(|l| boundary_value(params, l)).collect())
            .collect::<Result<_>>()?
    };
    chain_arcs(arcs, 1e-8 * scale)
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    dist(p, (a.0 + s * dx, a.1 + s * dy))
}

/// Distance from `p` to a closed polyline.
pub fn distance_to_curve(curve: &[(f64, f64)], p: (f64, f64)) -> f64 {
    curve.windows(2).map(|w| segment_distance(p, w[0], w[1])).fold(f64::INFINITY, f64::min)
}

/// True when `p` is enclosed by the closed polyline or within `margin` of it.
pub fn region_contains(curve: &[(f64, f64)], p: (f64, f64), margin: f64) -> bool {
    let mut inside = false;
    for w in curve.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.1 > p.1) != (b.1 > p.1) {
            let x = a.0 + (p.1 - a.1) * (b.0 - a.0) / (b.1 - a.1);
            if p.0 < x {
                inside = !inside;
            }
        }
    }
    inside || distance_to_curve(curve, p) <= margin
}

/// `ζ = √(4R₂/R₁ − 1)`, the range of `ρ` on the singular fiber.
pub fn zeta(params: &SystemParams) -> f64 {
    (4.0 * params.r2() / params.r1() - 1.0).sqrt()
}

/// `S_ε(ρ, θ) = (ρe^{iθ}, ρf(ρ)e^{i(ε arccos((ρ² − 1)f(ρ)/2) − θ)})` with `f(ρ) = √(R₁/(R₂ + (R₂ − R₁)ρ²))`.
pub fn singular_fiber_point(params: &SystemParams, eps: i8, rho: f64, theta: f64) -> Result<StereoPoint> {
    params.require_half()?;
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidParams(format!("eps must be +1 or -1, got {eps}")));
    }
    let z = zeta(params);
    if !(rho.is_finite() && theta.is_finite()) {
        return Err(Error::NonFinite("singular fiber parameters"));
    }
    if !(0.0..=z).contains(&rho) {
        return Err(Error::OutOfDomain(format!("rho = {rho} outside [0, {z}]")));
    }
    let (r1, r2) = (params.r1(), params.r2());
    let d = r2 + (r2 - r1) * rho * rho;
    let f = (r1 / d).sqrt();
    let c = 0.5 * (rho * rho - 1.0) * f;
    let s = (r1 * (rho * rho + 1.0) * (z * z - rho * rho) / (4.0 * d)).max(0.0).sqrt();
    let phase = Complex64::new(c, f64::from(eps) * s) * Complex64::from_polar(1.0, -theta);
    Ok(StereoPoint::new(Complex64::from_polar(rho, theta), rho * f * phase))
}
