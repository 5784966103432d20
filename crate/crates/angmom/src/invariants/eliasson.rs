// SPDX-License-Identifier: MIT OR Apache-2.0

//! Linear Eliasson coordinates at the focus-focus point `m₀`.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

use crate::critical::{fixed_point, hessian_pencil, local_hessians, pencil_eigenvalues, williamson_classify};
use crate::critical::{is_regular, regularity_scale, FixedPointLabel, WilliamsonKind};
use crate::geometry::SystemParams;
use crate::{Error, Result};

/// Linear symplectic frame `P = [Y₁ Y₂ Z₁ Z₂]` at `m₀` and the matrix `B` with
/// `B ∘ (d²J, d²H) ∘ P = (q₁, q₂)`, `q₁ = u₁ξ₂ − u₂ξ₁`, `q₂ = u₁ξ₁ + u₂ξ₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EliassonFrame {
    /// Columns `Y₁, Y₂, Z₁, Z₂` in the basis `(x₁, y₁, x₂, y₂)`.
    pub basis: Matrix4<f64>,
    /// `P⁻¹`.
    pub basis_inverse: Matrix4<f64>,
    /// `B`.
    pub b_matrix: Matrix2<f64>,
    /// `B⁻¹`, whose rows are the coordinates of `(d²J, d²H)` on `(q₁, q₂)`.
    pub b_inverse: Matrix2<f64>,
    /// `(α, β)` with `P⁻¹AP` equal to the focus-focus block form with diagonal `−α`, `α`.
    pub alpha_beta: (f64, f64),
    /// Max-norm of `PᵀΩP − [[0, I], [−I, 0]]`.
    pub symplectic_residual: f64,
    /// Max-norm of the residual of the fit of `Pᵀ d²J P`, `Pᵀ d²H P` on `q₁`, `q₂`.
    pub fit_residual: f64,
}

impl EliassonFrame {
    /// `α = ‖B⁻¹(0, 1)ᵀ‖`.
    pub fn gap_alpha(&self) -> f64 {
        self.b_inverse[(0, 1)].hypot(self.b_inverse[(1, 1)])
    }

    /// Linear Eliasson coordinates `(u₁, u₂, ξ₁, ξ₂)` of a local vector `(x₁, y₁, x₂, y₂)`.
    pub fn coordinates(&self, v: [f64; 4]) -> [f64; 4] {
        let u = self.basis_inverse * Vector4::from(v);
        [u[0], u[1], u[2], u[3]]
    }
}

fn null_vector(a: &Matrix4<Complex64>) -> Vector4<Complex64> {
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let i = (0..4).min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j])).expect("four values");
    let mut x: Vector4<Complex64> = vt.row(i).adjoint();
    let k = (0..4).max_by(|&i, &j| x[i].norm().total_cmp(&x[j].norm())).expect("four entries");
    let phase = x[k] / x[k].norm();
    x /= phase;
    x
}

fn eigen_plane(a: &Matrix4<f64>, lambda: Complex64) -> (Vector4<f64>, Vector4<f64>) {
    let ac: Matrix4<Complex64> = a.map(|v| Complex64::new(v, 0.0)) - Matrix4::identity() * lambda;
    let x = null_vector(&ac);
    (x.map(|c| 2.0 * c.re), x.map(|c| 2.0 * c.im))
}

fn q_basis() -> (Matrix4<f64>, Matrix4<f64>) {
    let mut q1 = Matrix4::zeros();
    q1[(0, 3)] = 1.0;
    q1[(3, 0)] = 1.0;
    q1[(1, 2)] = -1.0;
    q1[(2, 1)] = -1.0;
    let mut q2 = Matrix4::zeros();
    q2[(0, 2)] = 1.0;
    q2[(2, 0)] = 1.0;
    q2[(1, 3)] = 1.0;
    q2[(3, 1)] = 1.0;
    (q1, q2)
}

/// Builds the linear Eliasson frame at `m₀` for any parameters where `m₀` is focus-focus.
pub fn eliasson_frame(params: &SystemParams) -> Result<EliassonFrame> {
    let record = fixed_point(FixedPointLabel::M0, params);
    let verdict = williamson_classify(&record, params);
    if verdict.kind != WilliamsonKind::FocusFocus {
        return Err(Error::Unsupported(format!("m0 is {} at t = {}", verdict.kind.as_str(), params.t())));
    }
    let (aj, ah) = hessian_pencil(&record, params);
    let mut a = ah;
    if !is_regular(&pencil_eigenvalues(&a), regularity_scale(&a)) {
        let (c, b) = verdict.witness_combo.ok_or_else(|| Error::Unsupported("no regular pencil element".into()))?;
        a = aj * c + ah * b;
    }
    let ev = pencil_eigenvalues(&a);
    let l1 = *ev
        .iter()
        .find(|z| z.re > 0.0 && z.im > 0.0)
        .ok_or_else(|| Error::NonConvergence("no eigenvalue in the open first quadrant".into()))?;
    let h = local_hessians(FixedPointLabel::M0, params);
    let omega = h.omega;
    let (y1, y2) = eigen_plane(&a, l1);
    let (g1, g2) = eigen_plane(&a, -l1);
    let w = |u: &Vector4<f64>, v: &Vector4<f64>| (u.transpose() * omega * v)[(0, 0)];
    let m = Matrix2::new(w(&y1, &g1), w(&y1, &g2), w(&y2, &g1), w(&y2, &g2));
    let c = m.try_inverse().ok_or_else(|| Error::NonConvergence("degenerate symplectic pairing".into()))?;
    let z1 = g1 * c[(0, 0)] + g2 * c[(1, 0)];
    let z2 = g1 * c[(0, 1)] + g2 * c[(1, 1)];
    let p = Matrix4::from_columns(&[y1, y2, z1, z2]);
    let p_inv = p.try_inverse().ok_or_else(|| Error::NonConvergence("singular Eliasson basis".into()))?;
    let mut standard = Matrix4::zeros();
    for i in 0..2 {
        standard[(i, i + 2)] = 1.0;
        standard[(i + 2, i)] = -1.0;
    }
    let symplectic_residual = (p.transpose() * omega * p - standard).abs().max();
    let d = p_inv * a * p;
    let alpha_beta = (-d[(0, 0)], d[(0, 1)]);
    let (q1, q2) = q_basis();
    let fit = |s: &Matrix4<f64>| {
        let t = p.transpose() * s * p;
        let (c1, c2) = (t.dot(&q1) / 4.0, t.dot(&q2) / 4.0);
        ((c1, c2), (t - q1 * c1 - q2 * c2).abs().max())
    };
    let ((j1, j2), rj) = fit(&h.d2j);
    let ((h1, h2), rh) = fit(&h.d2h);
    let b_inverse = Matrix2::new(j1, j2, h1, h2);
    let b_matrix = b_inverse.try_inverse().ok_or_else(|| Error::NonConvergence("singular B matrix".into()))?;
    let scale = h.d2j.abs().max().max(h.d2h.abs().max());
    let fit_residual = rj.max(rh);
    if fit_residual > 1e-8 * scale * p.abs().max().powi(2) {
        return Err(Error::NonConvergence(format!("Hessians do not flatten on (q1, q2): residual {fit_residual:.3e}")));
    }
    Ok(EliassonFrame { basis: p, basis_inverse: p_inv, b_matrix, b_inverse, alpha_beta, symplectic_residual, fit_residual })
}
