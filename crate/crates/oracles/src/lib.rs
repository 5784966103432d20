// SPDX-License-Identifier: MIT OR Apache-2.0

//! Reference computations that share no code with the `angmom` library: a cyclic Jacobi
//! dense eigensolver, dense spin operators, finite-difference Hessians, an RK4 stepper and a
//! direct reduced-space volume integral.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    let mut m = a.clone();
    let norm: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| m[(i, j)] * m[(i, j)]).sum();
        if off.sqrt() <= 1e-15 * norm.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * akp - s * akq;
                    m[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * apk - s * aqk;
                    m[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Dense symmetric matrix from a diagonal and an off-diagonal.
pub fn tridiagonal_dense(diag: &[f64], offdiag: &[f64]) -> DMatrix<f64> {
    let n = diag.len();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            offdiag[i]
        } else if j + 1 == i {
            offdiag[j]
        } else {
            0.0
        }
    })
}

/// Normalized spin operators `(X, Y, Z)` of dimension `p + 1` in the basis where `Z` is
/// diagonal with entries `(p − 2ℓ)/(p + 1)`; `X ± iY` shift `ℓ` by `∓1`.
pub fn spin_operators(p: usize) -> [DMatrix<Complex64>; 3] {
    let n = p + 1;
    let scale = 1.0 / (p as f64 + 1.0);
    let mut raise = DMatrix::<Complex64>::zeros(n, n);
    for l in 1..n {
        let v = 2.0 * ((l * (p - l + 1)) as f64).sqrt() * scale;
        raise[(l - 1, l)] = Complex64::new(v, 0.0);
    }
    let lower = raise.adjoint();
    let x = (&raise + &lower) * Complex64::new(0.5, 0.0);
    let y = (&raise - &lower) * Complex64::new(0.0, -0.5);
    let z = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new((p as f64 - 2.0 * i as f64) * scale, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    [x, y, z]
}

/// Kronecker product.
pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ac, br, bc) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    DMatrix::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

/// Dense quantum operators `(Ĵ, Ĥ)` on the tensor product of spins of dimensions `n1`, `n2`.
pub fn dense_quantum_operators(n1: usize, n2: usize, r1: f64, r2: f64, t: f64) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let [x1, y1, z1] = spin_operators(n1 - 1);
    let [x2, y2, z2] = spin_operators(n2 - 1);
    let (i1, i2) = (DMatrix::<Complex64>::identity(n1, n1), DMatrix::<Complex64>::identity(n2, n2));
    let c = |v: f64| Complex64::new(v, 0.0);
    let j = kron(&z1, &i2) * c(r1) + kron(&i1, &z2) * c(r2);
    let h = kron(&z1, &i2) * c(1.0 - t) + (kron(&x1, &x2) + kron(&y1, &y2) + kron(&z1, &z2)) * c(t);
    (j, h)
}

/// Central finite-difference Hessian of `f` at `x` with step `h`.
pub fn fd_hessian<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> DMatrix<f64> {
    let n = x.len();
    let eval = |di: usize, si: f64, dj: usize, sj: f64| {
        let mut y = x.to_vec();
        y[di] += si * h;
        y[dj] += sj * h;
        f(&y)
    };
    DMatrix::from_fn(n, n, |i, j| {
        (eval(i, 1.0, j, 1.0) - eval(i, 1.0, j, -1.0) - eval(i, -1.0, j, 1.0) + eval(i, -1.0, j, -1.0)) / (4.0 * h * h)
    })
}

/// Central finite-difference gradient of `f` at `x` with step `h`.
pub fn fd_gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let (mut a, mut b) = (x.to_vec(), x.to_vec());
            a[i] += h;
            b[i] -= h;
            (f(&a) - f(&b)) / (2.0 * h)
        })
        .collect()
}

/// Classical fourth-order Runge-Kutta for `y' = f(y)`.
pub fn rk4<F: Fn(&[f64]) -> Vec<f64>>(f: F, y0: &[f64], h: f64, steps: usize) -> Vec<f64> {
    let mut y = y0.to_vec();
    let add = |a: &[f64], b: &[f64], s: f64| a.iter().zip(b).map(|(x, y)| x + s * y).collect::<Vec<_>>();
    for _ in 0..steps {
        let k1 = f(&y);
        let k2 = f(&add(&y, &k1, 0.5 * h));
        let k3 = f(&add(&y, &k2, 0.5 * h));
        let k4 = f(&add(&y, &k3, h));
        for i in 0..y.len() {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    y
}

/// Composite Simpson rule with `n` (even) subintervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Symplectic volume of `{J = R₁ − R₂, H < 1 − 2t}` in the reduced space at `J = R₁ − R₂`,
/// integrating the relative angle fraction over `z₁`.
pub fn height_direct(r1: f64, r2: f64, t: f64, n: usize) -> f64 {
    let j0 = r1 - r2;
    let h0 = 1.0 - 2.0 * t;
    let frac = |z1: f64| {
        let z2 = (j0 - r1 * z1) / r2;
        if z2.abs() > 1.0 {
            return 0.0;
        }
        let s = (1.0 - z1 * z1).max(0.0).sqrt() * (1.0 - z2 * z2).max(0.0).sqrt();
        let a = (1.0 - t) * z1 + t * z1 * z2 - h0;
        if s == 0.0 {
            return if a < 0.0 { 1.0 } else { 0.0 };
        }
        let c = -a / (t * s);
        if c >= 1.0 {
            1.0
        } else if c <= -1.0 {
            0.0
        } else {
            1.0 - c.acos() / std::f64::consts::PI
        }
    };
    let lo = ((j0 - r2) / r1).max(-1.0);
    let hi = ((j0 + r2) / r1).min(1.0);
    r1 * simpson(frac, lo, hi, n)
}
