// SPDX-License-Identifier: MIT OR Apache-2.0

//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection with a Newton polish.

use crate::{Error, Result};

/// Symmetric tridiagonal matrix stored as its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagMatrix {
    /// Validates `n ≥ 1`, `offdiag.len() = n − 1` and finite entries.
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::OutOfDomain("tridiagonal matrix must have n >= 1".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::OutOfDomain(format!(
                "off-diagonal length {} does not match diagonal length {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(offdiag.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("tridiagonal entries"));
        }
        Ok(Self { diag, offdiag })
    }

    /// Dimension.
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    /// Always false; a valid matrix has at least one row.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Diagonal entries.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Off-diagonal entries.
    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Infinity norm `max_i |dᵢ| + |eᵢ₋₁| + |eᵢ|`.
    pub fn norm(&self) -> f64 {
        (0..self.len())
            .map(|i| self.diag[i].abs() + self.off_abs(i))
            .fold(0.0, f64::max)
    }

    /// Gershgorin enclosure `[min dᵢ − rᵢ, max dᵢ + rᵢ]` of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        (0..self.len()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
            let r = self.off_abs(i);
            (lo.min(self.diag[i] - r), hi.max(self.diag[i] + r))
        })
    }

    fn off_abs(&self, i: usize) -> f64 {
        let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
        let right = self.offdiag.get(i).map_or(0.0, |e| e.abs());
        left + right
    }
}

struct Sturm<'a> {
    d: &'a [f64],
    e2: Vec<f64>,
    pivmin: f64,
}

impl<'a> Sturm<'a> {
    fn new(d: &'a [f64], e: &[f64]) -> Self {
        let e2: Vec<f64> = e.iter().map(|x| x * x).collect();
        let emax = e2.iter().copied().fold(1.0_f64, f64::max);
        Self { d, e2, pivmin: f64::MIN_POSITIVE * emax }
    }

    /// Number of eigenvalues strictly below `x`.
    fn count(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.d[0] - x;
        if q == 0.0 {
            q = self.pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.d.len() {
            q = self.d[i] - x - self.e2[i - 1] / q;
            if q == 0.0 {
                q = self.pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Newton step `−det/det'` from the pivot recurrence, if well defined.
    fn newton_step(&self, x: f64) -> Option<f64> {
        let mut q = self.d[0] - x;
        let mut dq = -1.0;
        if q == 0.0 {
            return Some(0.0);
        }
        let mut s = dq / q;
        for i in 1..self.d.len() {
            let qn = self.d[i] - x - self.e2[i - 1] / q;
            let dqn = -1.0 + self.e2[i - 1] * dq / (q * q);
            if qn == 0.0 {
                return Some(0.0);
            }
            q = qn;
            dq = dqn;
            s += dq / q;
        }
        if s == 0.0 || !s.is_finite() {
            return None;
        }
        Some(-1.0 / s)
    }
}

/// Number of eigenvalues of `m` strictly below `threshold`.
pub fn count_below(m: &TridiagMatrix, threshold: f64) -> Result<usize> {
    if !threshold.is_finite() {
        return Err(Error::NonFinite("Sturm threshold"));
    }
    Ok(Sturm::new(&m.diag, &m.offdiag).count(threshold))
}

/// All eigenvalues of `m` in ascending order.
pub fn eigenvalues(m: &TridiagMatrix) -> Result<Vec<f64>> {
    let scale = m.norm().max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(m.len());
    let mut start = 0;
    for i in 0..m.len() {
        let split = i + 1 == m.len() || {
            let e = m.offdiag[i].abs();
            e == 0.0 || e <= 0.5 * f64::EPSILON * (m.diag[i].abs() + m.diag[i + 1].abs())
        };
        if split {
            block_eigenvalues(&m.diag[start..=i], &m.offdiag[start..i], scale, &mut out);
            start = i + 1;
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

fn block_eigenvalues(d: &[f64], e: &[f64], scale: f64, out: &mut Vec<f64>) {
    if d.len() == 1 {
        out.push(d[0]);
        return;
    }
    let block = TridiagMatrix { diag: d.to_vec(), offdiag: e.to_vec() };
    let (lo, hi) = block.gershgorin();
    let pad = 2.0 * f64::EPSILON * scale + f64::MIN_POSITIVE;
    let (lo, hi) = (lo - pad, hi + pad);
    let sturm = Sturm::new(d, e);
    let tol = 1e-14 * scale;
    let mut stack = vec![(lo, hi, 0usize, d.len())];
    while let Some((a, b, na, nb)) = stack.pop() {
        if nb == na {
            continue;
        }
        let mid = 0.5 * (a + b);
        let width_ok = b - a <= tol.max(2.0 * f64::EPSILON * mid.abs());
        if width_ok || mid <= a || mid >= b {
            let x = if nb - na == 1 { polish(&sturm, a, b) } else { mid };
            out.extend(std::iter::repeat(x).take(nb - na));
            continue;
        }
        let nm = sturm.count(mid).clamp(na, nb);
        stack.push((mid, b, nm, nb));
        stack.push((a, mid, na, nm));
    }
}

fn polish(sturm: &Sturm<'_>, a: f64, b: f64) -> f64 {
    let mut x = 0.5 * (a + b);
    for _ in 0..3 {
        match sturm.newton_step(x) {
            Some(step) if (x + step) >= a && (x + step) <= b => {
                let next = x + step;
                if next == x {
                    break;
                }
                x = next;
            }
            _ => break,
        }
    }
    x
}
