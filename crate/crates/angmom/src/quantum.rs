// SPDX-License-Identifier: MIT OR Apache-2.0

//! Berezin-Toeplitz quantization: eigenvalues of `Ĵ_k`, tridiagonal blocks of `Ĥ_k`,
//! joint spectrum, minimal spectral gap, gap-law prediction and Weyl-law height.
//!
//! `ℋ_k` has the orthonormal basis `g_{ℓ,m}`, `0 ≤ ℓ < 2kR₁`, `0 ≤ m < 2kR₂`, on which
//! `Ĵ_k` is diagonal with eigenvalue `R₁ + R₂ − (ℓ + m + 1)/k`. The block of index `j`
//! is spanned by the `g_{ℓ,j−ℓ}` ordered by increasing `ℓ`.

use rayon::prelude::*;

use crate::geometry::SystemParams;
use crate::invariants::EliassonFrame;
use crate::tridiag::{self, TridiagMatrix};
use crate::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// System parameters together with the semiclassical integer `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumParams {
    base: SystemParams,
    k: u64,
    n1: u64,
    n2: u64,
}

fn as_integer(x: f64) -> Option<u64> {
    let r = x.round();
    ((x - r).abs() <= 1e-9 * x.abs().max(1.0) && r >= 1.0 && r < 9.0e15).then_some(r as u64)
}

impl QuantumParams {
    /// Validates `k ≥ 1` and that `2kR₁`, `2kR₂` are positive integers.
    pub fn new(base: SystemParams, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be a positive integer".into()));
        }
        let kf = k as f64;
        let n1 = as_integer(2.0 * kf * base.r1()).ok_or_else(|| {
            Error::InvalidParams(format!("2kR1 = {} is not a positive integer", 2.0 * kf * base.r1()))
        })?;
        let n2 = as_integer(2.0 * kf * base.r2()).ok_or_else(|| {
            Error::InvalidParams(format!("2kR2 = {} is not a positive integer", 2.0 * kf * base.r2()))
        })?;
        Ok(Self { base, k, n1, n2 })
    }

    /// Classical parameters.
    pub fn base(&self) -> &SystemParams {
        &self.base
    }

    /// Semiclassical integer.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// `2kR₁`.
    pub fn n1(&self) -> u64 {
        self.n1
    }

    /// `2kR₂`.
    pub fn n2(&self) -> u64 {
        self.n2
    }

    /// `dim ℋ_k = 4k²R₁R₂`.
    pub fn dimension(&self) -> u64 {
        self.n1 * self.n2
    }

    /// Number of distinct eigenvalues of `Ĵ_k`, `2k(R₁ + R₂) − 1`.
    pub fn block_count(&self) -> u64 {
        self.n1 + self.n2 - 1
    }
}

/// `Ĥ_k` restricted to one eigenspace of `Ĵ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBlock {
    /// Block index.
    pub j: u64,
    /// Eigenvalue of `Ĵ_k` on this block.
    pub lambda_j: f64,
    /// Smallest `ℓ` in the basis of the block.
    pub ell_offset: u64,
    /// Tridiagonal matrix of the block.
    pub matrix: TridiagMatrix,
}

/// Joint spectrum of `(Ĵ_k, Ĥ_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectrum {
    /// Semiclassical integer.
    pub k: u64,
    /// Points `(λ_J, λ_H)` ordered by block index, then by ascending `λ_H`.
    pub points: Vec<(f64, f64)>,
    /// Block index of each point.
    pub block_of_point: Vec<u64>,
}

/// Eigenvalue of `Ĵ_k` whose eigenspace is used by the gap and Weyl computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JLevel {
    /// `λ = J(m₀) = R₁ − R₂`, the focus-focus value; always present, at `j = 2kR₂ − 1`.
    FocusFocus,
    /// `λ = 0`; present only when `k(R₁ + R₂)` is an integer.
    Zero,
}

/// Eigenvalues `λ_j = R₁ + R₂ − (j + 1)/k` of `Ĵ_k`, `j = 0, …, 2(k(R₁ + R₂) − 1)`.
pub fn j_eigenvalues(qp: &QuantumParams) -> Vec<f64> {
    (0..qp.block_count()).map(|j| j_eigenvalue(qp, j)).collect()
}

fn j_eigenvalue(qp: &QuantumParams, j: u64) -> f64 {
    ((qp.n1 + qp.n2) as f64 - 2.0 * (j + 1) as f64) / (2.0 * qp.k as f64)
}

/// Dimension of the eigenspace of index `j`.
pub fn block_dimension(qp: &QuantumParams, j: u64) -> Result<u64> {
    let (lo, hi) = ell_range(qp, j)?;
    Ok(hi - lo + 1)
}

fn ell_range(qp: &QuantumParams, j: u64) -> Result<(u64, u64)> {
    if j >= qp.block_count() {
        return Err(Error::OutOfDomain(format!("block index {j} out of range 0..{}", qp.block_count())));
    }
    let lo = j.saturating_sub(qp.n2 - 1);
    let hi = j.min(qp.n1 - 1);
    Ok((lo, hi))
}

/// Tridiagonal block of `Ĥ_k` on the eigenspace of index `j`.
///
/// Diagonal at `ℓ` (with `m = j − ℓ`): `(2(kR₁ − ℓ) − 1)(2kR₂ − (2m + 1)t)/(4k²R₁R₂)`.
/// Off-diagonal between `ℓ` and `ℓ + 1`: `2t√((ℓ+1)(2kR₁−1−ℓ)m(2kR₂−m))/(4k²R₁R₂)`.
pub fn assemble_block(qp: &QuantumParams, j: u64) -> Result<SpectralBlock> {
    let (lo, hi) = ell_range(qp, j)?;
    let t = qp.base.t();
    let (n1, n2) = (qp.n1, qp.n2);
    let norm = (n1 * n2) as f64;
    let diag: Vec<f64> = (lo..=hi)
        .map(|l| {
            let m = j - l;
            let a = n1 as f64 - 2.0 * l as f64 - 1.0;
            let b = n2 as f64 - (2 * m + 1) as f64 * t;
            a * b / norm
        })
        .collect();
    let offdiag: Vec<f64> = (lo..hi)
        .map(|l| {
            let m = j - l;
            let prod = u128::from(l + 1) * u128::from(n1 - 1 - l) * u128::from(m) * u128::from(n2 - m);
            2.0 * t * (prod as f64).sqrt() / norm
        })
        .collect();
    Ok(SpectralBlock { j, lambda_j: j_eigenvalue(qp, j), ell_offset: lo, matrix: TridiagMatrix::new(diag, offdiag)? })
}

/// Joint spectrum, blocks solved in parallel and merged in block order.
pub fn joint_spectrum(qp: &QuantumParams) -> Result<JointSpectrum> {
    let blocks: Vec<Result<(u64, f64, Vec<f64>)>> = (0..qp.block_count())
        .into_par_iter()
        .map(|j| {
            let b = assemble_block(qp, j)?;
            Ok((j, b.lambda_j, tridiag::eigenvalues(&b.matrix)?))
        })
        .collect();
    let mut points = Vec::with_capacity(qp.dimension() as usize);
    let mut block_of_point = Vec::with_capacity(qp.dimension() as usize);
    for b in blocks {
        let (j, lj, ev) = b?;
        for e in ev {
            points.push((lj, e));
            block_of_point.push(j);
        }
    }
    Ok(JointSpectrum { k: qp.k, points, block_of_point })
}

/// Block index of the requested level, with a parity error when it is absent.
pub fn level_index(qp: &QuantumParams, level: JLevel) -> Result<u64> {
    match level {
        JLevel::FocusFocus => Ok(qp.n2 - 1),
        JLevel::Zero => {
            let total = qp.n1 + qp.n2;
            if total % 2 != 0 {
                return Err(Error::Parity(format!(
                    "0 is not an eigenvalue of the quantized J: k(R1 + R2) = {total}/2 must be an integer"
                )));
            }
            Ok(total / 2 - 1)
        }
    }
}

/// `H` threshold paired with a level: `H(m₀) = 1 − 2t` for the focus-focus level, `0` for the zero level.
pub fn level_threshold(qp: &QuantumParams, level: JLevel) -> f64 {
    match level {
        JLevel::FocusFocus => 1.0 - 2.0 * qp.base.t(),
        JLevel::Zero => 0.0,
    }
}

/// Block of `Ĥ_k` on the eigenspace of the requested level.
pub fn level_block(qp: &QuantumParams, level: JLevel) -> Result<SpectralBlock> {
    assemble_block(qp, level_index(qp, level)?)
}

/// `k · min_p (E_{p+1} − E_p)` over the eigenvalues of the level block.
pub fn min_gap_kernel(qp: &QuantumParams, level: JLevel) -> Result<f64> {
    let block = level_block(qp, level)?;
    if block.matrix.len() < 2 {
        return Err(Error::OutOfDomain("level block has dimension < 2".into()));
    }
    let ev = tridiag::eigenvalues(&block.matrix)?;
    let gap = ev.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    Ok(qp.k as f64 * gap)
}

/// `2πα/(ln k + a₂ + ln 2 + γ)` with `α = ‖B⁻¹(0, 1)ᵀ‖`.
pub fn gap_law_prediction(k: u64, a2: f64, frame: &EliassonFrame) -> f64 {
    let alpha = frame.gap_alpha();
    2.0 * std::f64::consts::PI * alpha / ((k as f64).ln() + a2 + std::f64::consts::LN_2 + EULER_GAMMA)
}

/// `k⁻¹ · #{eigenvalues of the level block below its threshold}` via Sturm counting.
pub fn weyl_height(qp: &QuantumParams, level: JLevel) -> Result<f64> {
    let block = level_block(qp, level)?;
    let n = tridiag::count_below(&block.matrix, level_threshold(qp, level))?;
    Ok(n as f64 / qp.k as f64)
}
