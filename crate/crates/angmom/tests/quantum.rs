// SPDX-License-Identifier: MIT OR Apache-2.0

use angmom::quantum::{
    assemble_block, block_dimension, j_eigenvalues, joint_spectrum, level_index, min_gap_kernel, weyl_height, JLevel,
    QuantumParams,
};
use angmom::tridiag;
use angmom::{Error, SystemParams};
use angmom_oracles::{dense_quantum_operators, jacobi_eigenvalues};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn qp(r1: f64, r2: f64, t: f64, k: u64) -> QuantumParams {
    QuantumParams::new(SystemParams::new(r1, r2, t).unwrap(), k).unwrap()
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn dense_operators_commute_and_are_hermitian() {
    let q = qp(1.0, 2.5, 0.5, 2);
    let (j, h) = dense_quantum_operators(q.n1() as usize, q.n2() as usize, 1.0, 2.5, 0.5);
    assert_eq!(j.nrows(), 40);
    assert!(max_abs(&(&j * &h - &h * &j)) <= 1e-14);
    assert!(max_abs(&(&h - h.adjoint())) <= 1e-15);
}

#[test]
fn dense_h_restricted_to_blocks_matches_assembled_blocks() {
    for (r1, r2, t, k) in [(1.0, 2.5, 0.5, 1), (1.0, 2.5, 0.3, 2), (1.5, 2.0, 0.8, 2), (0.5, 1.5, 0.5, 3)] {
        let q = qp(r1, r2, t, k);
        let (n1, n2) = (q.n1() as usize, q.n2() as usize);
        let (_, h) = dense_quantum_operators(n1, n2, r1, r2, t);
        for j in 0..q.block_count() {
            let b = assemble_block(&q, j).unwrap();
            let idx: Vec<usize> =
                (0..b.matrix.len()).map(|i| (b.ell_offset as usize + i) * n2 + (j as usize - b.ell_offset as usize - i)).collect();
            for (a, &ia) in idx.iter().enumerate() {
                for (c, &ic) in idx.iter().enumerate() {
                    let want = if a == c {
                        b.matrix.diag()[a]
                    } else if a + 1 == c {
                        b.matrix.offdiag()[a]
                    } else if c + 1 == a {
                        b.matrix.offdiag()[c]
                    } else {
                        0.0
                    };
                    assert!((h[(ia, ic)] - Complex64::new(want, 0.0)).norm() < 1e-14, "k={k} j={j} ({a},{c})");
                }
            }
        }
    }
}

#[test]
fn joint_spectrum_matches_dense_diagonalization() {
    let (r1, r2, t) = (1.0, 2.5, 0.5);
    let q = qp(r1, r2, t, 2);
    let (jop, hop) = dense_quantum_operators(q.n1() as usize, q.n2() as usize, r1, r2, t);
    let real = |m: &DMatrix<Complex64>| m.map(|z| z.re);
    let mut dense_h = jacobi_eigenvalues(&real(&hop));
    let mut dense_j = jacobi_eigenvalues(&real(&jop));
    let spectrum = joint_spectrum(&q).unwrap();
    let mut ours_h: Vec<f64> = spectrum.points.iter().map(|p| p.1).collect();
    let mut ours_j: Vec<f64> = spectrum.points.iter().map(|p| p.0).collect();
    for v in [&mut dense_h, &mut dense_j, &mut ours_h, &mut ours_j] {
        v.sort_by(f64::total_cmp);
    }
    for (a, b) in ours_h.iter().zip(&dense_h) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
    for (a, b) in ours_j.iter().zip(&dense_j) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
}

#[test]
fn block_dimensions_sum_to_hilbert_dimension() {
    for k in 1..=20u64 {
        for a in 1..=8u32 {
            for b in (a + 1)..=10 {
                let q = qp(f64::from(a) / 2.0, f64::from(b) / 2.0, 0.5, k);
                let total: u64 = (0..q.block_count()).map(|j| block_dimension(&q, j).unwrap()).sum();
                assert_eq!(total, q.dimension());
            }
        }
    }
}

#[test]
fn spectrum_is_ordered_and_complete() {
    let q = qp(1.0, 2.5, 0.5, 3);
    let spectrum = joint_spectrum(&q).unwrap();
    assert_eq!(spectrum.points.len() as u64, q.dimension());
    let js = j_eigenvalues(&q);
    for w in spectrum.points.windows(2).zip(spectrum.block_of_point.windows(2)) {
        let ((p0, p1), (b0, b1)) = ((w.0[0], w.0[1]), (w.1[0], w.1[1]));
        assert!(b0 < b1 || (b0 == b1 && p0.1 <= p1.1));
    }
    for (p, &b) in spectrum.points.iter().zip(&spectrum.block_of_point) {
        assert_eq!(p.0, js[b as usize]);
    }
}

#[test]
fn level_queries() {
    let q = qp(1.0, 2.5, 0.5, 4);
    assert_eq!(j_eigenvalues(&q)[level_index(&q, JLevel::FocusFocus).unwrap() as usize], -1.5);
    assert_eq!(j_eigenvalues(&q)[level_index(&q, JLevel::Zero).unwrap() as usize], 0.0);
    assert!(min_gap_kernel(&q, JLevel::FocusFocus).unwrap() > 0.0);
    let odd = qp(1.0, 2.5, 0.5, 5);
    assert!(matches!(weyl_height(&odd, JLevel::Zero), Err(Error::Parity(_))));
    assert!(matches!(assemble_block(&q, q.block_count()), Err(Error::OutOfDomain(_))));
}

proptest! {
    #[test]
    fn weyl_count_equals_full_solve(k in 1u64..30, a in 1u32..6, d in 1u32..6, t in 0.05..0.95f64) {
        let q = qp(f64::from(a) / 2.0, f64::from(a + d) / 2.0, t, k);
        let b = assemble_block(&q, level_index(&q, JLevel::FocusFocus).unwrap()).unwrap();
        let threshold = 1.0 - 2.0 * t;
        let ev = tridiag::eigenvalues(&b.matrix).unwrap();
        prop_assume!(ev.iter().all(|e| (e - threshold).abs() > 1e-12));
        let count = ev.iter().filter(|&&e| e < threshold).count();
        prop_assert_eq!(weyl_height(&q, JLevel::FocusFocus).unwrap(), count as f64 / k as f64);
    }
}
