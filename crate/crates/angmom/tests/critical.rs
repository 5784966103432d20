// SPDX-License-Identifier: MIT OR Apache-2.0

use angmom::critical::{
    analytic_classify, boundary_curve, boundary_value, corank_one_point, critical_t_range, fixed_point, fixed_points,
    focus_discriminant, hessian_pencil, lambda_intervals, local_hessians, pencil_eigenvalues, region_contains,
    tangent_jacobian_singular_values, williamson_classify, FixedPointLabel, LambdaRegime, WilliamsonKind,
};
use angmom::geometry::{momentum_map, poisson_bracket_ambient, PhasePoint, SystemParams};
use angmom_oracles::fd_hessian;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SystemParams> {
    (0.2..3.0f64, 0.05..4.0f64, 0.0..=1.0f64).prop_map(|(r1, d, t)| SystemParams::new(r1, r1 + d, t).unwrap())
}

/// `(J, H)` in the local coordinates `(x₁, y₁, x₂, y₂)` around a fixed point.
fn local_f(label: FixedPointLabel, p: &SystemParams, x: &[f64]) -> (f64, f64) {
    let (s1, s2) = label.poles();
    let z1 = s1 * (1.0 - x[0] * x[0] - x[1] * x[1]).sqrt();
    let z2 = s2 * (1.0 - x[2] * x[2] - x[3] * x[3]).sqrt();
    let t = p.t();
    (p.r1() * z1 + p.r2() * z2, (1.0 - t) * z1 + t * (x[0] * x[2] + x[1] * x[3] + z1 * z2))
}

#[test]
fn hessians_match_finite_differences() {
    for (r1, r2, t) in [(1.0, 2.5, 0.5), (0.7, 1.9, 0.2), (2.0, 3.0, 0.9)] {
        let p = SystemParams::new(r1, r2, t).unwrap();
        for label in FixedPointLabel::ALL {
            let h = local_hessians(label, &p);
            let fj = fd_hessian(|x| local_f(label, &p, x).0, &[0.0; 4], 1e-4);
            let fh = fd_hessian(|x| local_f(label, &p, x).1, &[0.0; 4], 1e-4);
            for i in 0..4 {
                for j in 0..4 {
                    assert!((h.d2j[(i, j)] - fj[(i, j)]).abs() < 1e-6, "{label} d2J ({i},{j})");
                    assert!((h.d2h[(i, j)] - fh[(i, j)]).abs() < 1e-6, "{label} d2H ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn fixed_point_values() {
    let p = SystemParams::new(1.0, 2.5, 0.5).unwrap();
    for rec in fixed_points(&p) {
        assert_eq!(momentum_map(&rec.point, &p).unwrap(), rec.value);
    }
    assert_eq!(fixed_point(FixedPointLabel::M0, &p).value, (-1.5, 0.0));
}

#[test]
fn reference_thresholds() {
    let p = SystemParams::new(1.0, 2.5, 0.5).unwrap();
    let (tm, tp) = critical_t_range(&p);
    assert!((tm - 5.0 / (2.0 * (6.0 + 10f64.sqrt()))).abs() < 1e-15);
    assert!((tp - 5.0 / (2.0 * (6.0 - 10f64.sqrt()))).abs() < 1e-15);
    for t in [tm, tp] {
        let q = p.with_t(t).unwrap();
        let v = williamson_classify(&fixed_point(FixedPointLabel::M0, &q), &q);
        assert_eq!(v.kind, WilliamsonKind::Degenerate);
        assert!(v.analytic && v.witness_combo.is_none());
    }
}

#[test]
fn witnesses_needed_where_the_hessian_of_h_is_singular() {
    let (r1, r2) = (1.0, 2.5);
    for t in [0.0, 1.0, r2 / (2.0 * r2 - r1)] {
        let p = SystemParams::new(r1, r2, t).unwrap();
        for rec in fixed_points(&p) {
            let v = williamson_classify(&rec, &p);
            assert!(!v.analytic, "t = {t}, {}", rec.label);
            assert_eq!(v.kind, analytic_classify(rec.label, &p), "t = {t}, {}", rec.label);
        }
    }
}

proptest! {
    #[test]
    fn numeric_and_analytic_routes_agree(p in params()) {
        let d = focus_discriminant(&p);
        prop_assume!(d.abs() > 1e-6 * p.r2() * p.r2());
        for rec in fixed_points(&p) {
            let v = williamson_classify(&rec, &p);
            prop_assert!(!v.analytic);
            prop_assert_eq!(v.kind, analytic_classify(rec.label, &p));
        }
    }

    #[test]
    fn pencil_spectrum_satisfies_newton_identities(p in params(), c in -3.0..3.0f64) {
        for rec in fixed_points(&p) {
            let (aj, ah) = hessian_pencil(&rec, &p);
            let m = aj * c + ah;
            let ev = pencil_eigenvalues(&m);
            let mut power = m;
            let scale = 1.0 + m.norm();
            for k in 1..=4 {
                let sum: num_complex::Complex64 = ev.iter().map(|z| z.powi(k)).sum();
                let tol = 1e-9 * scale.powi(k);
                prop_assert!((sum.re - power.trace()).abs() < tol && sum.im.abs() < tol, "power {k}: {sum} vs {}", power.trace());
                power *= m;
            }
        }
    }

    #[test]
    fn corank_one_family_is_critical(p in params(), u in 0.0..1.0f64, angle in 0.0..6.28f64) {
        prop_assume!(p.t() > 1e-3 && p.t() < 1.0 - 1e-3);
        let iv = lambda_intervals(&p).unwrap();
        let (a, b) = iv.intervals[(u * iv.intervals.len() as f64) as usize % iv.intervals.len()];
        let lambda = a + (b - a) * (0.05 + 0.9 * u.fract());
        prop_assume!(lambda.abs() > 1e-6);
        let q = corank_one_point(&p, lambda, angle).unwrap();
        let (s1, s2) = tangent_jacobian_singular_values(&q, &p);
        prop_assert!(s2 <= 1e-9 * s1.max(1.0));
        let f = momentum_map(&q, &p).unwrap();
        let bv = boundary_value(&p, lambda).unwrap();
        prop_assert!((f.0 - bv.0).abs() < 1e-10 && (f.1 - bv.1).abs() < 1e-10);
        prop_assert!(poisson_bracket_ambient(&q, &p).abs() < 1e-12);
    }
}

#[test]
fn regimes_follow_the_thresholds() {
    let p = SystemParams::new(1.0, 2.5, 0.5).unwrap();
    let (tm, tp) = critical_t_range(&p);
    let regime = |t: f64| lambda_intervals(&p.with_t(t).unwrap()).unwrap().regime;
    assert_eq!(regime(0.5 * tm), LambdaRegime::BelowLower);
    assert_eq!(regime(0.5), LambdaRegime::Focus);
    assert_eq!(regime(0.5 * (tp + 1.0)), LambdaRegime::AboveUpper);
    assert_eq!(regime(1.0), LambdaRegime::One);
    assert_eq!(lambda_intervals(&p.with_t(0.5 * tm).unwrap()).unwrap().intervals.len(), 4);
    assert_eq!(lambda_intervals(&p).unwrap().intervals.len(), 3);
}

/// Largest and smallest `H` on `{J = j}` from a dense scan of `z₁` with the relative angle at `0` or `π`.
fn h_extremes(p: &SystemParams, j: f64) -> (f64, f64) {
    let (r1, r2, t) = (p.r1(), p.r2(), p.t());
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let n = 200_000;
    for i in 0..=n {
        let z1 = -1.0 + 2.0 * i as f64 / n as f64;
        let z2 = (j - r1 * z1) / r2;
        if z2.abs() > 1.0 {
            continue;
        }
        let s = ((1.0 - z1 * z1) * (1.0 - z2 * z2)).sqrt();
        let base = (1.0 - t) * z1 + t * z1 * z2;
        lo = lo.min(base - t * s);
        hi = hi.max(base + t * s);
    }
    (lo, hi)
}

fn curve_extremes(curve: &[(f64, f64)], j: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for w in curve.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.0 - j) * (b.0 - j) <= 0.0 && a.0 != b.0 {
            let y = a.1 + (j - a.0) * (b.1 - a.1) / (b.0 - a.0);
            lo = lo.min(y);
            hi = hi.max(y);
        }
    }
    (lo, hi)
}

#[test]
fn boundary_matches_brute_force_extremes() {
    for t in [0.0, 0.1, 0.3, 0.5, 0.7, 0.95, 1.0] {
        let p = SystemParams::new(1.0, 2.5, t).unwrap();
        let curve = boundary_curve(&p, 400).unwrap();
        assert_eq!(curve.first(), curve.last());
        for i in 1..20 {
            let j = -3.5 + 7.0 * i as f64 / 20.0;
            let (blo, bhi) = h_extremes(&p, j);
            let (clo, chi) = curve_extremes(&curve, j);
            assert!((blo - clo).abs() < 1e-4 && (bhi - chi).abs() < 1e-4, "t = {t}, J = {j}: oracle ({blo}, {bhi}) curve ({clo}, {chi})");
        }
    }
}

#[test]
fn random_points_map_inside_the_boundary() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for t in [0.2, 0.5, 0.9] {
        let p = SystemParams::new(1.0, 2.5, t).unwrap();
        let curve = boundary_curve(&p, 200).unwrap();
        for _ in 0..2000 {
            let mut v = || {
                let z: f64 = rng.gen_range(-1.0..1.0);
                let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let r = (1.0 - z * z).sqrt();
                [r * a.cos(), r * a.sin(), z]
            };
            let q = PhasePoint::new(v(), v()).unwrap();
            let f = momentum_map(&q, &p).unwrap();
            assert!(region_contains(&curve, f, 1e-6), "t = {t}: {f:?}");
        }
    }
}
