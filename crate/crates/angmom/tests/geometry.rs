// SPDX-License-Identifier: MIT OR Apache-2.0

use angmom::geometry::{
    hamiltonian_vector_field, hamiltonian_vector_field_h_half, momentum_map, momentum_map_unchecked, poisson_bracket,
    poisson_bracket_ambient, stereo_forward, stereo_inverse, Observable, PhasePoint, StereoPoint, SystemParams,
};
use angmom::critical::singular_fiber_point;
use angmom::Error;
use angmom_oracles::rk4;
use num_complex::Complex64;
use proptest::prelude::*;

fn unit(theta: f64, phi: f64) -> [f64; 3] {
    [phi.sin() * theta.cos(), phi.sin() * theta.sin(), phi.cos()]
}

fn chart_point() -> impl Strategy<Value = StereoPoint> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
        .prop_map(|(a, b, c, d)| StereoPoint::new(Complex64::new(a, b), Complex64::new(c, d)))
}

fn params() -> impl Strategy<Value = SystemParams> {
    (0.2..3.0f64, 0.05..4.0f64, 0.0..=1.0f64).prop_map(|(r1, d, t)| SystemParams::new(r1, r1 + d, t).unwrap())
}

fn f_on_chart(which: Observable, p: &SystemParams, s: &StereoPoint) -> f64 {
    let q = stereo_inverse(s).unwrap();
    let (j, h) = momentum_map_unchecked(&q.to_array(), p);
    match which {
        Observable::J => j,
        Observable::H => h,
    }
}

/// `df(X)` by a central difference along the chart field.
fn directional(which: Observable, p: &SystemParams, s: &StereoPoint, x: &[Complex64; 4]) -> f64 {
    let h = 1e-6;
    let shift = |e: f64| StereoPoint::new(s.z + x[0] * e, s.w + x[2] * e);
    (f_on_chart(which, p, &shift(h)) - f_on_chart(which, p, &shift(-h))) / (2.0 * h)
}

proptest! {
    #[test]
    fn stereo_round_trip(p in params(), s in chart_point()) {
        let _ = p;
        let q = stereo_inverse(&s).unwrap();
        prop_assert!(q.sphere_deviation() < 1e-14);
        let back = stereo_forward(&q).unwrap();
        prop_assert!((back.z - s.z).norm() < 1e-12 * (1.0 + s.z.norm_sqr()));
        prop_assert!((back.w - s.w).norm() < 1e-12 * (1.0 + s.w.norm_sqr()));
    }

    #[test]
    fn functions_commute_at_random_points(p in params(), a in 0.0..6.3f64, b in 0.0..3.14f64, c in 0.0..6.3f64, d in 0.0..3.14f64) {
        let q = PhasePoint::new(unit(a, b), unit(c, d)).unwrap();
        let scale = 1.0 + p.r1().max(p.r2()).recip();
        prop_assert!(poisson_bracket(&q, &p).unwrap().abs() < 1e-10 * scale);
        prop_assert!(poisson_bracket_ambient(&q, &p).abs() < 1e-12 * scale);
    }

    #[test]
    fn vector_fields_satisfy_the_bracket_identities(p in params(), s in chart_point()) {
        let xj = hamiltonian_vector_field(Observable::J, &s, &p).unwrap();
        let xh = hamiltonian_vector_field(Observable::H, &s, &p).unwrap();
        let size = 1.0 + xj[0].norm() + xj[2].norm() + xh[0].norm() + xh[2].norm();
        prop_assert!(directional(Observable::J, &p, &s, &xj).abs() < 1e-6 * size);
        prop_assert!(directional(Observable::H, &p, &s, &xh).abs() < 1e-6 * size);
        prop_assert!(directional(Observable::J, &p, &s, &xh).abs() < 1e-6 * size);
        prop_assert!(directional(Observable::H, &p, &s, &xj).abs() < 1e-6 * size);
    }

    #[test]
    fn half_coupling_field_matches_general_field(r1 in 0.2..3.0f64, d in 0.05..4.0f64, s in chart_point()) {
        let p = SystemParams::new(r1, r1 + d, 0.5).unwrap();
        let general = hamiltonian_vector_field(Observable::H, &s, &p).unwrap();
        let half = hamiltonian_vector_field_h_half(&s, &p).unwrap();
        for i in 0..4 {
            prop_assert!((general[i] - half[i]).norm() < 1e-12 * (1.0 + general[i].norm()));
        }
    }
}

#[test]
fn j_flow_is_a_rotation_of_period_two_pi() {
    let p = SystemParams::new(1.0, 2.5, 0.5).unwrap();
    let s0 = StereoPoint::new(Complex64::new(0.3, -0.2), Complex64::new(-0.7, 0.4));
    let field = |y: &[f64]| {
        let s = StereoPoint::new(Complex64::new(y[0], y[1]), Complex64::new(y[2], y[3]));
        let x = hamiltonian_vector_field(Observable::J, &s, &p).unwrap();
        vec![x[0].re, x[0].im, x[2].re, x[2].im]
    };
    let y0 = [s0.z.re, s0.z.im, s0.w.re, s0.w.im];
    let y = rk4(field, &y0, 2.0 * std::f64::consts::PI / 2000.0, 2000);
    for i in 0..4 {
        assert!((y[i] - y0[i]).abs() < 1e-10, "component {i}: {} vs {}", y[i], y0[i]);
    }
}

#[test]
fn h_flow_conserves_the_momentum_map() {
    let p = SystemParams::new(1.0, 2.5, 0.3).unwrap();
    let s0 = StereoPoint::new(Complex64::new(0.5, 0.1), Complex64::new(0.2, -0.6));
    let field = |y: &[f64]| {
        let s = StereoPoint::new(Complex64::new(y[0], y[1]), Complex64::new(y[2], y[3]));
        let x = hamiltonian_vector_field(Observable::H, &s, &p).unwrap();
        vec![x[0].re, x[0].im, x[2].re, x[2].im]
    };
    let y = rk4(field, &[s0.z.re, s0.z.im, s0.w.re, s0.w.im], 1e-3, 3000);
    let end = StereoPoint::new(Complex64::new(y[0], y[1]), Complex64::new(y[2], y[3]));
    let f0 = momentum_map(&stereo_inverse(&s0).unwrap(), &p).unwrap();
    let f1 = momentum_map(&stereo_inverse(&end).unwrap(), &p).unwrap();
    assert!((f0.0 - f1.0).abs() < 1e-10 && (f0.1 - f1.1).abs() < 1e-10, "{f0:?} vs {f1:?}");
}

#[test]
fn bracket_falls_back_outside_the_chart() {
    let p = SystemParams::new(1.0, 2.5, 0.5).unwrap();
    let q = PhasePoint::new([0.0, 0.0, -1.0], [0.6, 0.0, 0.8]).unwrap();
    assert!(matches!(stereo_forward(&q), Err(Error::ChartDomain(_))));
    assert!(poisson_bracket(&q, &p).unwrap().abs() < 1e-14);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(SystemParams::new(0.0, 1.0, 0.5), Err(Error::InvalidParams(_))));
    assert!(matches!(SystemParams::new(1.0, 1.0, -0.1), Err(Error::InvalidParams(_))));
    assert!(SystemParams::new(f64::NAN, 1.0, 0.5).is_err());
    assert!(matches!(PhasePoint::new([0.0, 0.0, 1.1], [0.0, 0.0, 1.0]), Err(Error::OffSphere(_))));
}

#[test]
fn singular_fiber_lies_on_the_focus_focus_level() {
    let p = SystemParams::new(1.0, 2.5, 0.5).unwrap();
    for eps in [1i8, -1] {
        for i in 0..=20 {
            let rho = 3.0 * i as f64 / 20.0;
            let s = singular_fiber_point(&p, eps, rho, 0.37 * i as f64).unwrap();
            let (j, h) = momentum_map(&stereo_inverse(&s).unwrap(), &p).unwrap();
            assert!((j + 1.5).abs() < 1e-12 && h.abs() < 1e-12, "eps {eps} rho {rho}: ({j}, {h})");
        }
    }
}
