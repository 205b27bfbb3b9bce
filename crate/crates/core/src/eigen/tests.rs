use super::*;
use approx::assert_relative_eq;
use num::complex::Complex64;

fn geom(n: u32) -> Geometry {
    Geometry::new(n).unwrap()
}

fn sp(n: u32, k: i64) -> SpectralParam {
    SpectralParam::from_offset(geom(n), k)
}

fn principal(s: &SpectralParam, j: u32) -> RadialEvaluator {
    RadialSolution::new(s.clone(), j, Branch::Principal)
        .unwrap()
        .evaluator(DEFAULT_SERIES_TOL)
        .unwrap()
}

#[test]
fn geometry_basics() {
    assert!(Geometry::new(2).is_err());
    let g = geom(5);
    assert_eq!(g.rho(), &rational_int(2));
    let g = geom(4);
    assert_eq!(g.rho(), &rational(3, 2));
    assert!(g.is_n_even());
}

#[test]
fn x_of_t_examples() {
    assert_relative_eq!(x_of_t(0.0), 0.5, epsilon = 1e-15);
    assert_relative_eq!(x_of_t(3f64.ln() / 2.0), 0.25, epsilon = 1e-15);
    assert!(x_of_t(400.0) >= 0.0 && x_of_t(400.0) < 1e-300);
    assert_relative_eq!(x_of_t(-400.0), 1.0, epsilon = 1e-15);
    // monotone decreasing
    assert!(x_of_t(-1.0) > x_of_t(0.0) && x_of_t(0.0) > x_of_t(1.0));
}

#[test]
fn spectral_param_modes() {
    let s = sp(5, -1);
    assert_eq!(s.offset(), Some(-1));
    assert_eq!(s.lambda_rational(), Some(&rational_int(1)));
    assert_eq!(s.discrete_index(3), Some(3));
    assert_eq!(s.discrete_index(0), Some(0));

    let s = SpectralParam::from_rational(geom(5), rational(5, 2));
    assert!(!s.is_exact());
    assert_eq!(s.offset(), None);

    let s = SpectralParam::from_complex(geom(5), Complex64::new(0.0, 2.0));
    assert_eq!(casimir_eigenvalue(&s), Complex64::new(-8.0, 0.0));
}

#[test]
fn casimir_examples() {
    // λ = ρ gives eigenvalue 0
    let s = sp(5, 0);
    assert_eq!(casimir_exact(&s).unwrap(), rational_int(0));
    // n = 5, λ = 1: 1 − 4 = −3
    let s = sp(5, -1);
    assert_eq!(casimir_exact(&s).unwrap(), rational_int(-3));
}

#[test]
fn phi_b_zero_is_pure_cosh_power() {
    // n = 5, λ = 1, j = 0 has b = 0: φ = (cosh t)^(−3)
    let s = sp(5, -1);
    for t in [0.0, 1.0, 2.0, -1.5] {
        let v = radial_eigenfunction(&s, 0, t, 1e-12).unwrap();
        assert_relative_eq!(v.re, t.cosh().powi(-3), max_relative = 1e-12);
        assert_eq!(v.im, 0.0);
    }
}

#[test]
fn phi_odd_vanishes_at_origin() {
    // n = 5, λ = 1, j = 1: l = 1, odd parity
    let s = sp(5, -1);
    let v = radial_eigenfunction(&s, 1, 0.0, 1e-12).unwrap();
    assert!(v.norm() < 1e-15);
}

#[test]
fn phi_normalized_at_plus_infinity() {
    // (cosh t)^(λ+ρ) φ(t) → 1, checked at t = 12
    for (n, k, j) in [(5, -1, 3), (5, 1, 0), (4, 0, 2), (6, -2, 1), (7, 2, 5)] {
        let s = sp(n, k);
        let lam = s.re_lambda();
        let rho = s.geometry().rho_f64();
        let t = 12.0;
        let v = radial_eigenfunction(&s, j, t, 1e-12).unwrap().re;
        let scaled = ((lam + rho) * ln_cosh(t)).exp() * v;
        assert_relative_eq!(scaled, 1.0, max_relative = 1e-5);
    }
}

#[test]
fn parity_of_discrete_members() {
    // φ(−t) = (−1)^l φ(t) for j = λ−ρ+1+l
    let s = sp(5, -1);
    for j in 0..6u32 {
        let l = s.discrete_index(j).unwrap();
        let ev = principal(&s, j);
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for i in 0..40 {
            let t = 0.2 + i as f64 * 0.2;
            let a = ev.value(-t).unwrap().re;
            let b = ev.value(t).unwrap().re;
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max((a - sign * b).abs());
            scale = scale.max(b.abs());
        }
        assert!(worst <= 1e-10 * scale, "j={j}: {worst:e} vs scale {scale:e}");
    }
}

#[test]
fn closed_form_agrees_with_series_route() {
    // Jacobi kernel vs the raw hypergeometric series at x(t) ≤ 1/2
    use crate::specfun::{hyp2f1, HypergeometricParams};
    for (n, k) in [(5, -1), (5, 1), (7, -2), (4, 0)] {
        let s = sp(n, k);
        let j_min = s.offset().unwrap().max(-1) + 1;
        for dj in 0..3 {
            let j = (j_min + dj) as u32;
            let ev = principal(&s, j);
            let (a, b, c) = s.hyper_abc(j);
            let p = HypergeometricParams::new(a, b, c).unwrap();
            for t in [0.0, 0.7, 2.5] {
                let lam = s.re_lambda();
                let rho = s.geometry().rho_f64();
                let series = (-(lam + rho) * ln_cosh(t)).exp()
                    * hyp2f1(&p, x_of_t(t), 1e-14).unwrap().value.re;
                let closed = ev.value(t).unwrap().re;
                assert_relative_eq!(closed, series, max_relative = 1e-12);
            }
        }
    }
}

#[test]
fn connection_path_matches_direct_series_on_overlap() {
    // For t < 0 the non-terminating branch switches to the 1−x connection;
    // the raw Gauss series still converges for moderate |t| and pins it.
    use crate::specfun::{hyp2f1, HypergeometricParams};
    for (n, k, j) in [(4, 0, 0), (4, 1, 0), (6, 1, 1), (4, 2, 1)] {
        let s = sp(n, k);
        // j outside the progression: j ≤ λ−ρ keeps b ≥ 1
        assert!(s.discrete_index(j).is_none());
        let ev = principal(&s, j);
        let (a, b, c) = s.hyper_abc(j);
        let p = HypergeometricParams::new(a, b, c).unwrap();
        for t in [-0.2, -0.6, -1.1] {
            let lam = s.re_lambda();
            let rho = s.geometry().rho_f64();
            let direct = (-(lam + rho) * ln_cosh(t)).exp()
                * hyp2f1(&p, x_of_t(t), 1e-14).unwrap().value.re;
            let kernelled = ev.value(t).unwrap().re;
            assert_relative_eq!(kernelled, direct, max_relative = 1e-10);
        }
    }
}

#[test]
fn analytic_ode_residuals_small_for_all_branches() {
    let mut cases: Vec<(SpectralParam, u32, Branch)> = Vec::new();
    // closed-form members
    for j in 0..4 {
        cases.push((sp(5, -1), j, Branch::Principal));
        cases.push((sp(5, -1), j, Branch::PrincipalReflected));
    }
    // series-backed members (outside the progression), n even
    cases.push((sp(4, 1), 0, Branch::Principal));
    cases.push((sp(4, 2), 1, Branch::Principal));
    // Euler-terminating members, n odd
    cases.push((sp(5, 2), 0, Branch::Principal));
    cases.push((sp(7, 1), 2, Branch::Principal));
    // secondary branches, n even
    cases.push((sp(4, 0), 1, Branch::Secondary));
    cases.push((sp(6, -2), 2, Branch::Secondary));
    // float-mode λ
    cases.push((
        SpectralParam::from_complex(geom(5), Complex64::new(1.3, 0.0)),
        1,
        Branch::Principal,
    ));

    for (s, j, branch) in cases {
        let ev = RadialSolution::new(s.clone(), j, branch)
            .unwrap()
            .evaluator(1e-13)
            .unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..41 {
            let t = -10.0 + 0.5 * i as f64;
            worst = worst.max(relative_ode_residual(&s, j, &ev, t).unwrap());
        }
        assert!(
            worst < 1e-8,
            "residual {worst:e} for n={}, k={:?}, j={j}, {:?}",
            s.geometry().n(),
            s.offset(),
            branch
        );
    }
}

#[test]
fn log_branch_residual_and_wronskian() {
    // n odd, λ a positive integer
    for (n, k, j) in [(5, -1, 2), (5, -1, 0), (7, -2, 1), (5, 0, 3)] {
        let s = sp(n, k);
        let sol = RadialSolution::new(s.clone(), j, Branch::SecondaryLog).unwrap();
        let ev = sol.evaluator(1e-13).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..39 {
            let t = 0.5 + 0.25 * i as f64;
            worst = worst.max(relative_ode_residual(&s, j, &ev, t).unwrap());
        }
        assert!(worst < 1e-8, "log-branch residual {worst:e} at n={n}, j={j}");

        // Wronskian with the principal branch at t = 1
        let phi = principal(&s, j);
        let t = 1.0;
        let (pv, pd, _) = phi.value_d1_d2(t).unwrap();
        let (gv, gd, _) = ev.value_d1_d2(t).unwrap();
        let w = (pv * gd - pd * gv).norm();
        assert!(w > 1e-12, "wronskian too small: {w:e}");
    }
}

#[test]
fn log_branch_domain_errors() {
    let s = sp(5, -1);
    let ev = RadialSolution::new(s, 2, Branch::SecondaryLog)
        .unwrap()
        .evaluator(1e-12)
        .unwrap();
    // x(t) underflows to 0 for very large t
    assert!(ev.value(400.0).is_err());
}

#[test]
fn secondary_branch_normalization_n_even() {
    // (cosh t)^(−λ+ρ) φ_(−λ,j)(t) → 1 at t = 12
    for (n, k, j) in [(4, 0, 0), (4, 0, 2), (6, -2, 1), (8, -3, 0)] {
        let s = sp(n, k);
        let lam = s.re_lambda();
        let rho = s.geometry().rho_f64();
        let v = second_solution(&s, j, 12.0).unwrap().re;
        let scaled = ((-lam + rho) * ln_cosh(12.0)).exp() * v;
        assert_relative_eq!(scaled, 1.0, max_relative = 1e-5);
    }
}

#[test]
fn secondary_rejected_for_odd_n_exact() {
    let s = sp(5, -1);
    assert!(RadialSolution::new(s, 1, Branch::Secondary).is_err());
}

#[test]
fn reflected_and_principal_are_independent_off_progression() {
    // Wronskian at t = 0 bounded away from zero when j ∉ λ−ρ+ℕ
    for (n, k, j) in [(4, 0, 0), (4, 1, 1), (6, 0, 0)] {
        let s = sp(n, k);
        assert!(s.discrete_index(j).is_none());
        let phi = principal(&s, j);
        let refl = RadialSolution::new(s.clone(), j, Branch::PrincipalReflected)
            .unwrap()
            .evaluator(1e-13)
            .unwrap();
        let (pv, pd, _) = phi.value_d1_d2(0.0).unwrap();
        let (rv, rd, _) = refl.value_d1_d2(0.0).unwrap();
        let w = (pv * rd - pd * rv).norm();
        assert!(w > 1e-8, "wronskian {w:e} at n={n}, k={k}, j={j}");
    }
}

#[test]
fn finite_difference_residual_operation() {
    // constant solves the equation at λ = ρ, j = 0
    let s = sp(5, 0);
    let r = radial_ode_residual_real(&s, 0, |_| 1.0, 0.7, DEFAULT_FD_STEP);
    assert!(r.abs() < 1e-12);

    // the closed form solves it everywhere (finite-difference route)
    let s = sp(5, -1);
    let ev = principal(&s, 3);
    let mut worst: f64 = 0.0;
    for i in 0..21 {
        let t = -10.0 + i as f64;
        let r = radial_ode_residual(&s, 3, |u| ev.value(u).unwrap(), t, DEFAULT_FD_STEP);
        let scale = ev.value(t).unwrap().norm().max(1.0);
        worst = worst.max(r.norm() / scale);
    }
    assert!(worst < 1e-8, "fd residual {worst:e}");
}

#[test]
fn transform_consistency() {
    // Φ = (cosh t)^(λ+ρ) φ satisfies Φ'' − 2λ tanh t Φ' − ab sech²t Φ = 0
    for (n, k, j) in [(5, -1, 2), (4, 0, 1), (5, 1, 0)] {
        let s = sp(n, k);
        let ev = principal(&s, j);
        let lam = s.re_lambda();
        let rho = s.geometry().rho_f64();
        let (a, b, _) = s.hyper_abc(j);
        let ab = (a * b).re;
        let mut worst: f64 = 0.0;
        for i in 0..33 {
            let t = -8.0 + 0.5 * i as f64;
            let (v, d1, d2) = ev.value_d1_d2(t).unwrap();
            let (v, d1, d2) = (v.re, d1.re, d2.re);
            let e = lam + rho;
            let th = t.tanh();
            let sech2 = 1.0 - th * th;
            let cap = ((lam + rho) * ln_cosh(t)).exp();
            let cap_v = cap * v;
            let cap_d1 = cap * (e * th * v + d1);
            let cap_d2 = cap * ((e * e * th * th + e * sech2) * v + 2.0 * e * th * d1 + d2);
            let res = cap_d2 - 2.0 * lam * th * cap_d1 - ab * sech2 * cap_v;
            let scale = cap_d2.abs() + 2.0 * lam * cap_d1.abs() + (ab.abs() + 1.0) * cap_v.abs();
            worst = worst.max(res.abs() / scale.max(1e-300));
        }
        assert!(worst < 1e-8, "transform residual {worst:e} (n={n}, k={k}, j={j})");
    }
}

#[test]
fn asymptotic_constant_examples() {
    // Γ-pole zeros occur exactly on the progression j ∈ λ−ρ+ℕ
    let s = sp(5, 1); // λ = 3, D = {2, 3, …}
    for j in 0..8u32 {
        let a = asymptotic_constant(&s, j, 12.0).unwrap();
        let in_progression = j as i64 >= s.offset().unwrap() + 1;
        assert_eq!(a.exact.is_zero(), in_progression, "j = {j}");
    }

    // n = 4, λ = 1 (float mode: λ−ρ ∉ ℤ), j = 0: A = Γ(2)Γ(1)/(Γ(5/2)Γ(1/2))
    let s = SpectralParam::from_rational(geom(4), rational_int(1));
    let a = asymptotic_constant(&s, 0, 12.0).unwrap();
    let expect = 4.0 / (3.0 * std::f64::consts::PI);
    assert_relative_eq!(a.exact.to_c64().re, expect, max_relative = 1e-12);
    assert_relative_eq!(a.estimate.re, expect, max_relative = 1e-5);

    // exact-mode probe agreement
    let s = sp(4, 1); // λ = 5/2
    let a = asymptotic_constant(&s, 0, 12.0).unwrap();
    assert!(!a.exact.is_zero());
    assert_relative_eq!(a.estimate.re, a.exact.to_c64().re, max_relative = 1e-5);

    // preconditions
    assert!(asymptotic_constant(&sp(5, -3), 0, 12.0).is_err()); // Re λ ≤ 0
    assert!(asymptotic_constant(&sp(5, -1), 0, 5.0).is_err()); // t too small
}

#[test]
fn jacobi_radial_form_matches_evaluator() {
    let s = sp(7, -2); // λ = 1, ρ = 3
    let j = 3;
    let form = jacobi_radial_form(&s, j).unwrap();
    assert_eq!(form.l, 4);
    let ev = principal(&s, j);
    for t in [-2.0f64, 0.3, 1.7] {
        let x = t.tanh();
        let lam = s.re_lambda();
        let rho = s.geometry().rho_f64();
        let direct = (-(lam + rho) * ln_cosh(t)).exp()
            * form.scale.to_f64().unwrap()
            * form.poly_tanh.eval_f64(x);
        assert_relative_eq!(direct, ev.value(t).unwrap().re, max_relative = 1e-12);
    }
}

#[test]
fn cosh_weighted_derivative_matches_numerics() {
    // d/dt [(cosh t)^e Q(tanh t)] = (cosh t)^e [e x Q + (1−x²)Q'](tanh t)
    let q = RatPoly::new(vec![rational_int(1), rational_int(-2), rational_int(3)]);
    let e = rational(-7, 2);
    let d = cosh_weighted_derivative(&q, &e);
    let t = 0.63f64;
    let x = t.tanh();
    let ef = -3.5;
    let lhs = {
        let h = 1e-6;
        let f = |u: f64| (ef * ln_cosh(u)).exp() * q.eval_f64(u.tanh());
        (f(t + h) - f(t - h)) / (2.0 * h)
    };
    let rhs = (ef * ln_cosh(t)).exp() * d.eval_f64(x);
    assert_relative_eq!(lhs, rhs, max_relative = 1e-9);
}
