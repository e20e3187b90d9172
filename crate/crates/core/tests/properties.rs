use approx::assert_relative_eq;
use evapcond_core::admissibility::{condensation_bound, pressure_bound};
use evapcond_core::entropy::{scaled_i0_from_upsilon, theta_tilde};
use evapcond_core::numerics::optimize::golden_max;
use evapcond_core::*;
use proptest::prelude::*;

fn gas(delta: f64) -> Gas {
    Gas::new(delta).unwrap()
}

fn delta_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(2.0), Just(3.0), Just(5.0), 0.0..8.0]
}

fn state_strategy() -> impl Strategy<Value = State> {
    (-3.0_f64..1.0, 0.1_f64..3.0, -2.5_f64..2.0).prop_map(|(lp, t, m)| State::new(lp.exp(), t, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn moments_are_positive_and_recursive(s in -30.0_f64..30.0) {
        let m = HalfGaussMoments::new(s);
        for n in 0..=5 {
            prop_assert!(m.scaled[n] > 0.0 && m.scaled[n].is_finite());
        }
        for n in 2..=5 {
            let rhs = s * m.scaled[n - 1] + (n as f64 - 1.0) / 2.0 * m.scaled[n - 2];
            prop_assert!(((m.scaled[n] - rhs) / m.scaled[n]).abs() <= 1e-12, "n = {n}");
        }
    }

    #[test]
    fn tail_bounds_bracket_i0(s in -30.0_f64..-3.0) {
        let m = HalfGaussMoments::new(s);
        // I_0 e^{s^2} 2|s| against the two rational bounds
        let x = m.scaled[0] * 2.0 * s.abs();
        let s2 = s * s;
        let lower = (1.0 + 2.5 / s2) / (1.0 + 3.0 / s2 + 0.75 / (s2 * s2));
        let upper = (1.0 + 4.5 / s2 + 2.0 / (s2 * s2)) / (1.0 + 5.0 / s2 + 3.75 / (s2 * s2));
        let slack = 8.0 * f64::EPSILON;
        prop_assert!(x >= lower * (1.0 - slack) && x <= upper * (1.0 + slack), "{lower} {x} {upper}");
    }

    #[test]
    fn shape_round_trip(s in -25.0_f64..25.0, delta in prop_oneof![Just(0.5), Just(2.0), Just(3.0), Just(5.0)]) {
        let g = gas(delta);
        let phi = shape_function(s, &g).phi;
        let back = solve_shape_parameter(phi, &g).unwrap();
        prop_assert!((back - s).abs() <= 1e-9, "s = {s}, back = {back}");
    }

    #[test]
    fn theta_tilde_identity(s in -25.0_f64..25.0, delta in delta_strategy()) {
        let g = gas(delta);
        let u = shape_function(s, &g).phi;
        prop_assert!((theta_tilde(s, u, delta) + 0.5 + s * s - theta(s)).abs() <= 1e-10);
    }

    #[test]
    fn i0_from_upsilon(s in -25.0_f64..1.0, delta in delta_strategy()) {
        let g = gas(delta);
        let u = shape_function(s, &g).phi;
        let m = HalfGaussMoments::new(s);
        // J_0 = I_0 e^{s^2} for s < 0, I_0 otherwise
        let expected = if s < 0.0 { m.scaled[0] } else { m.scaled[0] * (s * s).exp() };
        prop_assert!(((scaled_i0_from_upsilon(s, u, delta) - expected) / expected).abs() <= 1e-9);
    }

    #[test]
    fn gamma_decreases(a in 0.0_f64..50.0, b in 0.0_f64..50.0) {
        prop_assume!(a < b);
        prop_assert!(heat_capacity_ratio(a) > heat_capacity_ratio(b));
    }

    #[test]
    fn conservation_identities(state in state_strategy(), delta in delta_strategy()) {
        let g = gas(delta);
        let plus = boundary_half_moments(&g);
        let minus = incoming_half_moments(&state, &g);
        let l = flux_moments(&state, &g);
        let tol = |x: f64| 1e-13 * (1.0 + x.abs());
        prop_assert!((plus.n1 - minus.n1 - l.l1).abs() <= tol(l.l1));
        prop_assert!((plus.n2 + minus.n2 - l.l2).abs() <= tol(l.l2));
        prop_assert!((plus.n5 - minus.n5 - l.l5).abs() <= tol(l.l5) * 10.0);
    }

    #[test]
    fn rest_keeps_boundary_moments(lp in -3.0_f64..2.0, t in 0.05_f64..5.0, delta in delta_strategy()) {
        let g = gas(delta);
        let minus = incoming_half_moments(&State::new(lp.exp(), t, 0.0).unwrap(), &g);
        let plus = boundary_half_moments(&g);
        prop_assert_eq!(minus.n1, plus.n1);
        prop_assert_eq!(minus.n5, plus.n5);
    }

    #[test]
    fn regime_partition(m in -3.0_f64..3.0) {
        let r = classify_regime(m);
        prop_assert_eq!(r.k_plus + r.l_zero + r.k_minus, 5);
        prop_assert_eq!(r.free_parameters.is_none(), r.regime.is_degenerate());
        let evaporating = matches!(r.regime, Regime::SubsonicEvaporation | Regime::SupersonicEvaporation | Regime::SonicEvaporation);
        prop_assert_eq!(evaporating, m > 0.0);
    }

    #[test]
    fn admissibility_matches_moment_signs(state in state_strategy(), delta in delta_strategy()) {
        let g = gas(delta);
        let n = incoming_half_moments(&state, &g);
        let tie = 1e-12;
        let overall = check_overall(&state, &g);
        if overall.margin.abs() > tie && n.n2.abs() > tie {
            prop_assert_eq!(overall.satisfied, n.n2 >= 0.0);
        }
        if state.mach > 0.0 {
            let e = check_evaporation(&state, &g).unwrap();
            if e.flux.margin.abs() > tie && n.n1.abs() > tie {
                prop_assert_eq!(e.flux.satisfied, n.n1 >= 0.0);
            }
            if e.energy.margin.abs() > tie && n.n5.abs() > tie {
                prop_assert_eq!(e.energy.satisfied, n.n5 >= 0.0);
            }
        }
    }

    #[test]
    fn condensation_bound_peaks_at_pressure_bound(m in -3.0_f64..-0.01, delta in delta_strategy()) {
        let (_, peak) = golden_max(|t: f64| condensation_bound(t, m, delta), 1e-3, 10.0, 1e-10);
        prop_assert!((peak - pressure_bound(m, delta)).abs() <= 1e-12);
    }

    #[test]
    fn pressure_bound_nests_in_delta(m in 0.0_f64..2.0, a in 0.0_f64..10.0, b in 0.0_f64..10.0) {
        prop_assume!(a <= b);
        prop_assert!(pressure_bound(m, a) <= pressure_bound(m, b));
    }

    #[test]
    fn lambda_needs_positive_moments(state in state_strategy(), delta in delta_strategy()) {
        let g = gas(delta);
        if lambda_direct(&state, &g).is_ok() {
            let n = incoming_half_moments(&state, &g);
            prop_assert!(n.n1 > 0.0 && n.n2 > 0.0 && n.n5 > 0.0);
        }
    }

    #[test]
    fn reconstruction_and_theta(n1 in 0.01_f64..3.0, n2 in 0.01_f64..3.0, n5 in 0.01_f64..30.0, delta in 0.1_f64..8.0) {
        let m = Moments::new(n1, n2, n5);
        prop_assume!(m.upsilon() > 1.0 + 1e-9);
        let g = gas(delta);
        let sol = maxwellian_from_moments(&m, &g).unwrap();
        let back = sol.moments(delta);
        prop_assert!(((back.n1 - n1) / n1).abs() <= 1e-9);
        prop_assert!(((back.n2 - n2) / n2).abs() <= 1e-9);
        prop_assert!(((back.n5 - n5) / n5).abs() <= 1e-9);
        prop_assert_eq!(sol.theta, theta(sol.s));
    }

    #[test]
    fn shape_is_scale_invariant(n1 in 0.01_f64..3.0, n2 in 0.01_f64..3.0, n5 in 0.01_f64..30.0, k in 0.01_f64..100.0) {
        let m = Moments::new(n1, n2, n5);
        prop_assume!(m.upsilon() > 1.0 + 1e-9);
        let g = gas(2.0);
        let a = maxwellian_from_moments(&m, &g).unwrap();
        let b = maxwellian_from_moments(&m.scale(k), &g).unwrap();
        prop_assert!((a.s - b.s).abs() <= 1e-9 * (1.0 + a.s.abs()));
        prop_assert!((b.ln_a - a.ln_a - k.ln()).abs() <= 1e-9 * (1.0 + a.ln_a.abs()));
    }
}

#[test]
fn shape_function_decreases_and_exceeds_one() {
    for delta in [0.0, 2.0, 3.0, 5.0] {
        let g = gas(delta);
        let phis: Vec<f64> = (0..=3000).map(|i| shape_function(-30.0 + 0.02 * i as f64, &g).phi).collect();
        assert!(phis.iter().all(|p| *p > 1.0));
        assert!(phis.windows(2).all(|w| w[1] < w[0]), "delta {delta}");
        assert!(phis.last().unwrap() - 1.0 < 1e-2);
        assert!(phis[0] > 500.0);
    }
}

#[test]
fn single_precision_smoke() {
    let g = GasParams::<f32>::new(2.0).unwrap();
    let s = FarFieldState::<f32>::new(1.0, 1.0, 0.0).unwrap();
    let l = lambda_direct(&s, &g).unwrap();
    assert!(l.value.abs() < 1e-4);
    let u = shape_function(-3.0_f32, &g).phi;
    assert_relative_eq!(solve_shape_parameter(u, &g).unwrap(), -3.0, max_relative = 1e-4);
}

