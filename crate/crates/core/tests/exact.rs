use fdde::exact::{
    corrective_response, exact_caputo_constant_history, exact_caputo_ramp_history, exact_phitau_ramp_history,
    exact_solution, exact_stepfunction_form, gen_integral, solution_difference,
};
use fdde::history::corrective_term;
use fdde::{ForcingFn, HistoryFn, LinearProblem, OperatorKind, Order};
use fdde_testkit::{self as oracle, steps::method_of_steps, History};
use proptest::prelude::*;

fn order(a: f64) -> Order {
    Order::new(a).unwrap()
}

fn constant(alpha: f64, lambda: f64, tau: f64, y0: f64, f: ForcingFn) -> LinearProblem {
    LinearProblem::new(order(alpha), lambda, tau, HistoryFn::constant(y0).unwrap(), f).unwrap()
}

fn ramp(alpha: f64, lambda: f64, tau: f64, y0: f64, f: ForcingFn) -> LinearProblem {
    LinearProblem::new(order(alpha), lambda, tau, HistoryFn::ramp(y0, tau).unwrap(), f).unwrap()
}

fn reference_ramp(f: ForcingFn) -> LinearProblem {
    ramp(0.8, -1.0, 1.0, 1.0, f)
}

#[test]
fn constant_history_against_method_of_steps() {
    for &(a, l, tau, y0, c) in &[
        (0.8, -1.0, 1.0, 1.0, 0.0),
        (0.35, 0.7, 0.6, -2.0, 0.0),
        (0.6, -1.8, 1.4, 0.5, 1.3),
    ] {
        let p = constant(a, l, tau, y0, ForcingFn::Constant(c));
        let reference = method_of_steps(a, l, tau, y0, History::Constant, c, 6.0 * tau);
        for i in 0..=120 {
            let t = 0.05 * tau * i as f64;
            let v = exact_caputo_constant_history(&p, t).unwrap();
            let r = reference.eval(t);
            assert!(
                (v - r).abs() < 1e-11 * r.abs().max(1.0),
                "alpha {a}, t = {t}: {v} vs {r}"
            );
        }
    }
    // value at t = 1.5 for the figure parameters
    let p = constant(0.8, -1.0, 1.0, 1.0, ForcingFn::Zero);
    let r = method_of_steps(0.8, -1.0, 1.0, 1.0, History::Constant, 0.0, 2.0).eval(1.5);
    assert!((exact_caputo_constant_history(&p, 1.5).unwrap() - r).abs() < 1e-13);
}

#[test]
fn ramp_history_against_method_of_steps() {
    for &(a, l, tau, y0, c) in &[
        (0.8, -1.0, 1.0, 1.0, 0.0),
        (0.45, 1.2, 0.7, 3.0, 0.0),
        (0.9, -0.5, 2.0, 1.0, -0.4),
    ] {
        let p = ramp(a, l, tau, y0, ForcingFn::Constant(c));
        let reference = method_of_steps(a, l, tau, y0, History::Ramp, c, 6.0 * tau);
        for i in 0..=120 {
            let t = 0.05 * tau * i as f64;
            let v = exact_caputo_ramp_history(&p, t).unwrap();
            let r = reference.eval(t);
            assert!(
                (v - r).abs() < 1e-11 * r.abs().max(1.0),
                "alpha {a}, t = {t}: {v} vs {r}"
            );
        }
    }
    let p = reference_ramp(ForcingFn::Zero);
    let r = method_of_steps(0.8, -1.0, 1.0, 1.0, History::Ramp, 0.0, 3.0).eval(2.3);
    assert!((exact_caputo_ramp_history(&p, 2.3).unwrap() - r).abs() < 1e-13);
}

#[test]
fn generalized_integral_of_cosine_against_quadrature() {
    let f = ForcingFn::Cosine {
        amplitude: 0.5,
        omega: 3.0,
    };
    let (a, l, tau) = (0.8, -1.0, 1.0);
    for &t in &[0.5, 1.0, 2.7, 6.3, 10.0] {
        let v = gen_integral(&f, order(a), l, tau, t).unwrap();
        let mut r = 0.0;
        let mut k = 0;
        while k as f64 * tau <= t {
            let beta = a * (k + 1) as f64;
            r += l.powi(k) * oracle::rl_integral(|s| 0.5 * (3.0 * s).cos(), beta, t - k as f64 * tau);
            k += 1;
        }
        assert!((v - r).abs() < 1e-10, "t = {t}: {v} vs {r}");
    }
}

#[test]
fn generalized_integral_special_cases() {
    let p = order(0.8);
    assert_eq!(gen_integral(&ForcingFn::Zero, p, -1.0, 1.0, 3.0).unwrap(), 0.0);
    let t: f64 = 0.7;
    let v = gen_integral(&ForcingFn::Constant(1.0), p, -1.0, 1.0, t).unwrap();
    assert!((v - t.powf(0.8) / oracle::gamma(1.8)).abs() < 1e-15);
    assert!(gen_integral(&ForcingFn::Zero, p, -1.0, 1.0, -0.1).is_err());
}

#[test]
fn custom_and_sampled_forcing_agree_with_closed_forms() {
    let sine = ForcingFn::Sine {
        amplitude: 1.0,
        omega: 1.0,
    };
    let custom = ForcingFn::custom(f64::sin);
    let nodes: Vec<(f64, f64)> = (0..=4000)
        .map(|i| (i as f64 * 0.0025, (i as f64 * 0.0025).sin()))
        .collect();
    let sampled = ForcingFn::sampled(nodes).unwrap();
    for &t in &[0.4, 2.2, 5.0, 9.0] {
        let a = gen_integral(&sine, order(0.8), -1.0, 1.0, t).unwrap();
        let b = gen_integral(&custom, order(0.8), -1.0, 1.0, t).unwrap();
        let c = gen_integral(&sampled, order(0.8), -1.0, 1.0, t).unwrap();
        assert!((a - b).abs() < 1e-10);
        assert!((a - c).abs() < 1e-5, "piecewise-linear forcing, t = {t}: {a} vs {c}");
    }
}

#[test]
fn corrective_term_against_brute_force_caputo() {
    let (a, tau, y0) = (0.8, 1.0, 1.0);
    let phi = HistoryFn::ramp(y0, tau).unwrap();
    let slope = |_r: f64| y0 / tau;
    for &t in &[0.01, 0.5, 1.0, 3.0, 10.0] {
        let from_zero = oracle::caputo_by_quadrature(slope, a, 0.0, t);
        let from_minus_tau = oracle::caputo_by_quadrature(slope, a, -tau, t);
        let v = corrective_term(&phi, order(a), tau, t).unwrap();
        assert!((v - (from_zero - from_minus_tau)).abs() < 1e-12, "t = {t}");
    }
    let v = corrective_term(&phi, order(a), tau, 1.0).unwrap();
    assert!((v - (1.0 - 2f64.powf(0.2)) / oracle::gamma(1.2)).abs() < 1e-15);
}

#[test]
fn corrective_integral_bound_identity() {
    let phi = HistoryFn::ramp(-1.5, 0.8).unwrap();
    for &(a, t) in &[(0.8, 0.3), (0.8, 4.0), (0.4, 1.2), (0.95, 9.0)] {
        let tau = 0.8;
        let y0: f64 = -1.5;
        let lhs = oracle::gamma(a)
            * oracle::rl_integral(
                |r| corrective_term(&phi, order(a), tau, r.max(1e-300)).unwrap().abs(),
                a,
                t,
            );
        let ib = fdde::specfun::reg_inc_beta(tau / (t + tau), 2.0 - a, a).unwrap();
        let rhs = y0.abs() * oracle::gamma(a) * (1.0 - (t + tau) / tau * ib);
        assert!((lhs - rhs).abs() < 1e-8, "alpha {a}, t {t}: {lhs} vs {rhs}");
    }
}

#[test]
fn difference_equals_generalized_integral_of_corrective() {
    let p = reference_ramp(ForcingFn::Zero);
    let phi = p.history().clone();
    for &t in &[0.2, 1.0, 2.5, 4.9] {
        let d = solution_difference(&p, t).unwrap();
        // oracle: sum_k lambda^k J^(alpha(k+1)) corrective (t - k tau), by Gauss-Kronrod
        let mut r = 0.0;
        let mut k = 0;
        while (k as f64) <= t {
            let beta = 0.8 * (k + 1) as f64;
            let s = t - k as f64;
            r += (-1f64).powi(k)
                * oracle::rl_integral(
                    |x| corrective_term(&phi, order(0.8), 1.0, x.max(1e-300)).unwrap(),
                    beta,
                    s,
                );
            k += 1;
        }
        assert!((d - r).abs() < 1e-9, "t = {t}: {d} vs {r}");
        assert!((corrective_response(&p, t).unwrap() - r).abs() < 1e-9);
    }
}

#[test]
fn phitau_solution_examples() {
    let p = reference_ramp(ForcingFn::Zero);
    assert!((exact_phitau_ramp_history(&p, 0.0).unwrap() - 1.0).abs() < 1e-15);
    let t = 0.5;
    let lhs = exact_phitau_ramp_history(&p, t).unwrap();
    let rhs = exact_caputo_ramp_history(&p, t).unwrap() + solution_difference(&p, t).unwrap();
    assert!((lhs - rhs).abs() < 1e-10);
}

#[test]
fn solutions_below_caputo_then_merge() {
    // yhat starts below y and the gap dies out
    let p = reference_ramp(ForcingFn::Zero);
    for i in 1..=100 {
        let t = 0.1 * i as f64;
        assert!(solution_difference(&p, t).unwrap() < 0.0);
    }
    let early = solution_difference(&p, 1.0).unwrap().abs();
    let late = solution_difference(&p, 10.0).unwrap().abs();
    assert!(late < 0.2 * early);
}

#[test]
fn oscillations_decay_at_reference_parameters() {
    // The f = 0 solutions change sign, so "positive and decreasing" does not
    // hold; what holds is that the oscillation envelope shrinks.
    let c = constant(0.8, -1.0, 1.0, 1.0, ForcingFn::Zero);
    let r = reference_ramp(ForcingFn::Zero);
    for (p, op) in [
        (&c, OperatorKind::Caputo),
        (&r, OperatorKind::Caputo),
        (&r, OperatorKind::PhiTau),
    ] {
        let window_max = |a: f64| {
            (0..=400)
                .map(|i| exact_solution(p, op, a + 0.005 * i as f64).unwrap().abs())
                .fold(0.0, f64::max)
        };
        let maxima: Vec<f64> = [2.0, 4.0, 6.0, 8.0].iter().map(|&a| window_max(a)).collect();
        assert!(maxima.windows(2).all(|w| w[1] < w[0]), "{op:?}: {maxima:?}");
        assert!(maxima[3] < 0.1);
    }
    let min_c = (0..=1000)
        .map(|i| exact_caputo_constant_history(&c, 0.01 * i as f64).unwrap())
        .fold(f64::INFINITY, f64::min);
    assert!(min_c < 0.0, "the constant-history solution dips below zero");
}

#[test]
fn constant_history_operators_coincide_through_difference() {
    let p = constant(
        0.8,
        -1.0,
        1.0,
        1.0,
        ForcingFn::Sine {
            amplitude: 1.0,
            omega: 1.0,
        },
    );
    for &t in &[0.0, 0.7, 3.2] {
        assert_eq!(corrective_response(&p, t).unwrap(), 0.0);
        assert_eq!(
            exact_solution(&p, OperatorKind::PhiTau, t).unwrap(),
            exact_solution(&p, OperatorKind::Caputo, t).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn first_interval_closed_form(a in 0.05f64..0.95, l in -3.0f64..3.0, tau in 0.1f64..5.0, y0 in -5.0f64..5.0, frac in 0.0f64..1.0) {
        let p = constant(a, l, tau, y0, ForcingFn::Zero);
        let t = frac * tau;
        let expected = y0 * (1.0 + l * t.powf(a) / oracle::gamma(a + 1.0));
        let v = exact_caputo_constant_history(&p, t).unwrap();
        prop_assert!((v - expected).abs() <= 1e-12 * expected.abs().max(1.0));
    }

    #[test]
    fn ramp_first_interval(a in 0.05f64..0.95, l in -3.0f64..3.0, tau in 0.1f64..5.0, y0 in -5.0f64..5.0, frac in 0.0f64..1.0) {
        let p = ramp(a, l, tau, y0, ForcingFn::Zero);
        let t = frac * tau;
        let expected = y0 * (1.0 + l * t.powf(a + 1.0) / (tau * oracle::gamma(a + 2.0)));
        let v = exact_caputo_ramp_history(&p, t).unwrap();
        prop_assert!((v - expected).abs() <= 1e-12 * expected.abs().max(1.0));
    }

    #[test]
    fn step_function_form_matches(a in 0.05f64..0.95, l in -2.0f64..2.0, tau in 0.2f64..3.0, y0 in -3.0f64..3.0, frac in 0.0f64..5.0, c in -2.0f64..2.0) {
        let t = frac * tau;
        let p = constant(a, l, tau, y0, ForcingFn::Constant(c));
        let u = exact_stepfunction_form(&p, t).unwrap();
        let v = exact_caputo_constant_history(&p, t).unwrap();
        prop_assert!((u - v).abs() <= 1e-12 * v.abs().max(1.0));
    }

    #[test]
    fn continuity_at_junctions(a in 0.1f64..0.95, l in -2.0f64..2.0, tau in 0.2f64..3.0, m in 1usize..6) {
        let t = m as f64 * tau;
        let eps = 1e-13 * tau;
        // The term switched on at t = m tau behaves like eps^(alpha (m+1)) on
        // the right, so that side is checked against its Hoelder bound.
        let e = a * (m + 1) as f64;
        let activated = l.abs().powi(m as i32 + 1) * eps.powf(e) / oracle::gamma(e + 1.0);
        for p in [constant(a, l, tau, 1.0, ForcingFn::Zero), ramp(a, l, tau, 1.0, ForcingFn::Zero)] {
            let f = |t| exact_solution(&p, OperatorKind::Caputo, t).unwrap();
            let scale = f(t).abs().max(1.0);
            prop_assert!((f(t - eps) - f(t)).abs() < 1e-10 * scale);
            prop_assert!((f(t + eps) - f(t)).abs() <= 1e-10 * scale + 1.01 * activated);
        }
    }

    #[test]
    fn difference_identity(a in 0.1f64..0.95, l in -2.0f64..2.0, tau in 0.2f64..3.0, y0 in -3.0f64..3.0, frac in 0.001f64..5.0) {
        let p = ramp(a, l, tau, y0, ForcingFn::Zero);
        let t = frac * tau;
        let lhs = exact_phitau_ramp_history(&p, t).unwrap() - exact_caputo_ramp_history(&p, t).unwrap();
        let rhs = solution_difference(&p, t).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
    }

    #[test]
    fn difference_is_forcing_independent(t in 0.01f64..8.0, amp in -2.0f64..2.0, w in 0.1f64..3.0) {
        let p = reference_ramp(ForcingFn::Zero);
        let q = reference_ramp(ForcingFn::Cosine { amplitude: amp, omega: w });
        let d = solution_difference(&p, t).unwrap();
        let dq = exact_phitau_ramp_history(&q, t).unwrap() - exact_caputo_ramp_history(&q, t).unwrap();
        prop_assert!((d - dq).abs() < 1e-10);
    }
}
