use crate::error::{FddeError, Result};
use crate::history::corrective_term_unchecked;
use crate::operators::floor_steps;
use crate::specfun::{gamma_unchecked, gl_weights};

use super::trajectory::lookup;
use super::{NonlinearProblem, Scheme, SolverConfig, SolverMode, Trajectory};

fn failure(step: usize, h: f64, reason: impl Into<String>) -> FddeError {
    FddeError::Solver {
        step,
        t: step as f64 * h,
        reason: reason.into(),
    }
}

fn finite(step: usize, h: f64, what: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(failure(step, h, format!("{what} is not finite ({v})")))
    }
}

// g(t_j, y_j, y(t_j - tau)) from the nodes computed so far.
fn rhs_at(p: &NonlinearProblem, ys: &[f64], pending: Option<f64>, h: f64, j: usize) -> Result<f64> {
    let t = j as f64 * h;
    let y = if j < ys.len() {
        ys[j]
    } else {
        pending.expect("pending value for the new node")
    };
    let yd = lookup(ys, pending, p.history(), p.tau(), h, t - p.tau()).map_err(|e| failure(j, h, e.to_string()))?;
    finite(j, h, "right-hand side", p.rhs(t, y, yd))
}

/// Runs the scheme selected in `cfg`.
pub fn solve(p: &NonlinearProblem, cfg: &SolverConfig) -> Result<Trajectory> {
    match cfg.scheme() {
        Scheme::PiRect => solve_pi_rect(p, cfg),
        Scheme::GlPhiTau => solve_gl_phitau(p, cfg),
    }
}

/// Rectangular product integration,
/// `y_n = y0 + h^alpha sum_{j<n} b_{n-j} g_j` with
/// `b_m = (m^alpha - (m-1)^alpha) / Gamma(alpha + 1)`.
pub fn solve_pi_rect(p: &NonlinearProblem, cfg: &SolverConfig) -> Result<Trajectory> {
    solve_pi_rect_with_source(p, cfg, |_| 0.0)
}

/// Product integration of `D^alpha y = g(t, y, y_d) + source(t)`.
pub fn solve_pi_rect_with_source(
    p: &NonlinearProblem,
    cfg: &SolverConfig,
    source: impl Fn(f64) -> f64,
) -> Result<Trajectory> {
    let (h, n_steps) = (cfg.h(), cfg.steps());
    let a = p.alpha().value();
    let y0 = p.history().y0();
    let scale = h.powf(a) / gamma_unchecked(a + 1.0);
    let b: Vec<f64> = (0..=n_steps)
        .map(|m| {
            if m == 0 {
                0.0
            } else {
                (m as f64).powf(a) - (m as f64 - 1.0).powf(a)
            }
        })
        .collect();

    let mut ys = Vec::with_capacity(n_steps + 1);
    let mut gs = Vec::with_capacity(n_steps);
    ys.push(y0);
    for n in 1..=n_steps {
        let j = n - 1;
        let g = rhs_at(p, &ys, None, h, j)?;
        gs.push(finite(j, h, "source term", g + source(j as f64 * h))?);
        let acc: f64 = gs.iter().enumerate().map(|(j, g)| b[n - j] * g).sum();
        ys.push(finite(n, h, "solution", y0 + scale * acc)?);
    }
    Ok(Trajectory::new(h, cfg.t_end(), p.tau(), ys, p.history().clone()))
}

/// The history-aware problem rewritten as a Caputo problem with the corrective
/// term added to the right-hand side, solved by product integration.
pub fn solve_phitau_via_corrective(p: &NonlinearProblem, cfg: &SolverConfig) -> Result<Trajectory> {
    let (phi, a, tau) = (p.history().clone(), p.alpha().value(), p.tau());
    solve_pi_rect_with_source(p, cfg, move |t| corrective_term_unchecked(&phi, a, tau, t))
}

/// Truncated GL scheme for the history-aware operator,
/// `y_n = phi(-tau) - sum_{j=1}^{n} w_j (y_{n-j} - phi(-tau))
///        - sum_{j=n+1}^{J2} w_j (phi(t_n - jh) - phi(-tau)) + h^alpha g`.
pub fn solve_gl_phitau(p: &NonlinearProblem, cfg: &SolverConfig) -> Result<Trajectory> {
    let (h, n_steps, tau) = (cfg.h(), cfg.steps(), p.tau());
    let phi = p.history();
    let a = p.alpha().value();
    let ha = h.powf(a);
    let left = phi.left_value();
    let j2_max = floor_steps(n_steps as f64 * h + tau, h).max(n_steps);
    let w = gl_weights(a, j2_max)?;

    let mut ys = Vec::with_capacity(n_steps + 1);
    ys.push(phi.y0());
    for n in 1..=n_steps {
        let tn = n as f64 * h;
        let j2 = floor_steps(tn + tau, h).max(n);
        let memory: f64 = (1..=n).map(|j| w[j] * (ys[n - j] - left)).sum();
        let past: f64 = (n + 1..=j2)
            .map(|j| {
                let s = ((n as f64 - j as f64) * h).clamp(-tau, 0.0);
                w[j] * (phi.eval_clamped(s) - left)
            })
            .sum();
        let base = left - memory - past;

        let y = match cfg.mode() {
            SolverMode::Explicit => base + ha * rhs_at(p, &ys, None, h, n - 1)?,
            SolverMode::FixedPoint { max_iter, tol } => fixed_point(p, &ys, base, ha, h, n, max_iter, tol)?,
        };
        ys.push(finite(n, h, "solution", y)?);
    }
    Ok(Trajectory::new(h, cfg.t_end(), tau, ys, phi.clone()))
}

// Damped Picard iteration for y = base + h^alpha g(t_n, y, y(t_n - tau)).
#[allow(clippy::too_many_arguments)]
fn fixed_point(
    p: &NonlinearProblem,
    ys: &[f64],
    base: f64,
    ha: f64,
    h: f64,
    n: usize,
    max_iter: usize,
    tol: f64,
) -> Result<f64> {
    let map = |y: f64| -> Result<f64> { Ok(base + ha * rhs_at(p, ys, Some(y), h, n)?) };
    let mut y = base + ha * rhs_at(p, ys, None, h, n - 1)?;
    let mut relax = 1.0;
    let mut prev_res = f64::INFINITY;
    let mut res = f64::INFINITY;
    for _ in 0..max_iter {
        let fy = map(y)?;
        res = fy - y;
        if res.abs() <= tol * y.abs().max(1.0) {
            return Ok(fy);
        }
        if res.abs() > prev_res {
            relax *= 0.5;
        }
        prev_res = res.abs();
        y += relax * res;
    }
    Err(failure(
        n,
        h,
        format!(
            "fixed-point iteration did not converge in {max_iter} iterations (residual {:e})",
            res.abs()
        ),
    ))
}

/// Explicit Euler for the classical delay equation `y' = g(t, y, y(t - tau))`;
/// the order stored in `p` is ignored.
pub fn solve_dde_euler_ref(p: &NonlinearProblem, h: f64, t_end: f64) -> Result<Trajectory> {
    let cfg = SolverConfig::new(Scheme::PiRect, h, t_end)?;
    let n_steps = cfg.steps();
    let mut ys = Vec::with_capacity(n_steps + 1);
    ys.push(p.history().y0());
    for n in 1..=n_steps {
        let g = rhs_at(p, &ys, None, h, n - 1)?;
        let y = ys[n - 1] + h * g;
        ys.push(finite(n, h, "solution", y)?);
    }
    Ok(Trajectory::new(h, t_end, p.tau(), ys, p.history().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::history::HistoryFn;
    use crate::order::Order;

    fn order(a: f64) -> Order {
        Order::new(a).unwrap()
    }

    fn cfg(scheme: Scheme, h: f64, t: f64) -> SolverConfig {
        SolverConfig::new(scheme, h, t).unwrap()
    }

    #[test]
    fn zero_rhs_keeps_initial_value() {
        let p = NonlinearProblem::new(order(0.7), 1.0, HistoryFn::constant(2.0).unwrap(), |_, _, _| 0.0).unwrap();
        for scheme in [Scheme::PiRect, Scheme::GlPhiTau] {
            let tr = solve(&p, &cfg(scheme, 0.05, 3.0)).unwrap();
            assert!(tr.values().iter().all(|&v| (v - 2.0).abs() < 1e-14));
        }
        let tr = solve_dde_euler_ref(&p, 0.05, 3.0).unwrap();
        assert!(tr.values().iter().all(|&v| v == 2.0));
    }

    #[test]
    fn euler_exponential_decay() {
        let p = NonlinearProblem::new(order(0.5), 1.0, HistoryFn::constant(1.0).unwrap(), |_, y, _| -y).unwrap();
        let tr = solve_dde_euler_ref(&p, 1e-3, 2.0).unwrap();
        let last = *tr.values().last().unwrap();
        assert!((last - (-2f64).exp()).abs() < 1e-3);
    }

    #[test]
    fn non_finite_rhs_reports_step() {
        let p = NonlinearProblem::new(order(0.5), 1.0, HistoryFn::constant(1.0).unwrap(), |t, _, _| {
            if t > 0.35 {
                f64::NAN
            } else {
                1.0
            }
        })
        .unwrap();
        match solve_pi_rect(&p, &cfg(Scheme::PiRect, 0.1, 1.0)) {
            Err(FddeError::Solver { step, .. }) => assert_eq!(step, 4),
            other => panic!("expected a solver failure, got {other:?}"),
        }
    }

    #[test]
    fn fixed_point_non_convergence() {
        // Strongly stiff map: the damped iteration cannot settle in two steps.
        let p = NonlinearProblem::new(order(0.5), 1.0, HistoryFn::constant(1.0).unwrap(), |_, y, _| -1e6 * y).unwrap();
        let mode = SolverMode::FixedPoint {
            max_iter: 2,
            tol: 1e-12,
        };
        let c = SolverConfig::with_mode(Scheme::GlPhiTau, mode, 0.1, 1.0).unwrap();
        assert!(matches!(
            solve_gl_phitau(&p, &c),
            Err(FddeError::Solver { step: 1, .. })
        ));
    }

    #[test]
    fn fixed_point_modes_close() {
        let p = NonlinearProblem::new(order(0.8), 1.0, HistoryFn::ramp(1.0, 1.0).unwrap(), |_, y, yd| {
            -2.0 * y * (1.2 - yd)
        })
        .unwrap();
        let e = solve_gl_phitau(&p, &cfg(Scheme::GlPhiTau, 1.0 / 128.0, 4.0)).unwrap();
        let c = SolverConfig::with_mode(Scheme::GlPhiTau, SolverMode::DEFAULT_FIXED_POINT, 1.0 / 128.0, 4.0).unwrap();
        let f = solve_gl_phitau(&p, &c).unwrap();
        let gap = e
            .values()
            .iter()
            .zip(f.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(gap < 0.05, "gap {gap}");
    }

    #[test]
    fn small_delay_below_step() {
        let p = NonlinearProblem::new(order(0.6), 0.01, HistoryFn::constant(1.0).unwrap(), |_, _, yd| -yd).unwrap();
        for scheme in [Scheme::PiRect, Scheme::GlPhiTau] {
            assert!(solve(&p, &cfg(scheme, 0.1, 2.0)).is_ok());
        }
        let c = SolverConfig::with_mode(Scheme::GlPhiTau, SolverMode::DEFAULT_FIXED_POINT, 0.1, 2.0).unwrap();
        assert!(solve(&p, &c).is_ok());
    }

    #[test]
    fn deterministic() {
        let p = NonlinearProblem::new(order(0.8), 1.0, HistoryFn::ramp(1.0, 1.0).unwrap(), |_, y, yd| {
            -2.0 * y * (1.2 - yd)
        })
        .unwrap();
        for scheme in [Scheme::PiRect, Scheme::GlPhiTau] {
            let a = solve(&p, &cfg(scheme, 1.0 / 64.0, 5.0)).unwrap();
            let b = solve(&p, &cfg(scheme, 1.0 / 64.0, 5.0)).unwrap();
            assert!(a
                .values()
                .iter()
                .zip(b.values())
                .all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    }
}
