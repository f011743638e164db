use crate::error::{domain, FddeError, Result};
use crate::history::{corrective_term_unchecked, HistoryFn};
use crate::order::{OperatorKind, Order};
use crate::quad::tanh_sinh;
use crate::specfun::{gamma_unchecked, reg_inc_beta};

use super::{ForcingFn, LinearProblem};

const CORRECTIVE_QUAD_TOL: f64 = 1e-13;

/// `m` with `m tau <= t < (m + 1) tau`, so `t = m tau` uses index `m`.
pub fn delay_index(t: f64, tau: f64) -> usize {
    let mut m = (t / tau).floor().max(0.0) as usize;
    while m > 0 && m as f64 * tau > t {
        m -= 1;
    }
    while (m + 1) as f64 * tau <= t {
        m += 1;
    }
    m
}

// x^p with the conventions 0^0 = 1 and (non-positive)^p = 0 for p > 0.
fn pos_pow(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else if x <= 0.0 {
        0.0
    } else {
        x.powf(p)
    }
}

/// Generalized step function `u_a^[beta](t) = (t - a)^beta / Gamma(beta + 1)`
/// for `t >= a`, zero before.
pub fn gen_step(a: f64, beta: f64, t: f64) -> f64 {
    if t < a {
        0.0
    } else {
        pos_pow(t - a, beta) / gamma_unchecked(beta + 1.0)
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        domain(format!("solution requested at t = {t}; expected t >= 0"))
    }
}

/// `sum_{k=0}^{floor(t/tau)} lambda^k J^(alpha k + alpha) f(t - k tau)`.
pub fn gen_integral(f: &ForcingFn, alpha: Order, lambda: f64, tau: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    if !(tau > 0.0) || !tau.is_finite() {
        return domain(format!("delay must be positive and finite, got {tau}"));
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let a = alpha.value();
    let mut acc = 0.0;
    let mut lk = 1.0;
    for k in 0..=delay_index(t, tau) {
        let s = t - k as f64 * tau;
        if s > 0.0 && lk != 0.0 {
            acc += lk * f.rl_integral(a * (k as f64 + 1.0), s)?;
        }
        lk *= lambda;
    }
    Ok(acc)
}

fn constant_y0(p: &LinearProblem) -> Result<f64> {
    match p.history() {
        HistoryFn::Constant { y0 } => Ok(*y0),
        other => Err(FddeError::Usage(format!(
            "closed form requires a constant history, got {other:?}"
        ))),
    }
}

fn ramp_y0(p: &LinearProblem) -> Result<f64> {
    match p.history() {
        HistoryFn::LinearRamp { y0, .. } => Ok(*y0),
        other => Err(FddeError::Usage(format!(
            "closed form requires a linear-ramp history, got {other:?}"
        ))),
    }
}

/// Caputo solution for `phi = y0`:
/// `y0 sum_{k=0}^{m+1} lambda^k (t + tau - k tau)^(alpha k) / Gamma(alpha k + 1) + J f(t)`.
pub fn exact_caputo_constant_history(p: &LinearProblem, t: f64) -> Result<f64> {
    let y0 = constant_y0(p)?;
    check_time(t)?;
    let (a, lambda, tau) = (p.alpha().value(), p.lambda(), p.tau());
    let mut acc = 0.0;
    let mut lk = 1.0;
    for k in 0..=delay_index(t, tau) + 1 {
        let e = a * k as f64;
        acc += lk * pos_pow(t - (k as f64 - 1.0) * tau, e) / gamma_unchecked(e + 1.0);
        lk *= lambda;
    }
    Ok(y0 * acc + gen_integral(p.forcing(), p.alpha(), lambda, tau, t)?)
}

/// The same solution written as a sum of generalized step functions,
/// `y0 sum lambda^k u_{(k-1) tau}^[k alpha](t) + sum lambda^k (u_{k tau}^[(k+1) alpha - 1] * f)(t)`.
pub fn exact_stepfunction_form(p: &LinearProblem, t: f64) -> Result<f64> {
    let y0 = constant_y0(p)?;
    check_time(t)?;
    let (a, lambda, tau) = (p.alpha().value(), p.lambda(), p.tau());

    let mut homogeneous = 0.0;
    let mut lk = 1.0;
    let mut k = 0usize;
    while (k as f64 - 1.0) * tau <= t {
        homogeneous += lk * gen_step((k as f64 - 1.0) * tau, k as f64 * a, t);
        lk *= lambda;
        k += 1;
    }

    // (u_{k tau}^[beta - 1] * f)(t) = J^beta f(t - k tau).
    let mut forced = 0.0;
    if !p.forcing().is_zero() {
        let mut lk = 1.0;
        let mut k = 0usize;
        while k as f64 * tau <= t {
            let s = t - k as f64 * tau;
            if s > 0.0 {
                forced += lk * p.forcing().rl_integral((k as f64 + 1.0) * a, s)?;
            }
            lk *= lambda;
            k += 1;
        }
    }
    Ok(y0 * homogeneous + forced)
}

/// Caputo solution for the ramp `phi(t) = (t / tau + 1) y0`.
pub fn exact_caputo_ramp_history(p: &LinearProblem, t: f64) -> Result<f64> {
    let y0 = ramp_y0(p)?;
    check_time(t)?;
    let (a, lambda, tau) = (p.alpha().value(), p.lambda(), p.tau());
    let m = delay_index(t, tau);
    let mut acc = 0.0;
    let mut lk = 1.0;
    for k in 0..=m + 1 {
        let e = a * k as f64 + 1.0;
        let g = gamma_unchecked(e + 1.0);
        acc += lk * pos_pow(t - (k as f64 - 1.0) * tau, e) / g;
        if k <= m {
            acc -= lk * pos_pow(t - k as f64 * tau, e) / g;
        }
        lk *= lambda;
    }
    Ok(y0 / tau * acc + gen_integral(p.forcing(), p.alpha(), lambda, tau, t)?)
}

/// Solution under the history-aware operator for the ramp history.
pub fn exact_phitau_ramp_history(p: &LinearProblem, t: f64) -> Result<f64> {
    let y0 = ramp_y0(p)?;
    check_time(t)?;
    let (a, lambda, tau) = (p.alpha().value(), p.lambda(), p.tau());
    let m = delay_index(t, tau);
    let e_last = a * (m as f64 + 1.0) + 1.0;
    let mut acc = lambda.powi(m as i32 + 1) * pos_pow(t - m as f64 * tau, e_last) / gamma_unchecked(e_last + 1.0);
    let mut lk = 1.0;
    for k in 0..=m {
        let e = a * k as f64 + 1.0;
        let base = t - (k as f64 - 1.0) * tau;
        let ib = reg_inc_beta(tau / base, 2.0 - a, a * (k as f64 + 1.0))?;
        acc += lk * base.powf(e) / gamma_unchecked(e + 1.0) * ib;
        lk *= lambda;
    }
    Ok(y0 / tau * acc + gen_integral(p.forcing(), p.alpha(), lambda, tau, t)?)
}

/// Difference between the history-aware and the Caputo ramp solutions; it
/// does not depend on the forcing.
pub fn solution_difference(p: &LinearProblem, t: f64) -> Result<f64> {
    let y0 = ramp_y0(p)?;
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("solution difference requires t > 0, got {t}"));
    }
    let (a, lambda, tau) = (p.alpha().value(), p.lambda(), p.tau());
    let mut acc = 0.0;
    let mut lk = 1.0;
    for k in 0..=delay_index(t, tau) {
        let e = a * k as f64 + 1.0;
        let g = gamma_unchecked(e + 1.0);
        let near = t - k as f64 * tau;
        let far = near + tau;
        // 1 - I_{tau/far}(2 - alpha, (k+1) alpha) = I_{near/far}((k+1) alpha, 2 - alpha).
        let tail = reg_inc_beta(near / far, a * (k as f64 + 1.0), 2.0 - a)?;
        acc += lk * (pos_pow(near, e) - far.powf(e) * tail) / g;
        lk *= lambda;
    }
    Ok(y0 / tau * acc)
}

/// Generalized integral of the corrective term, i.e. the response of the
/// linear equation with zero history to the corrective source. For the ramp
/// this reproduces [`solution_difference`]; it is computed by quadrature and
/// works for any history.
pub fn corrective_response(p: &LinearProblem, t: f64) -> Result<f64> {
    check_time(t)?;
    let (a, lambda, tau) = (p.alpha().value(), p.lambda(), p.tau());
    let phi = p.history();
    if matches!(phi, HistoryFn::Constant { .. }) {
        return Ok(0.0);
    }
    let mut acc = 0.0;
    let mut lk = 1.0;
    for k in 0..=delay_index(t, tau) {
        let s = t - k as f64 * tau;
        if s > 0.0 && lk != 0.0 {
            let beta = a * (k as f64 + 1.0);
            let q = tanh_sinh(
                |_, left, right| right.powf(beta - 1.0) * corrective_term_unchecked(phi, a, tau, left),
                0.0,
                s,
                CORRECTIVE_QUAD_TOL,
            );
            acc += lk * q.value / gamma_unchecked(beta);
        }
        lk *= lambda;
    }
    Ok(acc)
}

/// Closed-form solution under the chosen operator. For `t` in `[-tau, 0)`
/// the history is returned. With a constant history both operators share the
/// Caputo solution.
pub fn exact_solution(p: &LinearProblem, operator: OperatorKind, t: f64) -> Result<f64> {
    if t < 0.0 {
        return p.history().eval(t, p.tau());
    }
    match (p.history(), operator) {
        (HistoryFn::Constant { .. }, _) => exact_caputo_constant_history(p, t),
        (HistoryFn::LinearRamp { .. }, OperatorKind::Caputo) => exact_caputo_ramp_history(p, t),
        (HistoryFn::LinearRamp { .. }, OperatorKind::PhiTau) => exact_phitau_ramp_history(p, t),
        (HistoryFn::Sampled { .. }, _) => Err(FddeError::Usage(
            "no closed form for sampled histories; use a numerical solver".into(),
        )),
    }
}
