//! Truncated Grünwald-Letnikov realizations of the Caputo operator and of the
//! history-aware operator on an equispaced grid.

use crate::error::{domain, Result};
use crate::history::HistoryFn;
use crate::order::Order;
use crate::specfun::{gl_weights, GlWeights};

/// Samples `values[i] = y(origin + i h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    h: f64,
    origin: f64,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(h: f64, origin: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return domain(format!("sample step must be positive, got {h}"));
        }
        if !origin.is_finite() {
            return domain("sample origin must be finite");
        }
        if values.is_empty() {
            return domain("sampled function needs at least one value");
        }
        Ok(SampledFunction { h, origin, values })
    }

    /// Samples `f` at `origin + i h` for `i = 0..=n`.
    pub fn from_fn(h: f64, origin: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..=n).map(|i| f(origin + i as f64 * h)).collect();
        SampledFunction::new(h, origin, values)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn time(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.h
    }
}

/// Largest `j` with `j h <= x`, robust to the rounding of `x / h`.
pub(crate) fn floor_steps(x: f64, h: f64) -> usize {
    let mut j = (x / h).floor().max(0.0) as usize;
    while j > 0 && j as f64 * h > x {
        j -= 1;
    }
    while (j + 1) as f64 * h <= x {
        j += 1;
    }
    j
}

fn check_node(y: &SampledFunction, n: usize) -> Result<()> {
    if y.origin != 0.0 {
        return domain(format!(
            "operators expect samples starting at t = 0, got origin {}",
            y.origin
        ));
    }
    if n >= y.values.len() {
        return domain(format!(
            "node {n} requested but only {} samples are available",
            y.values.len()
        ));
    }
    Ok(())
}

/// `h^-alpha sum_{j=0}^{n} omega_j (y(t_n - j h) - y(0))`, the truncated GL
/// approximation of the Caputo derivative at `t_n = n h`.
pub fn gl_caputo_apply(y: &SampledFunction, alpha: Order, n: usize) -> Result<f64> {
    check_node(y, n)?;
    let w = gl_weights(alpha.value(), n)?;
    Ok(gl_caputo_with(&w, y.values(), y.h, n))
}

pub(crate) fn gl_caputo_with(w: &GlWeights, ys: &[f64], h: f64, n: usize) -> f64 {
    let y0 = ys[0];
    let acc: f64 = (0..=n).map(|j| w[j] * (ys[n - j] - y0)).sum();
    acc * h.powf(-w.alpha())
}

/// History-aware operator at `t_n = n h`:
/// `h^-alpha [sum_{j=0}^{n} omega_j (y(t_n - jh) - phi(-tau))
///          + sum_{j=n+1}^{J2} omega_j (phi(t_n - jh) - phi(-tau))]`
/// with `J2 = floor((t_n + tau) / h)`. The history is evaluated at the exact
/// off-grid points.
pub fn phitau_apply(y: &SampledFunction, phi: &HistoryFn, alpha: Order, tau: f64, n: usize) -> Result<f64> {
    check_node(y, n)?;
    phi.check_delay(tau)?;
    let tn = y.time(n);
    let j2 = floor_steps(tn + tau, y.h).max(n);
    let w = gl_weights(alpha.value(), j2)?;
    Ok(phitau_with(&w, y.values(), phi, tau, y.h, n))
}

pub(crate) fn phitau_with(w: &GlWeights, ys: &[f64], phi: &HistoryFn, tau: f64, h: f64, n: usize) -> f64 {
    let tn = n as f64 * h;
    let j2 = floor_steps(tn + tau, h).max(n);
    let left = phi.left_value();
    let inside: f64 = (0..=n).map(|j| w[j] * (ys[n - j] - left)).sum();
    let past: f64 = (n + 1..=j2)
        .map(|j| {
            let s = ((n as f64 - j as f64) * h).clamp(-tau, 0.0);
            w[j] * (phi.eval_clamped(s) - left)
        })
        .sum();
    (inside + past) * h.powf(-w.alpha())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    fn order(a: f64) -> Order {
        Order::new(a).unwrap()
    }

    #[test]
    fn constant_has_zero_derivative() {
        let y = SampledFunction::new(0.1, 0.0, vec![3.0; 50]).unwrap();
        for n in 0..50 {
            assert_eq!(gl_caputo_apply(&y, order(0.4), n).unwrap(), 0.0);
        }
    }

    #[test]
    fn derivative_of_identity() {
        let a = 0.5;
        let t: f64 = 1.0;
        let expected = t.powf(1.0 - a) / gamma(2.0 - a).unwrap();
        let mut prev = f64::INFINITY;
        for k in 5..10 {
            let h = 0.5f64.powi(k);
            let n = (t / h) as usize;
            let y = SampledFunction::from_fn(h, 0.0, n, |t| t).unwrap();
            let err = (gl_caputo_apply(&y, order(a), n).unwrap() - expected).abs();
            assert!(err < prev);
            assert!(err < 2.0 * h);
            prev = err;
        }
    }

    #[test]
    fn constant_history_coincides() {
        let phi = HistoryFn::constant(0.7).unwrap();
        let y = SampledFunction::from_fn(0.05, 0.0, 80, |t| 0.7 + t.sin()).unwrap();
        for n in 0..=80 {
            let a = gl_caputo_apply(&y, order(0.6), n).unwrap();
            let b = phitau_apply(&y, &phi, order(0.6), 1.3, n).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn bounds_checked() {
        let y = SampledFunction::new(0.1, 0.0, vec![1.0; 4]).unwrap();
        assert!(gl_caputo_apply(&y, order(0.5), 4).is_err());
        let shifted = SampledFunction::new(0.1, 1.0, vec![1.0; 4]).unwrap();
        assert!(gl_caputo_apply(&shifted, order(0.5), 1).is_err());
        assert!(SampledFunction::new(0.0, 0.0, vec![1.0]).is_err());
        assert!(SampledFunction::new(0.1, 0.0, vec![]).is_err());
    }

    #[test]
    fn floor_steps_ties() {
        assert_eq!(floor_steps(1.0, 0.1), 10);
        assert_eq!(floor_steps(0.3, 0.1), 2);
        assert_eq!(floor_steps(0.0, 0.1), 0);
        for n in 0..500 {
            let h = 1.0 / 7.0;
            assert_eq!(floor_steps(n as f64 * h, h), n);
        }
    }
}
