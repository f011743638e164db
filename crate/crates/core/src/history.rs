//! Initial functions on `[-tau, 0]` and the corrective term separating the
//! history-aware operator from the Caputo derivative.

use std::path::Path;

use crate::error::{domain, FddeError, Result};
use crate::order::Order;
use crate::specfun::gamma_unchecked;

/// Relative tolerance when matching sampled endpoints against `-tau` and `0`.
const ENDPOINT_TOL: f64 = 1e-12;

/// Initial function `phi` on `[-tau, 0]`.
#[derive(Debug, Clone, PartialEq)]
pub enum HistoryFn {
    /// `phi(t) = y0`.
    Constant { y0: f64 },
    /// `phi(t) = (t / tau + 1) y0`: zero at `-tau`, `y0` at the origin.
    LinearRamp { y0: f64, tau: f64 },
    /// Piecewise-linear interpolation of `(t, phi)` nodes spanning exactly
    /// `[-tau, 0]`.
    Sampled { tau: f64, nodes: Vec<(f64, f64)> },
}

impl HistoryFn {
    pub fn constant(y0: f64) -> Result<Self> {
        if !y0.is_finite() {
            return domain("history value must be finite");
        }
        Ok(HistoryFn::Constant { y0 })
    }

    pub fn ramp(y0: f64, tau: f64) -> Result<Self> {
        if !y0.is_finite() {
            return domain("history value must be finite");
        }
        check_tau(tau)?;
        Ok(HistoryFn::LinearRamp { y0, tau })
    }

    /// Builds a sampled history. The first node must sit at `-tau` and the last
    /// at `0` (up to a relative `1e-12`, after which they are snapped).
    pub fn sampled(tau: f64, mut nodes: Vec<(f64, f64)>) -> Result<Self> {
        check_tau(tau)?;
        if nodes.len() < 2 {
            return domain("sampled history needs at least two nodes");
        }
        if nodes.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
            return domain("sampled history contains non-finite values");
        }
        if nodes.windows(2).any(|w| w[1].0 <= w[0].0) {
            return domain("sampled history times must be strictly increasing");
        }
        let tol = ENDPOINT_TOL * tau.max(1.0);
        let first = nodes[0].0;
        let last = nodes[nodes.len() - 1].0;
        if (first + tau).abs() > tol {
            return domain(format!(
                "sampled history must start at -tau = {}, starts at {first}",
                -tau
            ));
        }
        if last.abs() > tol {
            return domain(format!("sampled history must end at 0, ends at {last}"));
        }
        nodes[0].0 = -tau;
        let n = nodes.len();
        nodes[n - 1].0 = 0.0;
        Ok(HistoryFn::Sampled { tau, nodes })
    }

    /// Reads a two-column `t,phi` CSV (header optional).
    pub fn from_csv(path: impl AsRef<Path>, tau: f64) -> Result<Self> {
        let nodes = crate::io::read_two_columns(path.as_ref())?;
        HistoryFn::sampled(tau, nodes)
    }

    /// `phi(0)`, the initial value of the differential equation.
    pub fn y0(&self) -> f64 {
        match self {
            HistoryFn::Constant { y0 } | HistoryFn::LinearRamp { y0, .. } => *y0,
            HistoryFn::Sampled { nodes, .. } => nodes[nodes.len() - 1].1,
        }
    }

    /// Delay the history is tied to; `None` for a constant.
    pub fn tau(&self) -> Option<f64> {
        match self {
            HistoryFn::Constant { .. } => None,
            HistoryFn::LinearRamp { tau, .. } | HistoryFn::Sampled { tau, .. } => Some(*tau),
        }
    }

    /// Checks that the history is defined on `[-tau, 0]` for this `tau`.
    pub fn check_delay(&self, tau: f64) -> Result<()> {
        check_tau(tau)?;
        match self.tau() {
            Some(own) if (own - tau).abs() > ENDPOINT_TOL * tau.max(1.0) => Err(FddeError::Usage(format!(
                "history is defined for tau = {own} but the problem uses tau = {tau}"
            ))),
            _ => Ok(()),
        }
    }

    /// `phi(t)` for `t` in `[-tau, 0]`.
    pub fn eval(&self, t: f64, tau: f64) -> Result<f64> {
        let tol = ENDPOINT_TOL * tau.max(1.0);
        if !(t >= -tau - tol && t <= tol) {
            return domain(format!("history evaluated at t = {t}, outside [{}, 0]", -tau));
        }
        Ok(self.eval_clamped(t.clamp(-tau, 0.0)))
    }

    /// Evaluation without the range check; the caller guarantees
    /// `t` in `[-tau, 0]`.
    pub(crate) fn eval_clamped(&self, t: f64) -> f64 {
        match self {
            HistoryFn::Constant { y0 } => *y0,
            HistoryFn::LinearRamp { y0, tau } => (t / tau + 1.0) * y0,
            HistoryFn::Sampled { nodes, .. } => interpolate(nodes, t),
        }
    }

    /// `phi(-tau)`, the value held on `(-inf, -tau)` by the history-aware operator.
    pub fn left_value(&self) -> f64 {
        match self {
            HistoryFn::Constant { y0 } => *y0,
            HistoryFn::LinearRamp { .. } => 0.0,
            HistoryFn::Sampled { nodes, .. } => nodes[0].1,
        }
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 {
        Ok(())
    } else {
        domain(format!("delay must be positive and finite, got {tau}"))
    }
}

fn interpolate(nodes: &[(f64, f64)], t: f64) -> f64 {
    let i = nodes.partition_point(|&(x, _)| x <= t);
    if i == 0 {
        return nodes[0].1;
    }
    if i == nodes.len() {
        return nodes[nodes.len() - 1].1;
    }
    let (t0, v0) = nodes[i - 1];
    let (t1, v1) = nodes[i];
    let theta = (t - t0) / (t1 - t0);
    v0 + theta * (v1 - v0)
}

/// Corrective term `C D_0^alpha phi(t) - C D_{-tau}^alpha phi(t)` for `t > 0`.
///
/// Vanishes for a constant history. For the ramp it equals
/// `y0 (t^(1-alpha) - (t+tau)^(1-alpha)) / (tau Gamma(2-alpha))`. A sampled
/// history is integrated segment by segment with its piecewise-constant slope.
pub fn corrective_term(phi: &HistoryFn, alpha: Order, tau: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("corrective term requires t > 0, got {t}"));
    }
    phi.check_delay(tau)?;
    Ok(corrective_term_unchecked(phi, alpha.value(), tau, t))
}

/// Same as [`corrective_term`] but also accepts `t = 0`, where the term is
/// continuous.
pub(crate) fn corrective_term_unchecked(phi: &HistoryFn, alpha: f64, tau: f64, t: f64) -> f64 {
    let p = 1.0 - alpha;
    let g = gamma_unchecked(2.0 - alpha);
    match phi {
        HistoryFn::Constant { .. } => 0.0,
        HistoryFn::LinearRamp { y0, .. } => y0 / (tau * g) * (t.powf(p) - (t + tau).powf(p)),
        HistoryFn::Sampled { nodes, .. } => {
            // The [0, t] parts of both Caputo integrals cancel; what is left is
            // -(1/Gamma(1-alpha)) int_{-tau}^0 (t-r)^(-alpha) phi'(r) dr.
            let acc: f64 = nodes
                .windows(2)
                .map(|w| {
                    let (r0, v0) = w[0];
                    let (r1, v1) = w[1];
                    let slope = (v1 - v0) / (r1 - r0);
                    slope * ((t - r0).powf(p) - (t - r1).powf(p))
                })
                .sum();
            -acc / g
        }
    }
}
