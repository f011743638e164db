//! First-order time stepping for `D^alpha y = g(t, y(t), y(t - tau))`.
//!
//! - [`solve_pi_rect`]: rectangular product integration of the equivalent
//!   Volterra equation (Caputo operator);
//! - [`solve_gl_phitau`]: truncated GL scheme for the history-aware operator;
//! - [`solve_dde_euler_ref`]: explicit Euler for the classical `alpha = 1` DDE.
//!
//! Delayed values are linearly interpolated, so `h` and `tau` need not be
//! commensurate.

mod schemes;
mod trajectory;

use std::fmt;
use std::sync::Arc;

pub use schemes::{
    solve, solve_dde_euler_ref, solve_gl_phitau, solve_phitau_via_corrective, solve_pi_rect, solve_pi_rect_with_source,
};
pub use trajectory::Trajectory;

use crate::error::{domain, Result};
use crate::history::HistoryFn;
use crate::order::Order;

/// Right-hand side `g(t, y, y_delayed)`.
pub type Rhs = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// Default step size of the experiments.
pub const DEFAULT_STEP: f64 = 1.0 / 256.0;

#[derive(Clone)]
pub struct NonlinearProblem {
    alpha: Order,
    tau: f64,
    history: HistoryFn,
    rhs: Rhs,
}

impl fmt::Debug for NonlinearProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NonlinearProblem")
            .field("alpha", &self.alpha)
            .field("tau", &self.tau)
            .field("history", &self.history)
            .finish_non_exhaustive()
    }
}

impl NonlinearProblem {
    pub fn new(
        alpha: Order,
        tau: f64,
        history: HistoryFn,
        rhs: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        history.check_delay(tau)?;
        Ok(NonlinearProblem {
            alpha,
            tau,
            history,
            rhs: Arc::new(rhs),
        })
    }

    pub fn alpha(&self) -> Order {
        self.alpha
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn history(&self) -> &HistoryFn {
        &self.history
    }

    pub fn rhs(&self, t: f64, y: f64, y_delayed: f64) -> f64 {
        (self.rhs)(t, y, y_delayed)
    }

    pub fn with_alpha(&self, alpha: Order) -> Self {
        NonlinearProblem { alpha, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    PiRect,
    GlPhiTau,
}

/// How the GL scheme treats the `g` term at the new node. The product
/// integration scheme is explicit by construction and ignores this setting.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum SolverMode {
    /// `g` is evaluated at the previous node.
    #[default]
    Explicit,
    /// `g` is evaluated at the new node and the implicit relation is solved
    /// by damped fixed-point iteration.
    FixedPoint { max_iter: usize, tol: f64 },
}

impl SolverMode {
    pub const DEFAULT_FIXED_POINT: SolverMode = SolverMode::FixedPoint {
        max_iter: 50,
        tol: 1e-12,
    };
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    scheme: Scheme,
    mode: SolverMode,
    h: f64,
    t_end: f64,
}

impl SolverConfig {
    pub fn new(scheme: Scheme, h: f64, t_end: f64) -> Result<Self> {
        SolverConfig::with_mode(scheme, SolverMode::Explicit, h, t_end)
    }

    pub fn with_mode(scheme: Scheme, mode: SolverMode, h: f64, t_end: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return domain(format!("step size must be positive, got {h}"));
        }
        if !(t_end > 0.0) || !t_end.is_finite() {
            return domain(format!("final time must be positive, got {t_end}"));
        }
        if let SolverMode::FixedPoint { max_iter, tol } = mode {
            if max_iter == 0 || !(tol > 0.0) {
                return domain("fixed-point mode needs max_iter >= 1 and tol > 0");
            }
        }
        Ok(SolverConfig { scheme, mode, h, t_end })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn mode(&self) -> SolverMode {
        self.mode
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// Number of steps `N = ceil(T / h)`, ignoring rounding noise in `T / h`.
    pub fn steps(&self) -> usize {
        let r = self.t_end / self.h;
        let near = r.round();
        if (r - near).abs() <= 1e-9 * near.max(1.0) {
            (near as usize).max(1)
        } else {
            r.ceil() as usize
        }
    }

    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        SolverConfig { scheme, ..*self }
    }

    pub fn with_step(&self, h: f64) -> Result<Self> {
        SolverConfig::with_mode(self.scheme, self.mode, h, self.t_end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_count() {
        let c = SolverConfig::new(Scheme::PiRect, DEFAULT_STEP, 10.0).unwrap();
        assert_eq!(c.steps(), 2560);
        let c = SolverConfig::new(Scheme::PiRect, 0.1, 1.0).unwrap();
        assert_eq!(c.steps(), 10);
        let c = SolverConfig::new(Scheme::PiRect, 0.3, 1.0).unwrap();
        assert_eq!(c.steps(), 4);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::new(Scheme::PiRect, 0.0, 1.0).is_err());
        assert!(SolverConfig::new(Scheme::PiRect, 0.1, -1.0).is_err());
        let bad = SolverMode::FixedPoint {
            max_iter: 0,
            tol: 1e-12,
        };
        assert!(SolverConfig::with_mode(Scheme::GlPhiTau, bad, 0.1, 1.0).is_err());
    }
}
