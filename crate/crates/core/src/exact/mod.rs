//! Closed-form solutions of the linear problem
//!
//! ```text
//! D^alpha y(t) = lambda y(t - tau) + f(t),   y = phi on [-tau, 0]
//! ```
//!
//! for constant and linear-ramp histories, under both operators, together with
//! the generalized integral
//! `J f(t) = sum_{k=0}^{floor(t/tau)} lambda^k J^(alpha k + alpha) f(t - k tau)`
//! that carries the forcing.

mod forcing;
mod solutions;

pub use forcing::ForcingFn;
pub use solutions::{
    corrective_response, delay_index, exact_caputo_constant_history, exact_caputo_ramp_history,
    exact_phitau_ramp_history, exact_solution, exact_stepfunction_form, gen_integral, gen_step, solution_difference,
};

use crate::error::{domain, Result};
use crate::history::HistoryFn;
use crate::order::Order;
use crate::solvers::NonlinearProblem;

/// Linear FDDE with constant delay and real coefficient `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProblem {
    alpha: Order,
    lambda: f64,
    tau: f64,
    history: HistoryFn,
    forcing: ForcingFn,
}

impl LinearProblem {
    pub fn new(alpha: Order, lambda: f64, tau: f64, history: HistoryFn, forcing: ForcingFn) -> Result<Self> {
        if !lambda.is_finite() {
            return domain(format!("lambda must be finite, got {lambda}"));
        }
        history.check_delay(tau)?;
        forcing.validate()?;
        Ok(LinearProblem {
            alpha,
            lambda,
            tau,
            history,
            forcing,
        })
    }

    pub fn alpha(&self) -> Order {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn history(&self) -> &HistoryFn {
        &self.history
    }

    pub fn forcing(&self) -> &ForcingFn {
        &self.forcing
    }

    pub fn y0(&self) -> f64 {
        self.history.y0()
    }

    pub fn with_forcing(&self, forcing: ForcingFn) -> Result<Self> {
        forcing.validate()?;
        Ok(LinearProblem {
            forcing,
            ..self.clone()
        })
    }

    /// The same equation as a general problem with
    /// `g(t, y, y_d) = lambda y_d + f(t)`, for the numerical solvers.
    pub fn to_nonlinear(&self) -> NonlinearProblem {
        let lambda = self.lambda;
        let f = self.forcing.clone();
        let horizon = f.horizon();
        NonlinearProblem::new(self.alpha, self.tau, self.history.clone(), move |t, _y, yd| {
            if t > horizon {
                f64::NAN
            } else {
                lambda * yd + f.eval_unchecked(t)
            }
        })
        .expect("linear problem was validated on construction")
    }
}
