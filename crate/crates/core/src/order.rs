use std::fmt;

use crate::error::{domain, Result};

/// Fractional order `alpha`, restricted to the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha < 1.0 {
            Ok(Order(alpha))
        } else {
            domain(format!("fractional order must lie in (0, 1), got {alpha}"))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for Order {
    type Error = crate::FddeError;

    fn try_from(alpha: f64) -> Result<Self> {
        Order::new(alpha)
    }
}

/// Which fractional operator defines the differential equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// Caputo derivative with starting point 0.
    Caputo,
    /// GL derivative of `y` extended by `phi` on `[-tau, 0]` and by
    /// `phi(-tau)` on `(-inf, -tau)`.
    PhiTau,
}
