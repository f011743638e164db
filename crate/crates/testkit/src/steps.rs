//! Exact solutions of `D^alpha y = lambda y(t - tau) + c` with constant or
//! ramp history, built symbolically by the method of steps as finite sums of
//! shifted power functions `u_a^[p](t) = (t - a)_+^p / Gamma(p + 1)`.

/// `sum coef * u_shift^[power](t)`.
#[derive(Debug, Clone, Default)]
pub struct StepSeries {
    terms: Vec<(f64, f64, f64)>,
}

impl StepSeries {
    pub fn term(coef: f64, shift: f64, power: f64) -> Self {
        StepSeries {
            terms: vec![(coef, shift, power)],
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .filter(|&&(_, a, _)| t >= a)
            .map(|&(c, a, p)| {
                let x = t - a;
                let v = if p == 0.0 { 1.0 } else { x.powf(p) };
                c * v / crate::gamma(p + 1.0)
            })
            .sum()
    }

    /// `J^alpha u_a^[p] = u_a^[p + alpha]`.
    pub fn integrate(&self, alpha: f64) -> Self {
        StepSeries {
            terms: self.terms.iter().map(|&(c, a, p)| (c, a, p + alpha)).collect(),
        }
    }

    /// `t -> y(t - tau) 1_{t >= tau}`.
    pub fn delay(&self, tau: f64) -> Self {
        StepSeries {
            terms: self.terms.iter().map(|&(c, a, p)| (c, a + tau, p)).collect(),
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        StepSeries {
            terms: self.terms.iter().map(|&(c, a, p)| (k * c, a, p)).collect(),
        }
    }

    pub fn plus(mut self, other: &StepSeries) -> Self {
        self.terms.extend_from_slice(&other.terms);
        self
    }

    /// Drops terms that start after `t_max`.
    fn prune(mut self, t_max: f64) -> Self {
        self.terms.retain(|&(_, a, _)| a <= t_max);
        self
    }
}

/// History shape for [`method_of_steps`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum History {
    Constant,
    /// `phi(t) = (t / tau + 1) y0`.
    Ramp,
}

/// Caputo solution on `[0, t_max]` of `D^alpha y = lambda y(t - tau) + c`.
///
/// Writing `y = y0 + e` and `s(t) = y(t - tau)` for `t >= 0`:
/// - constant history: `s = y0 + delay(e)`;
/// - ramp history: `s = (y0/tau) (u_0^[1] - u_tau^[1]) + delay(e)`;
///
/// and `e = J^alpha (lambda s + c)`, iterated until every new term starts
/// beyond `t_max`.
pub fn method_of_steps(alpha: f64, lambda: f64, tau: f64, y0: f64, history: History, c: f64, t_max: f64) -> StepSeries {
    let free = match history {
        History::Constant => StepSeries::term(lambda * y0, 0.0, 0.0),
        History::Ramp => {
            StepSeries::term(lambda * y0 / tau, 0.0, 1.0).plus(&StepSeries::term(-lambda * y0 / tau, tau, 1.0))
        }
    }
    .plus(&StepSeries::term(c, 0.0, 0.0));
    let mut e = StepSeries::default();
    let rounds = (t_max / tau).floor() as usize + 2;
    for _ in 0..rounds {
        let rhs = free.clone().plus(&e.delay(tau).scale(lambda));
        e = rhs.integrate(alpha).prune(t_max);
    }
    StepSeries::term(y0, f64::NEG_INFINITY, 0.0).plus(&e)
}
