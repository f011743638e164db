use crate::error::{domain, Result};
use crate::history::HistoryFn;
use crate::operators::floor_steps;

/// Numerical solution on `t_n = n h`, `n = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    h: f64,
    t_end: f64,
    tau: f64,
    values: Vec<f64>,
    history: HistoryFn,
}

impl Trajectory {
    pub(crate) fn new(h: f64, t_end: f64, tau: f64, values: Vec<f64>, history: HistoryFn) -> Self {
        Trajectory {
            h,
            t_end,
            tau,
            values,
            history,
        }
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Requested final time; the last node `N h` may exceed it by less than `h`.
    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn history(&self) -> &HistoryFn {
        &self.history
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.h
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.values.len()).map(|n| self.time(n)).collect()
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(|(n, &v)| (self.time(n), v))
    }

    /// Value at any `t` in `[-tau, N h]`: the history for `t <= 0`, linear
    /// interpolation between nodes otherwise.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        lookup(&self.values, None, &self.history, self.tau, self.h, t)
    }

    /// Alias of [`Trajectory::value_at`] for delayed arguments.
    pub fn delayed_value(&self, t: f64) -> Result<f64> {
        self.value_at(t)
    }
}

/// Interpolated value from the computed nodes. `pending` is a tentative value
/// for the node right after the last computed one (used by implicit steps).
/// Requests past the available data are refused.
pub(crate) fn lookup(
    values: &[f64],
    pending: Option<f64>,
    history: &HistoryFn,
    tau: f64,
    h: f64,
    t: f64,
) -> Result<f64> {
    if t <= 0.0 {
        return history.eval(t, tau);
    }
    let known = values.len() + usize::from(pending.is_some());
    let node = |i: usize| {
        if i < values.len() {
            values[i]
        } else {
            pending.unwrap_or(f64::NAN)
        }
    };
    let i = floor_steps(t, h);
    if i + 1 < known {
        let theta = (t - i as f64 * h) / h;
        let (a, b) = (node(i), node(i + 1));
        if theta == 0.0 {
            return Ok(a);
        }
        return Ok(a + theta * (b - a));
    }
    if i + 1 == known && t == i as f64 * h {
        return Ok(node(i));
    }
    domain(format!(
        "value at t = {t} requested beyond the computed frontier t = {}",
        (known - 1) as f64 * h
    ))
}
