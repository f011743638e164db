use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{domain, FddeError, Result};
use crate::quad::tanh_sinh;
use crate::specfun::{gamma_unchecked, mittag_leffler};

const CUSTOM_QUAD_TOL: f64 = 1e-13;

type ForcingCallable = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Source term `f(t)` of the linear problem.
#[derive(Clone)]
pub enum ForcingFn {
    Zero,
    Constant(f64),
    /// `amplitude * cos(omega t)`.
    Cosine {
        amplitude: f64,
        omega: f64,
    },
    /// `amplitude * sin(omega t)`.
    Sine {
        amplitude: f64,
        omega: f64,
    },
    /// Arbitrary callable; its fractional integrals are computed by quadrature.
    Custom(ForcingCallable),
    /// Piecewise-linear samples starting at `t = 0`.
    Sampled(Vec<(f64, f64)>),
}

impl fmt::Debug for ForcingFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForcingFn::Zero => f.write_str("Zero"),
            ForcingFn::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            ForcingFn::Cosine { amplitude, omega } => f
                .debug_struct("Cosine")
                .field("amplitude", amplitude)
                .field("omega", omega)
                .finish(),
            ForcingFn::Sine { amplitude, omega } => f
                .debug_struct("Sine")
                .field("amplitude", amplitude)
                .field("omega", omega)
                .finish(),
            ForcingFn::Custom(_) => f.write_str("Custom(<fn>)"),
            ForcingFn::Sampled(nodes) => write!(f, "Sampled({} nodes)", nodes.len()),
        }
    }
}

impl ForcingFn {
    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        ForcingFn::Custom(Arc::new(f))
    }

    /// Piecewise-linear forcing through `(t, f)` nodes; the first node must be
    /// at `t = 0`, the solution can be evaluated up to the last node.
    pub fn sampled(nodes: Vec<(f64, f64)>) -> Result<Self> {
        if nodes.len() < 2 {
            return domain("sampled forcing needs at least two nodes");
        }
        if nodes.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
            return domain("sampled forcing contains non-finite values");
        }
        if nodes[0].0 != 0.0 {
            return domain(format!("sampled forcing must start at t = 0, starts at {}", nodes[0].0));
        }
        if nodes.windows(2).any(|w| w[1].0 <= w[0].0) {
            return domain("sampled forcing times must be strictly increasing");
        }
        Ok(ForcingFn::Sampled(nodes))
    }

    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        ForcingFn::sampled(crate::io::read_two_columns(path.as_ref())?)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let ok = match self {
            ForcingFn::Zero | ForcingFn::Custom(_) | ForcingFn::Sampled(_) => true,
            ForcingFn::Constant(c) => c.is_finite(),
            ForcingFn::Cosine { amplitude, omega } | ForcingFn::Sine { amplitude, omega } => {
                amplitude.is_finite() && omega.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            domain(format!("forcing parameters must be finite: {self:?}"))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ForcingFn::Zero)
    }

    /// Last time at which the forcing is defined.
    pub fn horizon(&self) -> f64 {
        match self {
            ForcingFn::Sampled(nodes) => nodes[nodes.len() - 1].0,
            _ => f64::INFINITY,
        }
    }

    /// `f(t)` for `t >= 0`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) || t > self.horizon() {
            return domain(format!("forcing evaluated at t = {t}, outside [0, {}]", self.horizon()));
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        match self {
            ForcingFn::Zero => 0.0,
            ForcingFn::Constant(c) => *c,
            ForcingFn::Cosine { amplitude, omega } => amplitude * (omega * t).cos(),
            ForcingFn::Sine { amplitude, omega } => amplitude * (omega * t).sin(),
            ForcingFn::Custom(f) => f(t),
            ForcingFn::Sampled(nodes) => {
                let i = nodes.partition_point(|&(x, _)| x <= t).clamp(1, nodes.len() - 1);
                let (t0, v0) = nodes[i - 1];
                let (t1, v1) = nodes[i];
                v0 + (t - t0) / (t1 - t0) * (v1 - v0)
            }
        }
    }

    /// Riemann-Liouville integral `J^beta f(s)` with starting point 0.
    pub fn rl_integral(&self, beta: f64, s: f64) -> Result<f64> {
        if !(beta > 0.0) || !beta.is_finite() {
            return domain(format!("integral order must be positive, got {beta}"));
        }
        if !(s >= 0.0) || s > self.horizon() {
            return domain(format!("forcing integral at s = {s}, outside [0, {}]", self.horizon()));
        }
        if s == 0.0 {
            return Ok(0.0);
        }
        match self {
            ForcingFn::Zero => Ok(0.0),
            ForcingFn::Constant(c) => Ok(c * s.powf(beta) / gamma_unchecked(beta + 1.0)),
            ForcingFn::Cosine { amplitude, omega } => {
                let z = -(omega * s) * (omega * s);
                Ok(amplitude * s.powf(beta) * mittag_leffler(2.0, beta + 1.0, z)?)
            }
            ForcingFn::Sine { amplitude, omega } => {
                let z = -(omega * s) * (omega * s);
                Ok(amplitude * omega * s.powf(beta + 1.0) * mittag_leffler(2.0, beta + 2.0, z)?)
            }
            ForcingFn::Custom(f) => {
                let q = tanh_sinh(|r, _, right| right.powf(beta - 1.0) * f(r), 0.0, s, CUSTOM_QUAD_TOL);
                let v = q.value / gamma_unchecked(beta);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(FddeError::Domain(format!(
                        "custom forcing integral is not finite at s = {s}"
                    )))
                }
            }
            ForcingFn::Sampled(nodes) => Ok(sampled_rl_integral(nodes, beta, s)),
        }
    }
}

impl PartialEq for ForcingFn {
    fn eq(&self, other: &Self) -> bool {
        use ForcingFn::*;
        match (self, other) {
            (Zero, Zero) => true,
            (Constant(a), Constant(b)) => a == b,
            (Cosine { amplitude: a, omega: w }, Cosine { amplitude: b, omega: v })
            | (Sine { amplitude: a, omega: w }, Sine { amplitude: b, omega: v }) => a == b && w == v,
            (Custom(a), Custom(b)) => Arc::ptr_eq(a, b),
            (Sampled(a), Sampled(b)) => a == b,
            _ => false,
        }
    }
}

// Exact integral of the piecewise-linear interpolant against (s - r)^(beta-1).
fn sampled_rl_integral(nodes: &[(f64, f64)], beta: f64, s: f64) -> f64 {
    let mut acc = 0.0;
    for w in nodes.windows(2) {
        let (r0, v0) = w[0];
        if r0 >= s {
            break;
        }
        let (r1, v1) = w[1];
        let slope = (v1 - v0) / (r1 - r0);
        let u0 = s - r0;
        let u1 = (s - r1).max(0.0);
        // f(r) = f(r0) + slope (u0 - u) with u = s - r.
        let m0 = u0.powf(beta) - u1.powf(beta);
        let m1 = u0.powf(beta + 1.0) - u1.powf(beta + 1.0);
        acc += (v0 + slope * u0) * m0 / beta - slope * m1 / (beta + 1.0);
    }
    acc / gamma_unchecked(beta)
}
