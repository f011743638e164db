//! # fdde
//!
//! Exact closed-form solutions and first-order numerical solvers for
//! fractional delay differential equations of order `0 < alpha < 1`
//!
//! ```text
//! D^alpha y(t) = g(t, y(t), y(t - tau)),   t > 0
//! y(t)         = phi(t),                   -tau <= t <= 0
//! ```
//!
//! under two fractional operators:
//!
//! - the Caputo derivative with starting point 0, which only sees `y(0)` from
//!   the history and behaves as if `y(t) = y(0)` for all `t < 0`;
//! - the history-aware Grünwald-Letnikov operator ([`OperatorKind::PhiTau`]),
//!   which reads `phi` on `[-tau, 0]` and holds `phi(-tau)` further back.
//!
//! The two operators differ by the *corrective term*
//! `C D_0 phi(t) - C D_{-tau} phi(t)` (see [`history::corrective_term`]).
//!
//! ## Layout
//!
//! - [`specfun`]: Gamma, regularized incomplete beta, Mittag-Leffler, GL weights
//! - [`history`]: initial functions and the corrective term
//! - [`exact`]: closed-form solutions of the linear problem
//!   `D^alpha y = lambda y(t - tau) + f(t)`
//! - [`operators`]: truncated GL realizations of both operators
//! - [`solvers`]: product-integration and GL time stepping
//! - [`io`]: CSV readers and writers

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exact;
pub mod history;
pub mod io;
pub mod operators;
pub mod quad;
pub mod solvers;
pub mod specfun;

mod order;

pub use error::{FddeError, Result};
pub use exact::{ForcingFn, LinearProblem};
pub use history::HistoryFn;
pub use operators::SampledFunction;
pub use order::{OperatorKind, Order};
pub use solvers::{NonlinearProblem, Scheme, SolverConfig, SolverMode, Trajectory};
pub use specfun::GlWeights;
