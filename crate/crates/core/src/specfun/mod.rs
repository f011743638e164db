//! Special-function kernel.
//!
//! Everything here is a pure function of its arguments. The Mittag-Leffler
//! series runs in double-double arithmetic when `alpha` is a positive integer,
//! which is the case for every RL integral of a sinusoid.

mod beta;
mod dd;
mod gamma;
mod gl;
mod mittag_leffler;

pub use beta::{ln_beta, reg_inc_beta};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use gl::{gl_weights, GlWeights};
pub use mittag_leffler::{mittag_leffler, ML_ABS_TOL, ML_REL_TOL, ML_TERM_CAP};

pub(crate) use gamma::gamma_unchecked;
