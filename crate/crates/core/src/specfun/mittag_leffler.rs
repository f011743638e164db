use crate::error::{domain, FddeError, Result};

use super::dd::DoubleDouble;
use super::gamma::{ln_gamma_pos, rgamma};

/// Maximum number of series terms before giving up.
pub const ML_TERM_CAP: usize = 2000;

/// Relative accuracy the series must be able to certify; otherwise the
/// evaluation is refused with a capability error.
pub const ML_REL_TOL: f64 = 1e-10;

/// Absolute accuracy accepted instead of [`ML_REL_TOL`] for values close to a
/// root, where the relative error is meaningless.
pub const ML_ABS_TOL: f64 = 1e-14;

const TERM_REL_STOP: f64 = 1e-16;
// Per-term relative error of the f64 path (Gamma plus the power).
const F64_TERM_ERR: f64 = 8.0 * f64::EPSILON;
// Rounding floor of the double-double path.
const DD_TERM_ERR: f64 = 1e-31;
// Relative error of the leading 1/Gamma factor, common to every term of the
// double-double recurrence.
const LEAD_ERR: f64 = 4.0 * f64::EPSILON;

/// Two-parameter Mittag-Leffler function `E_{alpha,beta}(z)` for real `z`.
///
/// Evaluated by its Taylor series `sum z^k / Gamma(alpha k + beta)`. For
/// integer `alpha` consecutive terms differ by a rational factor and the sum
/// runs in double-double, which absorbs the cancellation of large negative
/// arguments (`E_{2,b}(-x^2)` with `x` up to ~35). Other orders use an f64
/// compensated sum. In both cases a running bound of the rounding error is
/// kept and the result is returned only if that bound certifies
/// [`ML_REL_TOL`] relative or [`ML_ABS_TOL`] absolute accuracy.
pub fn mittag_leffler(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return domain(format!("mittag_leffler requires alpha > 0, got {alpha}"));
    }
    if !beta.is_finite() || !z.is_finite() {
        return domain(format!("mittag_leffler requires finite beta and z, got ({beta}, {z})"));
    }
    if z == 0.0 {
        return Ok(rgamma(beta));
    }
    let (sum, err) = if alpha == alpha.floor() && alpha <= 64.0 {
        series_integer_order(alpha as u32, beta, z)?
    } else {
        series_f64(alpha, beta, z)?
    };
    if !sum.is_finite() {
        return Err(FddeError::Capability(format!("E_{{{alpha},{beta}}}({z}) overflows")));
    }
    if err > (ML_REL_TOL * sum.abs()).max(ML_ABS_TOL) {
        return Err(FddeError::Capability(format!(
            "E_{{{alpha},{beta}}}({z}): series cancellation leaves an error bound of {err:e} \
             against |value| = {:e}",
            sum.abs()
        )));
    }
    Ok(sum)
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Double-double summation using `t_k = t_{k-1} z / prod_{i<m} (m(k-1) + beta + i)`.
fn series_integer_order(m: u32, beta: f64, z: f64) -> Result<(f64, f64)> {
    let mf = m as f64;
    // Skip leading zero terms sitting on poles of Gamma.
    let mut k0 = 0usize;
    while is_nonpositive_integer(mf * k0 as f64 + beta) {
        k0 += 1;
    }
    let lead = z.powi(k0 as i32) * rgamma(mf * k0 as f64 + beta);
    if !lead.is_finite() {
        return Err(FddeError::Capability(format!(
            "leading Mittag-Leffler term overflows ({lead})"
        )));
    }
    let mut term = DoubleDouble::from_f64(lead);
    let mut sum = term;
    let mut abs_sum = lead.abs();
    let mut peak = lead.abs();
    let zd = DoubleDouble::from_f64(z);

    for k in (k0 + 1)..=(k0 + ML_TERM_CAP) {
        // Each factor m(k-1) + i + beta is formed exactly in double-double:
        // rounding it to f64 would cost k*eps per term.
        let shift = DoubleDouble::from_f64(beta);
        let mut denom = DoubleDouble::from_f64(1.0);
        for i in 0..m {
            let int_part = DoubleDouble::from_f64(mf * (k - 1) as f64 + i as f64);
            denom = denom * (int_part + shift);
        }
        let prev = term.hi.abs();
        term = term * zd / denom;
        sum = sum + term;
        let t = term.hi.abs();
        abs_sum += t;
        peak = peak.max(t);
        if !abs_sum.is_finite() {
            return Err(FddeError::Capability(format!(
                "Mittag-Leffler series overflows for z = {z}"
            )));
        }
        let s = sum.to_f64().abs();
        if t < prev && t <= TERM_REL_STOP * s + DD_TERM_ERR * peak {
            let err = LEAD_ERR * s + DD_TERM_ERR * abs_sum;
            return Ok((sum.to_f64(), err));
        }
    }
    Err(not_converged(m as f64, beta, z))
}

/// Neumaier-compensated f64 summation with terms from the Gamma function.
fn series_f64(alpha: f64, beta: f64, z: f64) -> Result<(f64, f64)> {
    let ln_abs_z = z.abs().ln();
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut prev = f64::INFINITY;

    for k in 0..ML_TERM_CAP {
        let arg = alpha * k as f64 + beta;
        let term = if is_nonpositive_integer(arg) {
            0.0
        } else if arg < 170.0 && (k as f64) * ln_abs_z < 700.0 {
            z.powi(k as i32) * rgamma(arg)
        } else {
            let sign = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
            // arg > 0 on this branch unless Gamma is negative there
            if arg > 0.0 {
                sign * (k as f64 * ln_abs_z - ln_gamma_pos(arg)).exp()
            } else {
                z.powi(k as i32) * rgamma(arg)
            }
        };
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        abs_sum += term.abs();
        if !abs_sum.is_finite() {
            return Err(FddeError::Capability(format!(
                "Mittag-Leffler series overflows for z = {z}"
            )));
        }
        let s = (sum + comp).abs();
        let a = term.abs();
        if k > 0 && a < prev && a <= TERM_REL_STOP * s {
            return Ok((sum + comp, F64_TERM_ERR * abs_sum));
        }
        if a > 0.0 {
            prev = a;
        }
    }
    Err(not_converged(alpha, beta, z))
}

fn not_converged(alpha: f64, beta: f64, z: f64) -> FddeError {
    FddeError::Capability(format!(
        "E_{{{alpha},{beta}}}({z}) did not converge within {ML_TERM_CAP} terms"
    ))
}
