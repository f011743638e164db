//! Reference computations for the test suites, written independently of the
//! `fdde` kernels: different quadrature, different Gamma implementation
//! (libm), and a symbolic method-of-steps solver.

pub mod quad;
pub mod steps;

pub use quad::{gauss_kronrod, rl_integral};
pub use steps::{method_of_steps, History, StepSeries};

/// Gamma from the C math library.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `I_x(a, b)` by direct quadrature of the defining integral. Both endpoint
/// factors are removed by substitution: `v = t^a / a` on `[0, 1/2]` and
/// `w = (1 - t)^b / b` on `[1/2, 1]`.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_b = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
    let tol = 1e-15;
    let lower = |v: f64| {
        let t = (a * v).powf(1.0 / a);
        (1.0 - t).powf(b - 1.0)
    };
    let upper = |w: f64| {
        let t = 1.0 - (b * w).powf(1.0 / b);
        t.powf(a - 1.0)
    };
    let mid = x.min(0.5);
    let mut total = gauss_kronrod(lower, 0.0, mid.powf(a) / a, tol);
    if x > 0.5 {
        // t from 1/2 to x  <=>  w from (1/2)^b/b down to (1-x)^b/b
        total += gauss_kronrod(upper, (1.0 - x).powf(b) / b, 0.5f64.powf(b) / b, tol);
    }
    total * (-ln_b).exp()
}

/// `E_{alpha,beta}(z)` by a fixed number of Kahan-summed series terms; only
/// trustworthy for moderate `|z|`.
pub fn mittag_leffler_series(alpha: f64, beta: f64, z: f64, terms: usize) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 0..terms {
        let arg = alpha * k as f64 + beta;
        if arg <= 0.0 && arg == arg.floor() {
            continue;
        }
        let term = if arg < 170.0 {
            z.powi(k as i32) / gamma(arg)
        } else {
            let sign = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
            sign * (k as f64 * z.abs().ln() - ln_gamma(arg)).exp()
        };
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term == 0.0 && k > 10 {
            break;
        }
    }
    sum
}

/// GL weight `omega_j = Gamma(j - alpha) / (Gamma(-alpha) Gamma(j + 1))`
/// from log-Gamma values.
pub fn gl_weight_direct(alpha: f64, j: usize) -> f64 {
    if j == 0 {
        return 1.0;
    }
    // Gamma(-alpha) = -Gamma(1 - alpha) / alpha < 0, Gamma(j - alpha) > 0.
    let jf = j as f64;
    -alpha * (ln_gamma(jf - alpha) - ln_gamma(1.0 - alpha) - ln_gamma(jf + 1.0)).exp()
}

/// `sum_{j=0}^{n} omega_j = Gamma(n + 1 - alpha) / (Gamma(1 - alpha) Gamma(n + 1))`,
/// evaluated as `prod_{j=1}^{n} (1 - alpha / j)`; differencing log-Gamma
/// values near 6000 would cost about 1e-12.
pub fn gl_partial_sum_closed(alpha: f64, n: usize) -> f64 {
    (1..=n).map(|j| (-alpha / j as f64).ln_1p()).sum::<f64>().exp()
}

/// Caputo derivative of `t^p` (`p > 0`) with starting point 0.
pub fn caputo_of_power(p: f64, alpha: f64, t: f64) -> f64 {
    gamma(p + 1.0) / gamma(p + 1.0 - alpha) * t.powf(p - alpha)
}

/// Caputo derivative at `t` with starting point `a` of a function whose
/// derivative is `dphi`, by quadrature of `int_a^t (t-r)^(-alpha) dphi(r) dr`.
pub fn caputo_by_quadrature(dphi: impl Fn(f64) -> f64, alpha: f64, a: f64, t: f64) -> f64 {
    rl_integral(|r| dphi(a + r), 1.0 - alpha, t - a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inc_beta_closed_forms() {
        // I_x(1, b) = 1 - (1-x)^b, I_x(a, 1) = x^a
        for &x in &[0.1, 0.5, 0.77, 0.999] {
            assert!((reg_inc_beta(x, 1.0, 2.5) - (1.0 - (1.0 - x).powf(2.5))).abs() < 1e-13);
            assert!((reg_inc_beta(x, 0.3, 1.0) - x.powf(0.3)).abs() < 1e-13);
        }
    }

    #[test]
    fn weights_and_sums() {
        assert!((gl_weight_direct(0.5, 1) + 0.5).abs() < 1e-15);
        assert!((gl_weight_direct(0.5, 2) + 0.125).abs() < 1e-15);
        assert!((gl_partial_sum_closed(0.5, 1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ml_exp() {
        assert!((mittag_leffler_series(1.0, 1.0, 2.0, 200) - 2f64.exp()).abs() < 1e-13);
    }
}
