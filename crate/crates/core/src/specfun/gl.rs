use crate::error::{domain, Result};

/// Grünwald-Letnikov weights `omega_j = (-1)^j binom(alpha, j)`, `j = 0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct GlWeights {
    alpha: f64,
    coeffs: Vec<f64>,
}

impl GlWeights {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest available index.
    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Extends the table in place so that `n_max() >= n`.
    pub fn extend_to(&mut self, n: usize) {
        let mut last = *self.coeffs.last().expect("weights are never empty");
        for j in self.coeffs.len()..=n {
            last *= 1.0 - (self.alpha + 1.0) / j as f64;
            self.coeffs.push(last);
        }
    }
}

impl std::ops::Index<usize> for GlWeights {
    type Output = f64;

    fn index(&self, j: usize) -> &f64 {
        &self.coeffs[j]
    }
}

/// Weights via the recurrence `omega_j = omega_{j-1} (1 - (alpha + 1) / j)`.
///
/// Solvers need `0 < alpha < 1`; `alpha = 1` is also accepted and yields the
/// backward difference `[1, -1, 0, ...]`.
pub fn gl_weights(alpha: f64, n_max: usize) -> Result<GlWeights> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return domain(format!("GL weights require alpha in (0, 1], got {alpha}"));
    }
    let mut w = GlWeights {
        alpha,
        coeffs: vec![1.0],
    };
    w.extend_to(n_max);
    Ok(w)
}
