//! Hermite functions in the normalization `h_0(x) = 2^{1/4} e^{-πx²}`.
//!
//! With this scaling `(h_k)` is an orthonormal basis of `L²(ℝ, dx)` and
//! `e^{πx²} h_k(x)` is a polynomial of degree `k`.

use std::f64::consts::PI;

use crate::{Error, Result};

/// `h_k(x)`.
pub fn hermite_h(k: i64, x: f64) -> Result<f64> {
    if k < 0 {
        return Err(Error::Domain(format!(
            "Hermite index must be non-negative, got {k}"
        )));
    }
    Ok(hermite_functions(k as usize, x)[k as usize])
}

/// `[h_0(x), ..., h_{max_k}(x)]` via
/// `h_{k+1} = sqrt(π/(k+1))·2x·h_k - sqrt(k/(k+1))·h_{k-1}`.
pub fn hermite_functions(max_k: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_k + 1);
    out.push(2f64.powf(0.25) * (-PI * x * x).exp());
    if max_k == 0 {
        return out;
    }
    out.push(2.0 * PI.sqrt() * x * out[0]);
    for k in 1..max_k {
        let kf = k as f64;
        let next =
            (PI / (kf + 1.0)).sqrt() * 2.0 * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// The first `max_k + 1` Hermite functions, as a basis handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HermiteBasis {
    pub max_k: usize,
}

impl HermiteBasis {
    pub fn new(max_k: usize) -> Self {
        Self { max_k }
    }

    pub fn values(&self, x: f64) -> Vec<f64> {
        hermite_functions(self.max_k, x)
    }

    /// Evaluate `Σ_k coeffs[k] h_k(x)`.
    pub fn combine(coeffs: &[f64], x: f64) -> f64 {
        if coeffs.is_empty() {
            return 0.0;
        }
        hermite_functions(coeffs.len() - 1, x)
            .iter()
            .zip(coeffs)
            .map(|(h, c)| h * c)
            .sum()
    }

    /// Largest `|∫ h_j h_k dx - δ_jk|` over the basis, with the given rule.
    pub fn orthonormality_defect(&self, rule: &super::GaussHermiteRule) -> f64 {
        let n = self.max_k + 1;
        let mut gram = vec![0.0; n * n];
        for (x, w) in rule.nodes().iter().zip(rule.weights()) {
            let h = self.values(*x);
            for j in 0..n {
                for k in 0..=j {
                    gram[j * n + k] += w * h[j] * h[k];
                }
            }
        }
        let mut worst: f64 = 0.0;
        for j in 0..n {
            for k in 0..=j {
                let target = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((gram[j * n + k] - target).abs());
            }
        }
        worst
    }
}
