//! Hermite-basis matrix of the conjugated Kac-Gutzwiller operator
//! `(λe^β)^{-1/2} m_c ∘ K″ ∘ m_c`, where `m_c` multiplies by
//! `sqrt(cosh(2√(πβ) x))` and `K″(x, y) = 2 Σ_k λ^{k+1/2} h_k(x) h_k(y)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::hermite::hermite_functions;
use super::quadrature::GaussHermiteRule;
use crate::model::{Beta, ModelParams};
use crate::ruelle::{Basis, OperatorMatrix};
use crate::{Complex, Error, Result};

/// Extra Hermite modes kept in the inner eigen-sum beyond the output size.
const K_CUT_MARGIN: usize = 40;

/// Quadrature-built matrix with its truncation diagnostics.
#[derive(Clone, Debug)]
pub struct GQuadrature {
    pub matrix: OperatorMatrix,
    /// Number of `K″` modes summed.
    pub k_cut: usize,
    /// Bound on the entries dropped with the modes `k ≥ k_cut`.
    pub tail_bound: f64,
}

/// `N×N` section with a `q`-point rule; `q ≥ 4N`, real `β ≥ 0`.
pub fn g_matrix_quadrature(
    beta: Beta,
    dim: usize,
    q: usize,
    params: &ModelParams,
) -> Result<OperatorMatrix> {
    g_matrix_quadrature_detailed(beta, dim, q, params).map(|g| g.matrix)
}

pub fn g_matrix_quadrature_detailed(
    beta: Beta,
    dim: usize,
    q: usize,
    params: &ModelParams,
) -> Result<GQuadrature> {
    if !beta.is_real() || beta.value().re < 0.0 {
        return Err(Error::UnsupportedDomain(format!(
            "the quadrature Kac-Gutzwiller matrix needs real β ≥ 0, got {}",
            beta.value()
        )));
    }
    if dim == 0 {
        return Err(Error::Domain(
            "truncation dimension must be at least 1".into(),
        ));
    }
    if q < 4 * dim {
        return Err(Error::Domain(format!(
            "quadrature size {q} is below 4N = {}",
            4 * dim
        )));
    }
    let b = beta.value().re;
    let lambda = params.lambda();
    let k_cut = dim + K_CUT_MARGIN;
    let rule = GaussHermiteRule::cached(q);
    let a = 2.0 * (PI * b).sqrt();

    // c[n][k] = ∫ h_n sqrt(cosh(a x)) h_k dx, plus ∫ h_n² cosh(a x) dx for the tail
    let mut c = DMatrix::<f64>::zeros(dim, k_cut);
    let mut mass = vec![0.0; dim];
    for (x, w) in rule.nodes().iter().zip(rule.weights()) {
        let ch = (a * x).cosh();
        let ww = w * ch.sqrt();
        let h = hermite_functions(k_cut - 1, *x);
        for n in 0..dim {
            let hn = ww * h[n];
            if hn == 0.0 {
                continue;
            }
            for k in 0..k_cut {
                c[(n, k)] += hn * h[k];
            }
            mass[n] += w * ch * h[n] * h[n];
        }
    }

    let pref = (lambda * b.exp()).powf(-0.5);
    let d: Vec<f64> = (0..k_cut)
        .map(|k| 2.0 * lambda.powf(k as f64 + 0.5))
        .collect();
    let mut entries = DMatrix::<Complex>::zeros(dim, dim);
    for n in 0..dim {
        for m in 0..=n {
            let s: f64 = (0..k_cut).map(|k| d[k] * c[(n, k)] * c[(m, k)]).sum();
            entries[(n, m)] = Complex::new(pref * s, 0.0);
            entries[(m, n)] = Complex::new(pref * s, 0.0);
        }
    }
    let max_mass = mass.iter().cloned().fold(0.0, f64::max);
    let tail_bound = pref * 2.0 * lambda.powf(k_cut as f64 + 0.5) / (1.0 - lambda) * max_mass;
    Ok(GQuadrature {
        matrix: OperatorMatrix {
            basis: Basis::Hermite,
            beta,
            params: *params,
            entries,
        },
        k_cut,
        tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_zero_is_diagonal() {
        let p = ModelParams::new(0.4).unwrap();
        let g = g_matrix_quadrature(Beta::real(0.0), 30, 120, &p).unwrap();
        for n in 0..30 {
            for m in 0..30 {
                let expect = if n == m {
                    2.0 * 0.4f64.powi(n as i32)
                } else {
                    0.0
                };
                assert!((g.entries[(n, m)].re - expect).abs() < 1e-13, "({n},{m})");
            }
        }
    }

    #[test]
    fn trace_matches_closed_form() {
        let p = ModelParams::new(0.5).unwrap();
        let beta = Beta::real(1.0);
        let g = g_matrix_quadrature_detailed(beta, 80, 320, &p).unwrap();
        let exact = super::super::trace_g_closed_form(beta, &p);
        let err = (g.matrix.trace() - exact).norm();
        assert!(err < 1e-9 * exact.norm(), "err {err}");
        assert!(g.tail_bound < 1e-12);
    }

    #[test]
    fn symmetric_and_rejects_bad_input() {
        let p = ModelParams::new(0.5).unwrap();
        let g = g_matrix_quadrature(Beta::real(2.0), 20, 80, &p).unwrap();
        assert_eq!(g.basis, Basis::Hermite);
        for n in 0..20 {
            for m in 0..20 {
                assert_eq!(g.entries[(n, m)], g.entries[(m, n)]);
                if (n + m) % 2 == 1 {
                    assert!(g.entries[(n, m)].norm() < 1e-13);
                }
            }
        }
        let complex = Beta::new(Complex::new(1.0, 0.5)).unwrap();
        assert!(matches!(
            g_matrix_quadrature(complex, 10, 40, &p),
            Err(Error::UnsupportedDomain(_))
        ));
        assert!(matches!(
            g_matrix_quadrature(Beta::real(-1.0), 10, 40, &p),
            Err(Error::UnsupportedDomain(_))
        ));
        assert!(g_matrix_quadrature(Beta::real(1.0), 10, 39, &p).is_err());
    }
}
