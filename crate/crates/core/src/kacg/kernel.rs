//! Mehler's formula and the Kac / Kac-Gutzwiller kernels.

use std::f64::consts::PI;

use super::hermite::hermite_functions;
use crate::model::{Beta, ModelParams};
use crate::{Complex, Error, Result};

/// Both sides of Mehler's formula at one point.
#[derive(Clone, Copy, Debug)]
pub struct MehlerSides {
    /// Partial sum `Σ_{k<K} λ^k h_k(x) h_k(y)`.
    pub lhs: f64,
    /// `(2/(1-λ²))^{1/2} exp((-π(1+λ²)(x²+y²) + 4πλxy)/(1-λ²))`.
    pub rhs: f64,
    /// The same closed form written in `γ` and `ξ = 2√π x`, `η = 2√π y`.
    pub rhs_rescaled: f64,
}

pub fn mehler_sides(lambda: f64, x: f64, y: f64, terms: usize) -> Result<MehlerSides> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::Domain(format!(
            "Mehler parameter must lie in (0, 1), got {lambda}"
        )));
    }
    if terms == 0 {
        return Err(Error::Domain(
            "Mehler partial sum needs at least one term".into(),
        ));
    }
    let hx = hermite_functions(terms - 1, x);
    let hy = hermite_functions(terms - 1, y);
    let mut lhs = 0.0;
    let mut lk = 1.0;
    for (a, b) in hx.iter().zip(&hy) {
        lhs += lk * a * b;
        lk *= lambda;
    }
    let l2 = lambda * lambda;
    let rhs = (2.0 / (1.0 - l2)).sqrt()
        * ((-PI * (1.0 + l2) * (x * x + y * y) + 4.0 * PI * lambda * x * y) / (1.0 - l2)).exp();
    let c = 2.0 * PI.sqrt();
    let gamma = -lambda.ln();
    let rhs_rescaled = ktilde_value(gamma, c * x, c * y);
    Ok(MehlerSides {
        lhs,
        rhs,
        rhs_rescaled,
    })
}

/// Sum Mehler's series until the terms drop below `1e-18` of the running sum.
pub fn mehler_adaptive(lambda: f64, x: f64, y: f64) -> Result<MehlerSides> {
    let mut terms = 16;
    loop {
        let s = mehler_sides(lambda, x, y, terms)?;
        let tail = lambda.powi(terms as i32) * 2f64.sqrt() / (1.0 - lambda);
        if tail <= 1e-18 * s.rhs.abs().max(1e-300) || terms >= 4096 {
            return Ok(s);
        }
        terms *= 2;
    }
}

fn gaussian_exponent(gamma: f64, xi: f64, eta: f64) -> f64 {
    -0.25 * (gamma / 2.0).tanh() * (xi * xi + eta * eta) - (xi - eta).powi(2) / (4.0 * gamma.sinh())
}

fn ktilde_value(gamma: f64, xi: f64, eta: f64) -> f64 {
    (1.0 / gamma.sinh()).sqrt() * (gamma / 2.0).exp() * gaussian_exponent(gamma, xi, eta).exp()
}

/// `K̃(ξ,η) = (1/sinh γ)^{1/2} e^{γ/2} exp(-¼ tanh(γ/2)(ξ²+η²) - (ξ-η)²/(4 sinh γ))`.
pub fn ktilde_kernel(xi: f64, eta: f64, params: &ModelParams) -> f64 {
    ktilde_value(params.gamma(), xi, eta)
}

/// Kac's kernel with `J` absorbed into `β`:
/// `K_β(ξ,η) = (cosh(√β ξ) cosh(√β η) / (π sinh γ))^{1/2} exp(…)`.
///
/// Square roots are principal-branch; for `β < 0` the hyperbolic cosines turn
/// into `cos(√|β| ξ)` and the value may be complex.
pub fn kac_kernel(beta: Beta, xi: f64, eta: f64, params: &ModelParams) -> Complex {
    let g = params.gamma();
    let sb = beta.value().sqrt();
    let prod = (sb * xi).cosh() * (sb * eta).cosh() / (PI * g.sinh());
    prod.sqrt() * gaussian_exponent(g, xi, eta).exp()
}

/// Right side of the factorization `K_β = (cosh·cosh/(π e^γ))^{1/2} K̃`.
pub fn kac_kernel_factored(beta: Beta, xi: f64, eta: f64, params: &ModelParams) -> Complex {
    let sb = beta.value().sqrt();
    let prefactor = ((sb * xi).cosh() * (sb * eta).cosh() / (PI * params.gamma().exp())).sqrt();
    prefactor * ktilde_kernel(xi, eta, params)
}

/// Kernel of the Kac-Gutzwiller transfer operator, `(λ e^β)^{-1/2} K_β`.
pub fn g_kernel(beta: Beta, xi: f64, eta: f64, params: &ModelParams) -> Complex {
    let pref = (params.lambda() * beta.value().exp()).sqrt().inv();
    pref * kac_kernel(beta, xi, eta, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lambda_limit() {
        for &(x, y) in &[(0.0, 0.0), (0.3, -0.7), (1.1, 0.4)] {
            let s = mehler_sides(1e-12, x, y, 1).unwrap();
            let expect = 2f64.sqrt() * (-PI * (x * x + y * y)).exp();
            assert!((s.lhs - expect).abs() < 1e-14);
            assert!((s.lhs - s.rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn origin_value() {
        for &l in &[0.2, 0.5, 0.9] {
            let s = mehler_sides(l, 0.0, 0.0, 5).unwrap();
            assert!((s.rhs - (2.0 / (1.0 - l * l)).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn partial_sum_converges() {
        let s = mehler_sides(0.5, 0.3, -0.2, 80).unwrap();
        assert!((s.lhs - s.rhs).abs() < 1e-12);
        assert!((s.rhs - s.rhs_rescaled).abs() < 1e-13);
    }

    #[test]
    fn identity_on_grid() {
        let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
        for &l in &[0.2, 0.5, 0.8] {
            for &x in &grid {
                for &y in &grid {
                    let s = mehler_adaptive(l, x, y).unwrap();
                    assert!((s.lhs - s.rhs).abs() < 1e-10, "λ={l} x={x} y={y}");
                    assert!((s.rhs - s.rhs_rescaled).abs() <= 1e-12 * s.rhs.abs().max(1e-300));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_lambda() {
        assert!(mehler_sides(1.0, 0.0, 0.0, 3).is_err());
        assert!(mehler_sides(-0.1, 0.0, 0.0, 3).is_err());
    }

    #[test]
    fn ktilde_at_origin() {
        let p = ModelParams::new(0.5).unwrap();
        let g = p.gamma();
        assert!(
            (ktilde_kernel(0.0, 0.0, &p) - (1.0 / g.sinh()).sqrt() * (g / 2.0).exp()).abs() < 1e-15
        );
    }

    #[test]
    fn kac_kernel_symmetric_and_beta_zero() {
        let p = ModelParams::new(0.5).unwrap();
        let b = Beta::real(1.3);
        let a = kac_kernel(b, 0.7, -0.4, &p);
        let c = kac_kernel(b, -0.4, 0.7, &p);
        assert!((a - c).norm() < 1e-15);
        let g = p.gamma();
        let k0 = kac_kernel(Beta::real(0.0), 0.7, -0.4, &p);
        let e = (PI * g.sinh()).powf(-0.5) * gaussian_exponent(g, 0.7, -0.4).exp();
        assert!((k0.re - e).abs() < 1e-15 && k0.im == 0.0);
    }

    #[test]
    fn factorization_pointwise() {
        for &l in &[0.3, 0.5, 0.8] {
            let p = ModelParams::new(l).unwrap();
            for &b in &[0.0, 0.4, 1.0, 3.0] {
                for &xi in &[-2.0, -0.3, 0.0, 1.1] {
                    for &eta in &[-1.0, 0.0, 0.5, 2.2] {
                        let k = kac_kernel(Beta::real(b), xi, eta, &p);
                        let f = kac_kernel_factored(Beta::real(b), xi, eta, &p);
                        assert!((k - f).norm() <= 1e-12 * k.norm().max(1e-300));
                    }
                }
            }
        }
    }

    #[test]
    fn negative_beta_uses_cosine() {
        let p = ModelParams::new(0.5).unwrap();
        // cos(2·1.7) < 0 while cos(0) = 1, so the kernel is purely imaginary
        let k = kac_kernel(Beta::real(-4.0), 1.7, 0.0, &p);
        assert!(k.re.abs() < 1e-15 && k.im.abs() > 0.0);
    }
}
