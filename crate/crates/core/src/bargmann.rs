//! The Segal-Bargmann transform
//! `Bf(z) = 2^{1/4} ∫ f(ξ) exp(2πξz - πξ² - πz²/2) dξ`,
//! the Fock basis `ζ_k(z) = sqrt(π^k/k!) z^k = B h_k`, and the operators that
//! conjugate the Kac-Gutzwiller operator to `L_β`.
//!
//! Coefficient space is the working representation. The quadrature versions
//! of the integrals exist to check the closed forms.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::kacg::{hermite_functions, mehler_sides, GaussHermiteRule, GaussLaguerreRule};
use crate::model::{Beta, ModelParams};
use crate::numeric::ln_factorial;
use crate::report::Check;
use crate::ruelle::apply_ruelle_pointwise;
use crate::{Complex, Error, Result};

const TWO_POW_QUARTER: f64 = 1.189_207_115_002_721;
/// Quadrature size for transforms of finite Hermite combinations.
pub const DEFAULT_TRANSFORM_POINTS: usize = 200;
const MAX_TRANSFORM_POINTS: usize = 1600;
const TAIL_TOL: f64 = 1e-14;

/// `F = Σ c_k ζ_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockCoefficients(pub Vec<Complex>);

/// `f = Σ a_k h_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteCoefficients(pub Vec<Complex>);

/// `ζ_k(z)`.
pub fn zeta_k(k: usize, z: Complex) -> Complex {
    let ln_mag = 0.5 * (k as f64 * PI.ln() - ln_factorial(k));
    ln_mag.exp() * z.powu(k as u32)
}

impl FockCoefficients {
    pub fn eval(&self, z: Complex) -> Complex {
        let mut basis = Complex::new(1.0, 0.0);
        let mut acc = Complex::new(0.0, 0.0);
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                basis *= z * (PI / k as f64).sqrt();
            }
            acc += c * basis;
        }
        acc
    }

    /// `‖F‖² = Σ |c_k|²`.
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }
}

impl HermiteCoefficients {
    pub fn eval(&self, x: f64) -> Complex {
        if self.0.is_empty() {
            return Complex::new(0.0, 0.0);
        }
        let h = hermite_functions(self.0.len() - 1, x);
        self.0.iter().zip(&h).map(|(a, h)| a * h).sum()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
}

/// `B f` through `B h_k = ζ_k`.
pub fn bargmann_coefficients(f: &HermiteCoefficients) -> FockCoefficients {
    FockCoefficients(f.0.clone())
}

/// `(Bf)(z)` by the coefficient route.
pub fn bargmann_transform(f: &HermiteCoefficients, z: Complex) -> Complex {
    bargmann_coefficients(f).eval(z)
}

/// `(Bf)(z)` by quadrature of the defining integral for a sampled function.
///
/// The rule is doubled until the outermost nodes carry less than `1e-14` of
/// the integral; integrands growing like `e^{πξ²}` or faster never get
/// there and are rejected.
pub fn bargmann_transform_quadrature<F>(f: F, z: Complex) -> Result<Complex>
where
    F: Fn(f64) -> Complex,
{
    integrate_monitored(|xi| f(xi) * kernel(xi, z))
}

fn kernel(xi: f64, z: Complex) -> Complex {
    TWO_POW_QUARTER * (2.0 * PI * xi * z - PI * xi * xi - PI * z * z / 2.0).exp()
}

fn integrate_monitored<G: Fn(f64) -> Complex>(g: G) -> Result<Complex> {
    let mut q = DEFAULT_TRANSFORM_POINTS;
    loop {
        let rule = GaussHermiteRule::cached(q);
        let terms: Vec<Complex> = rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .map(|(x, w)| g(*x) * *w)
            .collect();
        let total: Complex = terms.iter().sum();
        let edge = (q / 20).max(1);
        let tail: f64 = terms[..edge]
            .iter()
            .chain(&terms[q - edge..])
            .map(|t| t.norm())
            .sum();
        let scale = total
            .norm()
            .max(terms.iter().map(|t| t.norm()).fold(0.0, f64::max));
        if !total.is_finite() {
            return Err(Error::Domain(
                "transform integrand is not finite on the quadrature nodes".into(),
            ));
        }
        if tail <= TAIL_TOL * scale.max(f64::MIN_POSITIVE) {
            return Ok(total);
        }
        if q >= MAX_TRANSFORM_POINTS {
            return Err(Error::Domain(format!(
                "transform integral does not converge: tail {tail:e} against {scale:e} at {q} nodes"
            )));
        }
        q *= 2;
    }
}

/// `(M_λ F)(z) = 2√λ F(λz)`.
pub fn m_lambda_apply<F: Fn(Complex) -> Complex>(
    f: F,
    z: Complex,
    params: &ModelParams,
) -> Complex {
    let l = params.lambda();
    2.0 * l.sqrt() * f(z * l)
}

/// `M_λ` on coefficients: `ζ_k ↦ 2λ^{k+1/2} ζ_k`.
pub fn m_lambda_coefficients(f: &FockCoefficients, params: &ModelParams) -> FockCoefficients {
    let l = params.lambda();
    FockCoefficients(
        f.0.iter()
            .enumerate()
            .map(|(k, c)| c * 2.0 * l.powf(k as f64 + 0.5))
            .collect(),
    )
}

/// `C_s F(z) = ½ e^{s²/8π} (e^{sz/2} F(z + s/2π) + e^{-sz/2} F(z - s/2π))`.
pub fn c_s_apply<F: Fn(Complex) -> Complex>(f: F, z: Complex, s: f64) -> Complex {
    let shift = s / (2.0 * PI);
    0.5 * (s * s / (8.0 * PI)).exp()
        * ((s * z / 2.0).exp() * f(z + shift) + (-s * z / 2.0).exp() * f(z - shift))
}

/// `(C_s ∘ M_λ F)(z) = √λ e^{s²/8π} (e^{sz/2} F(λz + λs/2π) + e^{-sz/2} F(λz - λs/2π))`.
pub fn cs_m_lambda_apply<F: Fn(Complex) -> Complex>(
    f: F,
    z: Complex,
    s: Complex,
    params: &ModelParams,
) -> Complex {
    let l = params.lambda();
    let shift = l * s / (2.0 * PI);
    l.sqrt()
        * (s * s / (8.0 * PI)).exp()
        * ((s * z / 2.0).exp() * f(l * z + shift) + (-s * z / 2.0).exp() * f(l * z - shift))
}

/// `(ν_{1/α} ∘ C_s ∘ M_λ ∘ ν_α F)(z)` with `s = 2√(πβ)`, `α = √(π/β)`,
/// where `(ν_α F)(z) = F(αz)`. Equals `√λ e^{β/2} (L_β F)(z)`.
pub fn conjugated_ruelle_apply<F: Fn(Complex) -> Complex>(
    f: F,
    z: Complex,
    beta: Beta,
    params: &ModelParams,
) -> Result<Complex> {
    let b = beta.value();
    if b == Complex::new(0.0, 0.0) {
        return Err(Error::Domain("the rescaling needs β ≠ 0".into()));
    }
    let s = 2.0 * (PI * b).sqrt();
    let alpha = (PI / b).sqrt();
    let scaled = |w: Complex| f(alpha * w);
    Ok(cs_m_lambda_apply(scaled, z / alpha, s, params))
}

/// The eigenfunction of `L_β` attached to a Hermite-basis eigenvector `φ` of
/// the quadrature Kac-Gutzwiller matrix:
/// `F(z) = 2^{1/4} ∫ sqrt(cosh(2√(πβ)ξ)) φ(ξ) exp(2√(πβ)ξz - πξ² - βz²/2) dξ`.
pub fn connection_forward(
    f: &HermiteCoefficients,
    beta: Beta,
    z: Complex,
    _params: &ModelParams,
) -> Result<Complex> {
    if !beta.is_real() || beta.value().re < 0.0 {
        return Err(Error::UnsupportedDomain(format!(
            "the eigenfunction connection needs real β ≥ 0, got {}",
            beta.value()
        )));
    }
    let b = beta.value().re;
    let a = 2.0 * (PI * b).sqrt();
    integrate_monitored(|xi| {
        let g = (a * xi).cosh().sqrt() * f.eval(xi);
        g * TWO_POW_QUARTER * (a * xi * z - PI * xi * xi - b * z * z / 2.0).exp()
    })
}

/// `‖F‖² = ∫_ℂ |F(z)|² e^{-π|z|²} dA(z)` by Gauss-Laguerre in `u = π|z|²` and the
/// trapezoid rule in the angle. Exact for polynomials of degree below `points`.
pub fn fock_norm_sq_quadrature<F: Fn(Complex) -> Complex>(f: F, points: usize) -> f64 {
    let radial = GaussLaguerreRule::new(points);
    let angles = 2 * points + 2;
    radial.integrate(|u| {
        let r = (u / PI).sqrt();
        let mean: f64 = (0..angles)
            .map(|j| f(Complex::from_polar(r, 2.0 * PI * j as f64 / angles as f64)).norm_sqr())
            .sum::<f64>()
            / angles as f64;
        mean
    })
}

/// Matrix of `B ∘ K″ ∘ B^{-1}` in the basis `ζ_k`, with `K″` given by its
/// closed-form Mehler kernel `2√λ Σ λ^k h_k(x) h_k(y)` and the double
/// integral done by quadrature.
pub fn k_double_prime_fock_matrix(
    dim: usize,
    q: usize,
    params: &ModelParams,
) -> Result<DMatrix<f64>> {
    let l = params.lambda();
    let rule = GaussHermiteRule::cached(q);
    let nodes = rule.nodes();
    let weights = rule.weights();
    let h: Vec<Vec<f64>> = nodes
        .iter()
        .map(|x| hermite_functions(dim.max(1) - 1, *x))
        .collect();
    let mut kern = DMatrix::<f64>::zeros(nodes.len(), nodes.len());
    for (i, x) in nodes.iter().enumerate() {
        for (j, y) in nodes.iter().enumerate() {
            kern[(i, j)] =
                2.0 * l.sqrt() * mehler_sides(l, *x, *y, 1)?.rhs * weights[i] * weights[j];
        }
    }
    let mut out = DMatrix::<f64>::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            let mut s = 0.0;
            for i in 0..nodes.len() {
                if h[i][r] == 0.0 {
                    continue;
                }
                let mut inner = 0.0;
                for j in 0..nodes.len() {
                    inner += kern[(i, j)] * h[j][c];
                }
                s += h[i][r] * inner;
            }
            out[(r, c)] = s;
        }
    }
    Ok(out)
}

fn grid_points() -> Vec<Complex> {
    let mut pts = Vec::new();
    for &re in &[-0.6, 0.0, 0.45] {
        for &im in &[-0.5, 0.0, 0.35] {
            pts.push(Complex::new(re, im));
        }
    }
    pts
}

/// Test function for index `j`: `h_j` plus a lower-degree admixture.
fn test_function(j: usize) -> HermiteCoefficients {
    let mut a = vec![Complex::new(0.0, 0.0); j + 1];
    a[j] = Complex::new(1.0, 0.0);
    if j >= 1 {
        a[j - 1] = Complex::new(0.0, 0.5);
    }
    if j >= 2 {
        a[0] = Complex::new(-0.25, 0.0);
    }
    HermiteCoefficients(a)
}

/// Both sides of
/// `B τ_r B^{-1} F(z) = e^{-πr²/2} e^{πrz} F(z - r)` and of
/// `B m_{e^{sx}} B^{-1} F(z) = e^{s²/8π} e^{sz/2} F(z + s/2π)` and of the
/// `C_s` form of `B m_{cosh(sx)} B^{-1}`, left sides by quadrature, for the
/// test functions indexed by `seed`.
pub fn verify_operator_identities(seed: &[usize], tol: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let shifts = [0.0, 0.5, -0.3];
    let rates = [0.0, 1.0, -0.7];
    for &j in seed {
        let f = test_function(j);
        let big_f = bargmann_coefficients(&f);
        for &r in &shifts {
            let mut worst = (0.0, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
            for z in grid_points() {
                let lhs = bargmann_transform_quadrature(|x| f.eval(x - r), z)?;
                let rhs = (-PI * r * r / 2.0 + PI * r * z).exp() * big_f.eval(z - r);
                let d = (lhs - rhs).norm();
                if d >= worst.0 {
                    worst = (d, lhs, rhs);
                }
            }
            checks.push(Check::new(
                format!("bargmann_translation[f={j},r={r}]"),
                worst.1,
                worst.2,
                tol,
            ));
        }
        for &s in &rates {
            let mut worst_exp = (0.0, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
            let mut worst_cosh = worst_exp;
            for z in grid_points() {
                let lhs = bargmann_transform_quadrature(|x| (s * x).exp() * f.eval(x), z)?;
                let rhs = (s * s / (8.0 * PI) + s * z / 2.0).exp() * big_f.eval(z + s / (2.0 * PI));
                let d = (lhs - rhs).norm();
                if d >= worst_exp.0 {
                    worst_exp = (d, lhs, rhs);
                }
                let lhs_c = bargmann_transform_quadrature(|x| (s * x).cosh() * f.eval(x), z)?;
                let rhs_c = c_s_apply(|w| big_f.eval(w), z, s);
                let dc = (lhs_c - rhs_c).norm();
                if dc >= worst_cosh.0 {
                    worst_cosh = (dc, lhs_c, rhs_c);
                }
            }
            checks.push(Check::new(
                format!("bargmann_exp_multiplier[f={j},s={s}]"),
                worst_exp.1,
                worst_exp.2,
                tol,
            ));
            checks.push(Check::new(
                format!("bargmann_cosh_multiplier[f={j},s={s}]"),
                worst_cosh.1,
                worst_cosh.2,
                tol,
            ));
        }
    }
    Ok(checks)
}

/// `(ν_{1/α} C_s M_λ ν_α F)(z)` against `√λ e^{β/2} (L_β F)(z)` on polynomials.
pub fn verify_ruelle_conjugacy(beta: Beta, params: &ModelParams, tol: f64) -> Result<Vec<Check>> {
    let polys: [&[f64]; 3] = [&[1.0], &[0.5, -1.0, 0.25], &[0.0, 1.0, 0.0, -0.3, 0.1]];
    let mut checks = Vec::new();
    let scale = params.lambda().sqrt() * (beta.value() / 2.0).exp();
    for (pi, coeffs) in polys.iter().enumerate() {
        let poly = |w: Complex| {
            coeffs
                .iter()
                .rev()
                .fold(Complex::new(0.0, 0.0), |acc, c| acc * w + c)
        };
        let mut worst = (0.0, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
        for z in grid_points() {
            let lhs = conjugated_ruelle_apply(poly, z, beta, params)?;
            let rhs = scale * apply_ruelle_pointwise(beta, poly, z, params);
            let d = (lhs - rhs).norm();
            if d >= worst.0 {
                worst = (d, lhs, rhs);
            }
        }
        checks.push(Check::new(
            format!("cs_composite_vs_ruelle[p={pi},beta={}]", beta.value()),
            worst.1,
            worst.2,
            tol,
        ));
    }
    Ok(checks)
}
