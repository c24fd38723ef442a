//! Gaussian quadrature rules.
//!
//! [`GaussHermiteRule`] integrates `∫_ℝ g(x) dx` for integrands that decay like
//! `e^{-2πx²}` (products of two Hermite functions times something smooth).
//! Nodes are the zeros of `h_Q`; the weights already include the inverse
//! Gaussian, so `integrate` takes the bare integrand.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

#[derive(Clone, Debug)]
pub struct GaussHermiteRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussHermiteRule {
    /// `q`-point rule, `q ≥ 1`.
    pub fn new(q: usize) -> Self {
        assert!(q >= 1, "quadrature size must be positive");
        let (t, w) = hermite_nodes_unweighted(q);
        // t is the standard-weight variable e^{-t²}; x = t / sqrt(2π)
        let s = (2.0 * PI).sqrt();
        Self {
            nodes: t.iter().map(|t| t / s).collect(),
            weights: w.iter().map(|w| w / s).collect(),
        }
    }

    /// Shared rule of size `q`, built once per process.
    pub fn cached(q: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussHermiteRule>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("quadrature cache poisoned");
        guard
            .entry(q)
            .or_insert_with(|| Arc::new(GaussHermiteRule::new(q)))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .sum()
    }
}

/// Zeros of the degree-`n` Hermite polynomial (weight `e^{-t²}`) and the
/// Christoffel weights multiplied by `e^{t²}`, sorted ascending.
///
/// Each positive zero is isolated by Sturm-sequence bisection on the Jacobi
/// matrix and polished by Newton steps on the orthonormal recurrence, which
/// is rescaled on the fly so that the weights survive for large `n`.
fn hermite_nodes_unweighted(n: usize) -> (Vec<f64>, Vec<f64>) {
    let nf = n as f64;
    let m = n.div_ceil(2);
    let upper = (2.0 * nf + 1.0).sqrt() + 1.0;
    let mut roots = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for i in 0..m {
        // the (i+1)-th largest eigenvalue has n - 1 - i eigenvalues below it
        let target = n - 1 - i;
        let (mut lo, mut hi) = (0.0f64, upper);
        if n % 2 == 1 && i == m - 1 {
            hi = 0.0;
        }
        while hi - lo > 1e-14 * hi.max(1.0) {
            let mid = 0.5 * (lo + hi);
            if count_below(n, mid) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut z = 0.5 * (lo + hi);
        for _ in 0..3 {
            let (pn, pm1, _) = orthonormal_pair(n, z);
            if pm1 == 0.0 {
                break;
            }
            let dz = pn / ((2.0 * nf).sqrt() * pm1);
            if dz.abs() > (hi - lo).max(1e-15) * 4.0 {
                break;
            }
            z -= dz;
        }
        let (_, pm1, log_scale) = orthonormal_pair(n, z);
        let log_pm1 = pm1.abs().ln() + log_scale;
        roots.push(z);
        // w·e^{t²} = e^{t²} / (n p_{n-1}(t)²)
        weights.push((z * z - nf.ln() - 2.0 * log_pm1).exp());
    }
    let mut t = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for i in 0..m {
        t.push(-roots[i]);
        w.push(weights[i]);
    }
    let start = if n % 2 == 1 { m - 1 } else { m };
    for i in (0..start).rev() {
        t.push(roots[i]);
        w.push(weights[i]);
    }
    if n % 2 == 1 {
        t[m - 1] = 0.0;
    }
    (t, w)
}

/// Number of eigenvalues below `x` of the Hermite Jacobi matrix
/// (zero diagonal, off-diagonal `sqrt(j/2)`).
fn count_below(n: usize, x: f64) -> usize {
    let mut count = 0;
    let mut q = -x;
    for j in 0..n {
        if j > 0 {
            let b2 = j as f64 / 2.0;
            q = -x - b2 / q;
        }
        if q == 0.0 {
            q = -f64::EPSILON * (1.0 + x.abs());
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// `(p_n(t), p_{n-1}(t), ln scale)` for the orthonormal Hermite polynomials,
/// where the true values are the returned ones times `exp(ln scale)`.
fn orthonormal_pair(n: usize, t: f64) -> (f64, f64, f64) {
    let mut p_prev = 0.0;
    let mut p = PI.powf(-0.25);
    let mut log_scale = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let next = t * (2.0 / jf).sqrt() * p - ((jf - 1.0) / jf).sqrt() * p_prev;
        p_prev = p;
        p = next;
        if p.abs() > 1e150 {
            p *= 1e-150;
            p_prev *= 1e-150;
            log_scale += 150.0 * std::f64::consts::LN_10;
        }
    }
    (p, p_prev, log_scale)
}

/// Gauss-Laguerre rule for `∫_0^∞ e^{-u} f(u) du` (Golub-Welsch).
#[derive(Clone, Debug)]
pub struct GaussLaguerreRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLaguerreRule {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut jacobi = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            jacobi[(j, j)] = 2.0 * j as f64 + 1.0;
            if j + 1 < n {
                jacobi[(j, j + 1)] = (j + 1) as f64;
                jacobi[(j + 1, j)] = (j + 1) as f64;
            }
        }
        let eig = SymmetricEigen::new(jacobi);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| (eig.eigenvalues[i], eig.eigenvectors[(0, i)].powi(2)))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(u, w)| w * f(*u))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_moments() {
        let rule = GaussHermiteRule::new(40);
        // ∫ e^{-2πx²} dx = 1/√2 ; ∫ x² e^{-2πx²} dx = 1/(4π√2)
        let m0 = rule.integrate(|x| (-2.0 * PI * x * x).exp());
        let m2 = rule.integrate(|x| x * x * (-2.0 * PI * x * x).exp());
        assert!((m0 - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((m2 - 1.0 / (4.0 * PI * 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn nodes_symmetric_and_sorted() {
        for q in [1usize, 2, 7, 64, 321, 960] {
            let rule = GaussHermiteRule::new(q);
            assert_eq!(rule.len(), q);
            for w in rule.nodes().windows(2) {
                assert!(w[1] > w[0], "q={q}");
            }
            for i in 0..q {
                assert!((rule.nodes()[i] + rule.nodes()[q - 1 - i]).abs() < 1e-12);
            }
            let m0 = rule.integrate(|x| (-2.0 * PI * x * x).exp());
            assert!((m0 - 0.5f64.sqrt()).abs() < 1e-13, "q={q}: {m0}");
        }
    }

    #[test]
    fn shifted_gaussian_exact() {
        // ∫ e^{-2π(x-0.8)²} cos(3x) dx = e^{-9/(8π)} cos(2.4) / √2
        let rule = GaussHermiteRule::new(120);
        let v = rule.integrate(|x| (-2.0 * PI * (x - 0.8).powi(2)).exp() * (3.0 * x).cos());
        let e = (-9.0 / (8.0 * PI)).exp() * 2.4f64.cos() / 2f64.sqrt();
        assert!((v - e).abs() < 1e-14);
    }

    #[test]
    fn laguerre_moments() {
        let rule = GaussLaguerreRule::new(20);
        // ∫ e^{-u} u^k du = k!
        for k in 0..10 {
            let v = rule.integrate(|u| u.powi(k));
            let f: f64 = (1..=k).map(f64::from).product();
            assert!((v - f).abs() < 1e-10 * f, "k={k}");
        }
    }
}
