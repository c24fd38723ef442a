//! The Ruelle transfer operator
//! `L_β g(z) = e^{βz} g(λ + λz) + e^{-βz} g(-λ + λz)`
//! as a matrix on Taylor coefficients.
//!
//! Column `k` holds the Taylor coefficients of `L_β z^k`; row `m` is the output
//! degree. The disc `D_r` on which `L_β` is nuclear needs `r > λ/(1-λ)`, but
//! only the coefficients enter any computation here.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::kacg::laguerre_sequence;
use crate::model::{Beta, ModelParams};
use crate::{Complex, Error, Result};

/// Which basis the rows and columns of an [`OperatorMatrix`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Monomials `z^k`.
    Monomial,
    /// Even monomials `z^{2j}` only.
    EvenMonomial,
    /// Odd monomials `z^{2j+1}` only.
    OddMonomial,
    /// Hermite functions `h_k(x)`.
    Hermite,
}

/// Truncated operator matrix together with the data it was built from.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub basis: Basis,
    pub beta: Beta,
    pub params: ModelParams,
    pub entries: DMatrix<Complex>,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> Complex {
        self.entries.trace()
    }
}

/// Even and odd parts of `L_β`.
#[derive(Clone, Debug)]
pub struct ParityPair {
    pub even: OperatorMatrix,
    pub odd: OperatorMatrix,
}

/// Entry `(m, k)`:
/// `λ^k (1 + (-1)^{m+k}) Σ_{i ≤ min(k,m)} C(k,i) β^{m-i} / (m-i)!`.
///
/// The binomial sum is the generalized Laguerre polynomial `L^{(k-m)}_m(-β)`,
/// which for `m > k` equals `β^{m-k} k!/m! · L^{(m-k)}_k(-β)`. Evaluating it by
/// recurrence instead of term by term keeps full accuracy for `β < 0`, where
/// the explicit sum cancels catastrophically.
pub fn ruelle_matrix(beta: Beta, dim: usize, params: &ModelParams) -> Result<OperatorMatrix> {
    if dim == 0 {
        return Err(Error::Domain(
            "truncation dimension must be at least 1".into(),
        ));
    }
    let b = beta.value();
    let lambda = params.lambda();
    let lam_pow: Vec<f64> = (0..dim).map(|k| lambda.powi(k as i32)).collect();
    let mut entries = DMatrix::<Complex>::zeros(dim, dim);
    for gap in (0..dim).step_by(2) {
        let lag = laguerre_sequence(dim - 1 - gap, gap as f64, -b);
        for (j, l) in lag.iter().enumerate() {
            // upper triangle (k = j + gap ≥ m = j)
            entries[(j, j + gap)] = 2.0 * lam_pow[j + gap] * l;
            if gap > 0 {
                // lower triangle (m = j + gap > k = j)
                let mut w = Complex::new(1.0, 0.0);
                for i in 1..=gap {
                    w *= b / (j + i) as f64;
                }
                entries[(j + gap, j)] = 2.0 * lam_pow[j] * w * l;
            }
        }
    }
    Ok(OperatorMatrix {
        basis: Basis::Monomial,
        beta,
        params: *params,
        entries,
    })
}

/// `e^{βz} f(λ + λz) + e^{-βz} f(-λ + λz)`.
pub fn apply_ruelle_pointwise<F>(beta: Beta, f: F, z: Complex, params: &ModelParams) -> Complex
where
    F: Fn(Complex) -> Complex,
{
    let b = beta.value();
    let l = params.lambda();
    (b * z).exp() * f(l + l * z) + (-b * z).exp() * f(-l + l * z)
}

/// Restrictions of `L_β` to even and to odd monomials. Since entries with odd
/// `m + k` vanish, these are the diagonal blocks of [`ruelle_matrix`] after
/// sorting indices by parity.
pub fn parity_matrices(beta: Beta, dim: usize, params: &ModelParams) -> Result<ParityPair> {
    if dim < 2 {
        return Err(Error::Domain(
            "parity split needs dimension at least 2".into(),
        ));
    }
    let full = ruelle_matrix(beta, dim, params)?;
    Ok(split_parity(&full))
}

pub(crate) fn split_parity(full: &OperatorMatrix) -> ParityPair {
    let block = |offset: usize, basis: Basis| {
        let idx: Vec<usize> = (offset..full.dim()).step_by(2).collect();
        let entries = DMatrix::from_fn(idx.len(), idx.len(), |r, c| full.entries[(idx[r], idx[c])]);
        OperatorMatrix {
            basis,
            beta: full.beta,
            params: full.params,
            entries,
        }
    };
    ParityPair {
        even: block(0, Basis::EvenMonomial),
        odd: block(1, Basis::OddMonomial),
    }
}

/// `tr(A^n)`. Small powers use matrix products (the last one only through its
/// diagonal); larger powers go through the eigenvalues.
pub fn truncated_trace_power(matrix: &OperatorMatrix, n: usize) -> Result<Complex> {
    if n == 0 {
        return Err(Error::Domain("power must be at least 1".into()));
    }
    let a = &matrix.entries;
    if n == 1 {
        return Ok(a.trace());
    }
    if n <= 6 {
        let half = n / 2;
        let mut left = a.clone();
        for _ in 1..half {
            left = &left * a;
        }
        let right = if n - half == half {
            left.clone()
        } else {
            &left * a
        };
        // tr(XY) = Σ_ij X_ij Y_ji
        let dim = a.nrows();
        let mut acc = Complex::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                acc += left[(i, j)] * right[(j, i)];
            }
        }
        return Ok(acc);
    }
    let spec = crate::spectral::eigenvalues(matrix)?;
    Ok(spec.eigenvalues.iter().map(|r| r.powi(n as i32)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::binomial;
    use proptest::prelude::*;

    /// Direct evaluation of the Taylor-coefficient sum, for moderate sizes.
    fn explicit_entry(b: Complex, lambda: f64, m: usize, k: usize) -> (Complex, f64) {
        if (m + k) % 2 == 1 {
            return (Complex::new(0.0, 0.0), 0.0);
        }
        let mut sum = Complex::new(0.0, 0.0);
        let mut mass = 0.0;
        for i in 0..=k.min(m) {
            let fact: f64 = (1..=(m - i)).map(|v| v as f64).product();
            let term = binomial(k, i) * b.powi((m - i) as i32) / fact;
            sum += term;
            mass += term.norm();
        }
        let scale = 2.0 * lambda.powi(k as i32);
        (scale * sum, scale * mass)
    }

    /// Taylor coefficients of `g` scaled by `r^m`, from the trapezoid rule on
    /// the circle `|z| = r`.
    fn cauchy_scaled_coefficients<G: Fn(Complex) -> Complex>(
        g: G,
        r: f64,
        count: usize,
    ) -> Vec<Complex> {
        let pts = 256;
        let samples: Vec<Complex> = (0..pts)
            .map(|j| {
                g(Complex::from_polar(
                    r,
                    2.0 * std::f64::consts::PI * j as f64 / pts as f64,
                ))
            })
            .collect();
        (0..count)
            .map(|m| {
                let mut acc = Complex::new(0.0, 0.0);
                for (j, s) in samples.iter().enumerate() {
                    let th = -2.0 * std::f64::consts::PI * (m * j) as f64 / pts as f64;
                    acc += s * Complex::from_polar(1.0, th);
                }
                acc / pts as f64
            })
            .collect()
    }

    #[test]
    fn entries_match_explicit_sum() {
        let p = ModelParams::new(0.45).unwrap();
        for &b in &[
            Complex::new(0.0, 0.0),
            Complex::new(1.7, 0.0),
            Complex::new(-2.2, 0.0),
            Complex::new(0.4, 1.3),
        ] {
            let m = ruelle_matrix(Beta::new(b).unwrap(), 24, &p).unwrap();
            for r in 0..24 {
                for c in 0..24 {
                    let (e, mass) = explicit_entry(b, 0.45, r, c);
                    let got = m.entries[(r, c)];
                    // the oracle itself loses digits in proportion to its term mass
                    let tol = 1e-12 * e.norm() + 1e-14 * mass;
                    assert!((got - e).norm() <= tol, "β={b} ({r},{c}): {got} vs {e}");
                }
            }
        }
    }

    #[test]
    fn structural_examples() {
        let p = ModelParams::new(0.3).unwrap();
        let m = ruelle_matrix(Beta::real(2.5), 30, &p).unwrap();
        assert!((m.entries[(0, 0)] - 2.0).norm() < 1e-15);
        let z = ruelle_matrix(Beta::real(0.0), 30, &p).unwrap();
        for r in 0..30 {
            for c in 0..30 {
                let expect = if r <= c && (r + c) % 2 == 0 {
                    2.0 * 0.3f64.powi(c as i32) * binomial(c, r)
                } else {
                    0.0
                };
                assert!((z.entries[(r, c)].re - expect).abs() <= 1e-14 * expect.max(1e-300));
                assert_eq!(z.entries[(r, c)].im, 0.0);
            }
        }
        assert!(ruelle_matrix(Beta::real(1.0), 0, &p).is_err());
    }

    #[test]
    fn negative_beta_entry_against_high_precision() {
        // 50-digit value of 2 λ^k Σ_i C(k,i) β^{m-i}/(m-i)! at β = -40, λ = 0.3
        let p = ModelParams::new(0.3).unwrap();
        let m = ruelle_matrix(Beta::real(-40.0), 81, &p).unwrap();
        let cases = [
            ((60usize, 60usize), 2.911_923_627_651_404_9e-24),
            ((80, 40), -1.281_597_873_462_897_8e-17),
            ((30, 70), 1.416_489_202_162_953_2e-27),
        ];
        for ((r, c), expect) in cases {
            let got = m.entries[(r, c)].re;
            assert!(
                ((got - expect) / expect).abs() < 1e-10,
                "({r},{c}): {got} vs {expect}"
            );
        }
    }

    #[test]
    fn pointwise_examples() {
        let p = ModelParams::new(0.37).unwrap();
        let z = Complex::new(0.3, -0.2);
        let b = Beta::real(1.4);
        let one = apply_ruelle_pointwise(b, |_| Complex::new(1.0, 0.0), z, &p);
        assert!((one - 2.0 * (1.4 * z).cosh()).norm() < 1e-14);
        let lin = apply_ruelle_pointwise(Beta::real(0.0), |w| w, z, &p);
        assert!((lin - 2.0 * 0.37 * z).norm() < 1e-15);

        let half = ModelParams::new(0.5).unwrap();
        for &bv in &[0.3, 1.0, -2.0] {
            let bb = Beta::real(bv);
            let f = |w: Complex| (2.0 * bv * w).sinh();
            for &zz in &[Complex::new(0.2, 0.0), Complex::new(-0.4, 0.7)] {
                let lhs = apply_ruelle_pointwise(bb, f, zz, &half);
                assert!((lhs - bv.exp() * f(zz)).norm() < 1e-13 * lhs.norm().max(1.0));
            }
        }
    }

    #[test]
    fn columns_match_pointwise_action() {
        let n = 60;
        let r = 0.5;
        for &(lam, b) in &[
            (0.4, Complex::new(1.2, 0.0)),
            (0.6, Complex::new(-2.0, 0.5)),
        ] {
            let p = ModelParams::new(lam).unwrap();
            let beta = Beta::new(b).unwrap();
            let m = ruelle_matrix(beta, n, &p).unwrap();
            for k in 0..n - 10 {
                let coeffs = cauchy_scaled_coefficients(
                    |z| apply_ruelle_pointwise(beta, |w| w.powi(k as i32), z, &p),
                    r,
                    n - 10,
                );
                for (row, c) in coeffs.iter().enumerate() {
                    let scaled = m.entries[(row, k)] * r.powi(row as i32);
                    assert!((scaled - c).norm() < 1e-9, "k={k} row={row}");
                }
            }
        }
    }

    #[test]
    fn sinh_eigenvector_at_half() {
        let n = 60;
        let p = ModelParams::new(0.5).unwrap();
        for &b in &[-3.0, -0.5, 0.7, 3.0] {
            let m = ruelle_matrix(Beta::real(b), n, &p).unwrap();
            let mut v = nalgebra::DVector::<Complex>::zeros(n);
            let mut c = 1.0;
            for k in 0..n {
                if k > 0 {
                    c *= 2.0 * b / k as f64;
                }
                if k % 2 == 1 {
                    v[k] = Complex::new(c, 0.0);
                }
            }
            let w = &m.entries * &v;
            for k in 0..n - 10 {
                assert!((w[k] - b.exp() * v[k]).norm() < 1e-8, "β={b} k={k}");
            }
        }
    }

    #[test]
    fn parity_blocks() {
        let p = ModelParams::new(0.4).unwrap();
        let pair = parity_matrices(Beta::real(2.0), 11, &p).unwrap();
        assert_eq!(pair.even.dim(), 6);
        assert_eq!(pair.odd.dim(), 5);
        assert_eq!(pair.even.basis, Basis::EvenMonomial);
        let full = ruelle_matrix(Beta::real(2.0), 11, &p).unwrap();
        assert_eq!(pair.odd.entries[(1, 2)], full.entries[(3, 5)]);
        assert!(parity_matrices(Beta::real(2.0), 1, &p).is_err());
    }

    #[test]
    fn trace_power_examples() {
        let p = ModelParams::new(0.5).unwrap();
        let m0 = ruelle_matrix(Beta::real(0.0), 40, &p).unwrap();
        let t = truncated_trace_power(&m0, 1).unwrap();
        assert!((t.re - 2.0 * (1.0 - 0.5f64.powi(40)) / 0.5).abs() < 1e-14);

        let m1 = ruelle_matrix(Beta::real(1.0), 60, &p).unwrap();
        let t1 = truncated_trace_power(&m1, 1).unwrap();
        assert!((t1.re - 4.0 * 1f64.exp()).abs() < 1e-10);

        let q = ModelParams::new(0.3).unwrap();
        let m3 = ruelle_matrix(Beta::real(0.7), 60, &q).unwrap();
        let exact = crate::model::exact_trace_ruelle_power(3, Beta::real(0.7), &q).unwrap();
        assert!((truncated_trace_power(&m3, 3).unwrap() - exact).norm() < 1e-9);
        // product route and eigenvalue route agree
        let via_products = truncated_trace_power(&m3, 6).unwrap();
        let via_eigen = truncated_trace_power(&m3, 7).unwrap();
        let exact6 = crate::model::exact_trace_ruelle_power(6, Beta::real(0.7), &q).unwrap();
        let exact7 = crate::model::exact_trace_ruelle_power(7, Beta::real(0.7), &q).unwrap();
        assert!((via_products - exact6).norm() < 1e-9 * exact6.norm());
        assert!((via_eigen - exact7).norm() < 1e-9 * exact7.norm());
    }

    proptest! {
        #[test]
        fn parity_sparsity_and_conjugation(
            lam in 0.05f64..0.95,
            br in -5.0f64..5.0,
            bi in -3.0f64..3.0,
            n in 1usize..40,
        ) {
            let p = ModelParams::new(lam).unwrap();
            let beta = Beta::new(Complex::new(br, bi)).unwrap();
            let m = ruelle_matrix(beta, n, &p).unwrap();
            let mc = ruelle_matrix(beta.conj(), n, &p).unwrap();
            for r in 0..n {
                for c in 0..n {
                    if (r + c) % 2 == 1 {
                        prop_assert_eq!(m.entries[(r, c)], Complex::new(0.0, 0.0));
                    }
                    prop_assert_eq!(mc.entries[(r, c)], m.entries[(r, c)].conj());
                }
            }
        }
    }
}
