//! Dense eigenvalues of truncated operator matrices.

use nalgebra::linalg::balancing::balance_parlett_reinsch;
use nalgebra::{DMatrix, Schur, SymmetricEigen};
use serde::Serialize;

use crate::model::{Beta, ModelParams};
use crate::ruelle::{ruelle_matrix, OperatorMatrix};
use crate::{Complex, Error, Result};

const MAX_QR_ITERATIONS: usize = 100_000;
/// Truncation ceiling for [`spectrum_converged`].
pub const DEFAULT_N_CAP: usize = 240;
/// Number of leading eigenvalues watched by [`spectrum_converged`].
pub const WATCHED: usize = 10;

/// Eigenvalues sorted by descending modulus.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    #[serde(serialize_with = "crate::report::serialize_complex_vec")]
    pub eigenvalues: Vec<Complex>,
    /// Truncation dimension used.
    pub n: usize,
    /// `|ρ_i(N) - ρ_i(N - ΔN)|` for the leading eigenvalues; empty when no
    /// convergence run was made.
    pub convergence_estimate: Vec<f64>,
}

impl Spectrum {
    pub fn top_modulus(&self) -> f64 {
        self.eigenvalues.first().map_or(0.0, |r| r.norm())
    }

    /// Largest `|Im ρ| / |ρ_max|` over eigenvalues whose modulus exceeds
    /// `threshold · |ρ_max|`.
    pub fn max_relative_imaginary(&self, threshold: f64) -> f64 {
        let top = self.top_modulus();
        if top == 0.0 {
            return 0.0;
        }
        self.eigenvalues
            .iter()
            .filter(|r| r.norm() > threshold * top)
            .map(|r| r.im.abs() / top)
            .fold(0.0, f64::max)
    }
}

/// All eigenvalues of the matrix.
///
/// Real symmetric input goes through the symmetric solver. Otherwise the
/// matrix is split into its parity blocks when entries with odd `i + j` all
/// vanish, each block is balanced and reduced to Schur form.
pub fn eigenvalues(matrix: &OperatorMatrix) -> Result<Spectrum> {
    let mut ev = eigenvalues_of(&matrix.entries)?;
    sort_by_modulus(&mut ev);
    Ok(Spectrum {
        eigenvalues: ev,
        n: matrix.dim(),
        convergence_estimate: Vec::new(),
    })
}

/// Unsorted eigenvalues of a square complex matrix.
pub fn eigenvalues_of(a: &DMatrix<Complex>) -> Result<Vec<Complex>> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::Domain("matrix is not square".into()));
    }
    if a.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > 2 && is_checkerboard(a) {
        let mut out = Vec::with_capacity(n);
        for offset in 0..2 {
            let idx: Vec<usize> = (offset..n).step_by(2).collect();
            let block = DMatrix::from_fn(idx.len(), idx.len(), |r, c| a[(idx[r], idx[c])]);
            out.extend(dense_eigenvalues(block)?);
        }
        return Ok(out);
    }
    dense_eigenvalues(a.clone())
}

pub(crate) fn sort_by_modulus(ev: &mut [Complex]) {
    ev.sort_by(|x, y| {
        y.norm()
            .total_cmp(&x.norm())
            .then(y.re.total_cmp(&x.re))
            .then(y.im.total_cmp(&x.im))
    });
}

pub(crate) fn is_checkerboard(a: &DMatrix<Complex>) -> bool {
    let n = a.nrows();
    (0..n).all(|i| (0..n).all(|j| (i + j) % 2 == 0 || a[(i, j)] == Complex::new(0.0, 0.0)))
}

fn dense_eigenvalues(a: DMatrix<Complex>) -> Result<Vec<Complex>> {
    let n = a.nrows();
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    if a.iter().all(|v| v.im == 0.0) {
        let mut re = a.map(|v| v.re);
        if is_symmetric(&re) {
            let eig = SymmetricEigen::try_new(re, f64::EPSILON, MAX_QR_ITERATIONS).ok_or(
                Error::Solver {
                    dim: n,
                    max_iterations: MAX_QR_ITERATIONS,
                },
            )?;
            return Ok(eig
                .eigenvalues
                .iter()
                .map(|&v| Complex::new(v, 0.0))
                .collect());
        }
        balance_parlett_reinsch(&mut re);
        let schur = Schur::try_new(re, f64::EPSILON, MAX_QR_ITERATIONS).ok_or(Error::Solver {
            dim: n,
            max_iterations: MAX_QR_ITERATIONS,
        })?;
        return Ok(schur.complex_eigenvalues().iter().copied().collect());
    }
    let mut c = a;
    balance_complex(&mut c);
    let schur = Schur::try_new(c, f64::EPSILON, MAX_QR_ITERATIONS).ok_or(Error::Solver {
        dim: n,
        max_iterations: MAX_QR_ITERATIONS,
    })?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

fn is_symmetric(a: &DMatrix<f64>) -> bool {
    let n = a.nrows();
    (0..n).all(|i| (0..i).all(|j| a[(i, j)] == a[(j, i)]))
}

/// Diagonal similarity by powers of two equalizing row and column norms.
pub(crate) fn balance_complex(a: &mut DMatrix<Complex>) {
    let n = a.nrows();
    let radix = 2.0f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].norm();
                    r += a[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            while cc < r / radix {
                cc *= radix;
                f *= radix;
            }
            while cc >= r * radix {
                cc /= radix;
                f /= radix;
            }
            if (cc + r / f) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Leading eigenvalues of the Ruelle matrix, enlarging `N` by `dn` from `n0`
/// until the top [`WATCHED`] eigenvalues move by less than `tol` relative to
/// the largest modulus.
pub fn spectrum_converged(
    beta: Beta,
    params: &ModelParams,
    n0: usize,
    dn: usize,
    tol: f64,
) -> Result<Spectrum> {
    spectrum_converged_with_cap(beta, params, n0, dn, tol, DEFAULT_N_CAP)
}

pub fn spectrum_converged_with_cap(
    beta: Beta,
    params: &ModelParams,
    n0: usize,
    dn: usize,
    tol: f64,
    n_cap: usize,
) -> Result<Spectrum> {
    if n0 < WATCHED {
        return Err(Error::Domain(format!(
            "initial truncation must be at least {WATCHED}"
        )));
    }
    if dn == 0 {
        return Err(Error::Domain("truncation step must be positive".into()));
    }
    let mut prev = eigenvalues(&ruelle_matrix(beta, n0, params)?)?;
    let mut n = n0;
    loop {
        let next_n = n + dn;
        if next_n > n_cap {
            let movement = prev
                .convergence_estimate
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min);
            return Err(Error::Convergence { n_cap, movement });
        }
        let mut cur = eigenvalues(&ruelle_matrix(beta, next_n, params)?)?;
        let scale = cur.top_modulus().max(f64::MIN_POSITIVE);
        let moves: Vec<f64> = (0..WATCHED.min(prev.eigenvalues.len()))
            .map(|i| (cur.eigenvalues[i] - prev.eigenvalues[i]).norm())
            .collect();
        let worst = moves.iter().cloned().fold(0.0, f64::max);
        cur.convergence_estimate = moves;
        if worst <= tol * scale {
            return Ok(cur);
        }
        prev = cur;
        prev.convergence_estimate = vec![worst];
        n = next_n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ruelle::Basis;

    fn wrap(entries: DMatrix<Complex>) -> OperatorMatrix {
        OperatorMatrix {
            basis: Basis::Monomial,
            beta: Beta::real(0.0),
            params: ModelParams::new(0.5).unwrap(),
            entries,
        }
    }

    #[test]
    fn beta_zero_golden() {
        for &lam in &[0.3, 0.5, 0.7] {
            let p = ModelParams::new(lam).unwrap();
            let s = eigenvalues(&ruelle_matrix(Beta::real(0.0), 60, &p).unwrap()).unwrap();
            for (k, r) in s.eigenvalues.iter().enumerate() {
                let expect = 2.0 * lam.powi(k as i32);
                assert!(
                    (r - expect).norm() <= 1e-12 * expect.max(1e-300) + 1e-300,
                    "λ={lam} k={k}: {r}"
                );
            }
        }
    }

    #[test]
    fn one_by_one_and_complex() {
        let c = Complex::new(0.3, -1.2);
        let s = eigenvalues(&wrap(DMatrix::from_element(1, 1, c))).unwrap();
        assert_eq!(s.eigenvalues, vec![c]);
        // rotation-like real matrix with eigenvalues ±i
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex::new(0.0, 0.0),
                Complex::new(-1.0, 0.0),
                Complex::new(1.0, 0.0),
                Complex::new(0.0, 0.0),
            ],
        );
        let s = eigenvalues(&wrap(m)).unwrap();
        assert!((s.eigenvalues[0].norm() - 1.0).abs() < 1e-14);
        assert!(s.eigenvalues[0].re.abs() < 1e-14);
        // complex triangular
        let t = DMatrix::from_fn(4, 4, |i, j| {
            if j >= i {
                Complex::new((i + 1) as f64, (j as f64) * 0.5)
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let s = eigenvalues(&wrap(t.clone())).unwrap();
        for i in 0..4 {
            assert!(s.eigenvalues.iter().any(|r| (r - t[(i, i)]).norm() < 1e-12));
        }
    }

    #[test]
    fn full_spectrum_is_union_of_parity_blocks() {
        let p = ModelParams::new(0.4).unwrap();
        let full = ruelle_matrix(Beta::real(2.0), 40, &p).unwrap();
        // dense route without the parity split
        let mut dense = dense_eigenvalues(full.entries.clone()).unwrap();
        sort_by_modulus(&mut dense);
        let split = eigenvalues(&full).unwrap();
        for (d, s) in dense.iter().zip(&split.eigenvalues).take(12) {
            assert!((d - s).norm() < 1e-10 * split.top_modulus());
        }
    }

    #[test]
    fn complex_balancing_preserves_spectrum() {
        let p = ModelParams::new(0.45).unwrap();
        let b = Beta::new(Complex::new(1.0, 2.0)).unwrap();
        let m = ruelle_matrix(b, 30, &p).unwrap();
        let s = eigenvalues(&m).unwrap();
        let tr: Complex = s.eigenvalues.iter().sum();
        assert!((tr - m.trace()).norm() < 1e-10 * m.trace().norm());
    }

    #[test]
    fn convergence_monitor() {
        let p = ModelParams::new(0.5).unwrap();
        let s0 = spectrum_converged(Beta::real(0.0), &p, 20, 10, 1e-12).unwrap();
        assert_eq!(s0.n, 30);
        let s1 = spectrum_converged(Beta::real(1.0), &p, 20, 10, 1e-10).unwrap();
        assert!(s1.n <= 60, "needed N = {}", s1.n);
        assert!(matches!(
            spectrum_converged_with_cap(
                Beta::real(30.0),
                &ModelParams::new(0.3).unwrap(),
                10,
                5,
                1e-15,
                25
            ),
            Err(Error::Convergence { .. })
        ));
        assert!(spectrum_converged(Beta::real(1.0), &p, 5, 10, 1e-10).is_err());
    }
}
