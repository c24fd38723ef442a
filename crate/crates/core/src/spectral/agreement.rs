//! Agreement between the Ruelle matrix and the Kac-Gutzwiller matrix.

use nalgebra::SymmetricEigen;
use serde::Serialize;

use super::eigen::{eigenvalues, Spectrum};
use crate::bargmann::{connection_forward, HermiteCoefficients};
use crate::kacg::g_matrix_quadrature;
use crate::model::{Beta, ModelParams};
use crate::ruelle::ruelle_matrix;
use crate::{Complex, Error, Result};

/// Leading eigenvalues compared by [`spectra_match`].
pub const MATCHED: usize = 10;
const DEGENERACY: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct MatchedPair {
    #[serde(serialize_with = "crate::report::serialize_complex")]
    pub ruelle: Complex,
    #[serde(serialize_with = "crate::report::serialize_complex")]
    pub gutzwiller: Complex,
    /// `|ρ_L - ρ_G| / |ρ_L|`.
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectraMatchReport {
    pub beta: f64,
    pub n_ruelle: usize,
    pub n_gutzwiller: usize,
    pub tol: f64,
    pub pairs: Vec<MatchedPair>,
    /// Indices of Ruelle eigenvalues whose cluster size (eigenvalues within
    /// `tol`) differs between the two sides.
    pub multiplicity_mismatches: Vec<usize>,
}

impl SpectraMatchReport {
    pub fn max_deviation(&self, count: usize) -> f64 {
        self.pairs
            .iter()
            .take(count)
            .map(|p| p.deviation)
            .fold(0.0, f64::max)
    }

    pub fn pass(&self) -> bool {
        self.max_deviation(self.pairs.len()) <= self.tol && self.multiplicity_mismatches.is_empty()
    }
}

/// Leading eigenvalues of `ruelle_matrix(β, n_l)` and of
/// `g_matrix_quadrature(β, n_g, 4 n_g)`, paired greedily in order of
/// descending modulus.
pub fn spectra_match(
    beta: f64,
    params: &ModelParams,
    n_l: usize,
    n_g: usize,
    tol: f64,
) -> Result<SpectraMatchReport> {
    let b = Beta::real(beta);
    let l = eigenvalues(&ruelle_matrix(b, n_l, params)?)?;
    let g = eigenvalues(&g_matrix_quadrature(b, n_g, 4 * n_g, params)?)?;
    let take = MATCHED.min(l.eigenvalues.len()).min(g.eigenvalues.len());
    let pool = (2 * MATCHED).min(g.eigenvalues.len());
    let mut used = vec![false; pool];
    let mut pairs = Vec::with_capacity(take);
    for r in l.eigenvalues.iter().take(take) {
        let best = (0..pool)
            .filter(|&j| !used[j])
            .min_by(|&i, &j| {
                (g.eigenvalues[i] - r)
                    .norm()
                    .total_cmp(&(g.eigenvalues[j] - r).norm())
            })
            .expect("pool is at least as large as the matched set");
        used[best] = true;
        let gv = g.eigenvalues[best];
        pairs.push(MatchedPair {
            ruelle: *r,
            gutzwiller: gv,
            deviation: (gv - r).norm() / r.norm().max(f64::MIN_POSITIVE),
        });
    }
    let cluster = |s: &Spectrum, r: Complex| {
        s.eigenvalues
            .iter()
            .filter(|v| (*v - r).norm() <= tol * r.norm())
            .count()
    };
    let multiplicity_mismatches = pairs
        .iter()
        .enumerate()
        .filter(|(_, p)| p.deviation <= tol && cluster(&l, p.ruelle) != cluster(&g, p.ruelle))
        .map(|(i, _)| i)
        .collect();
    Ok(SpectraMatchReport {
        beta,
        n_ruelle: n_l,
        n_gutzwiller: n_g,
        tol,
        pairs,
        multiplicity_mismatches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectionReport {
    pub beta: f64,
    pub index: usize,
    pub eigenvalue: f64,
    /// Size of the eigenvalue cluster the residual covers.
    pub multiplicity: usize,
    /// `max |L_β F - ρ F| / max |F|` over the sample points.
    pub residual: f64,
}

/// Default Hermite truncation and quadrature size for the connection check.
pub const CONNECTION_N: usize = 60;

/// Sample points for the eigenfunction residual.
pub const CONNECTION_POINTS: [Complex; 8] = [
    Complex::new(0.1, 0.0),
    Complex::new(0.0, 0.3),
    Complex::new(-0.2, 0.1),
    Complex::new(0.0, 0.0),
    Complex::new(0.35, -0.2),
    Complex::new(-0.4, 0.0),
    Complex::new(0.25, 0.25),
    Complex::new(-0.1, -0.35),
];

/// Transports the `which`-th eigenvector (descending eigenvalue) of the
/// quadrature Kac-Gutzwiller matrix to an eigenfunction of `L_β` and measures
/// how well it satisfies `L_β F = ρ F`. For a degenerate eigenvalue every
/// basis vector of the eigenspace is transported and the worst residual kept.
///
/// The transport dilates by `√β`; at `β = 0` every eigenvector is mapped to a
/// constant and only `which = 0` gives a meaningful residual.
pub fn eigenfunction_connection_check(
    beta: f64,
    which: usize,
    params: &ModelParams,
) -> Result<ConnectionReport> {
    eigenfunction_connection_check_with(beta, which, params, CONNECTION_N)
}

pub fn eigenfunction_connection_check_with(
    beta: f64,
    which: usize,
    params: &ModelParams,
    n: usize,
) -> Result<ConnectionReport> {
    let b = Beta::real(beta);
    let g = g_matrix_quadrature(b, n, 4 * n, params)?;
    if which >= n {
        return Err(Error::IndexOutOfRange {
            index: which,
            len: n,
        });
    }
    let eig = SymmetricEigen::new(g.entries.map(|v| v.re));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let rho = eig.eigenvalues[order[which]];
    let cluster: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&j| (eig.eigenvalues[j] - rho).abs() <= DEGENERACY * rho.abs())
        .collect();
    let mut residual: f64 = 0.0;
    for &j in &cluster {
        let coeffs = HermiteCoefficients(
            eig.eigenvectors
                .column(j)
                .iter()
                .map(|v| Complex::new(*v, 0.0))
                .collect(),
        );
        let f = |z: Complex| connection_forward(&coeffs, b, z, params);
        let mut worst: f64 = 0.0;
        let mut size: f64 = 0.0;
        for &z in &CONNECTION_POINTS {
            let l = params.lambda();
            let fz = f(z)?;
            let plus = f(l + l * z)?;
            let minus = f(-l + l * z)?;
            let lf = (beta * z).exp() * plus + (-beta * z).exp() * minus;
            worst = worst.max((lf - rho * fz).norm());
            size = size.max(fz.norm());
        }
        residual = residual.max(worst / size.max(f64::MIN_POSITIVE));
    }
    Ok(ConnectionReport {
        beta,
        index: which,
        eigenvalue: rho,
        multiplicity: cluster.len(),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_zero_agreement() {
        let p = ModelParams::new(0.5).unwrap();
        let r = spectra_match(0.0, &p, 60, 40, 1e-10).unwrap();
        assert!(r.pass(), "{r:?}");
        let c = eigenfunction_connection_check(0.0, 0, &p).unwrap();
        assert!((c.eigenvalue - 2.0).abs() < 1e-12);
        assert!(c.residual < 1e-10, "{c:?}");
    }
}
