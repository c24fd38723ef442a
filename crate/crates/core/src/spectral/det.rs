//! Fredholm determinants `det(1 - z L_β)`.

use nalgebra::DMatrix;

use super::eigen::{balance_complex, is_checkerboard};
use crate::model::{exact_trace_ruelle_power, Beta, ModelParams};
use crate::ruelle::{ruelle_matrix, OperatorMatrix};
use crate::{Complex, Error, Result};

/// `det(I - z L^{(N)}_β)` by LU factorization of the balanced matrix.
pub fn fredholm_det(beta: Beta, z: Complex, n: usize, params: &ModelParams) -> Result<Complex> {
    let m = ruelle_matrix(beta, n, params)?;
    Ok(PreparedDet::new(&m).det(z))
}

/// A matrix balanced once and reusable for many values of `z`.
///
/// Determinants of the two parity blocks are kept apart; the full
/// determinant is their product.
#[derive(Clone, Debug)]
pub struct PreparedDet {
    blocks: Vec<DMatrix<Complex>>,
}

impl PreparedDet {
    pub fn new(matrix: &OperatorMatrix) -> Self {
        let a = &matrix.entries;
        let n = a.nrows();
        let mut blocks = if n > 2 && is_checkerboard(a) {
            (0..2)
                .map(|offset| {
                    let idx: Vec<usize> = (offset..n).step_by(2).collect();
                    DMatrix::from_fn(idx.len(), idx.len(), |r, c| a[(idx[r], idx[c])])
                })
                .collect()
        } else {
            vec![a.clone()]
        };
        for b in &mut blocks {
            balance_complex(b);
        }
        Self { blocks }
    }

    /// Per-block determinants; even block first when the matrix was split.
    pub fn block_dets(&self, z: Complex) -> Vec<Complex> {
        self.blocks.iter().map(|b| one_minus_z_det(b, z)).collect()
    }

    pub fn det(&self, z: Complex) -> Complex {
        self.block_dets(z).into_iter().product()
    }
}

fn one_minus_z_det(a: &DMatrix<Complex>, z: Complex) -> Complex {
    let n = a.nrows();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let d = if i == j {
            Complex::new(1.0, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        };
        d - z * a[(i, j)]
    });
    m.lu().determinant()
}

/// `exp(-Σ_{n ≤ n_max} z^n tr(L^n) / n)` with the exact traces
/// `Z_n / (1 - λ^n)`. Only meaningful when `|z| ρ_max < 1`.
pub fn fredholm_det_trace_route(
    beta: Beta,
    z: Complex,
    n_max: usize,
    params: &ModelParams,
) -> Result<Complex> {
    if n_max == 0 {
        return Err(Error::Domain("trace route needs at least one term".into()));
    }
    let mut s = Complex::new(0.0, 0.0);
    let mut zp = Complex::new(1.0, 0.0);
    for n in 1..=n_max {
        zp *= z;
        s += zp * exact_trace_ruelle_power(n, beta, params)? / n as f64;
    }
    Ok((-s).exp())
}
