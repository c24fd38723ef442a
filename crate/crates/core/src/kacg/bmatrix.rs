//! Gutzwiller's closed-form matrix `B_β` in the Hermite basis.

use nalgebra::DMatrix;

use super::laguerre::laguerre_sequence;
use crate::model::{Beta, ModelParams};
use crate::numeric::ln_factorial;
use crate::{Complex, Result};

/// Finite section of `B_β`.
#[derive(Clone, Debug)]
pub struct BMatrix {
    pub entries: DMatrix<Complex>,
    pub beta: Beta,
    pub params: ModelParams,
}

impl BMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> Complex {
        self.entries.trace()
    }
}

/// `B_{n,m} = 2 (n! m!)^{-1/2} e^{-(n+m)γ/2} (M!/(2μ)!) C(M, M-2μ)^{-1} L^{2μ}_{M-2μ}(-β)`
/// with `M = max(n, m)` and `2μ = |n - m|`; zero when `|n - m|` is odd.
pub fn b_matrix(beta: Beta, dim: usize, params: &ModelParams) -> Result<BMatrix> {
    let mut entries = DMatrix::<Complex>::zeros(dim, dim);
    let x = -beta.value();
    let gamma = params.gamma();
    for gap in (0..dim).step_by(2) {
        // L^{gap}_j(-β) for j = M - gap = min(n, m)
        let lag = laguerre_sequence(dim - 1 - gap, gap as f64, x);
        for (j, l) in lag.iter().enumerate() {
            let (n, m) = (j, j + gap);
            let big = m;
            let ln_binom = ln_factorial(big) - ln_factorial(big - gap) - ln_factorial(gap);
            let ln_mag = 2f64.ln()
                - 0.5 * (ln_factorial(n) + ln_factorial(m))
                - (n + m) as f64 * gamma / 2.0
                + ln_factorial(big)
                - ln_factorial(gap)
                - ln_binom;
            let v = l * ln_mag.exp();
            entries[(n, m)] = v;
            entries[(m, n)] = v;
        }
    }
    Ok(BMatrix {
        entries,
        beta,
        params: *params,
    })
}

/// `tr G_β = 2 (1-λ)^{-1} exp(βλ/(1-λ))`, the Laguerre generating function.
pub fn trace_g_closed_form(beta: Beta, params: &ModelParams) -> Complex {
    let l = params.lambda();
    2.0 / (1.0 - l) * (beta.value() * l / (1.0 - l)).exp()
}
