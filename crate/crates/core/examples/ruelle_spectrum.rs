//! Spectrum of the Ruelle composition operator in the monomial basis.
//!
//! At β = 0 the eigenvalues are exactly 2λ^k; for β ≠ 0 they stay real.

use kacbaker::model::exact_trace_ruelle_power;
use kacbaker::ruelle::{parity_matrices, ruelle_matrix, truncated_trace_power};
use kacbaker::spectral::{eigenvalues, spectrum_converged};
use kacbaker::{Beta, ModelParams};

fn main() -> kacbaker::Result<()> {
    let params = ModelParams::new(0.5)?;

    let golden = eigenvalues(&ruelle_matrix(Beta::real(0.0), 40, &params)?)?;
    for (k, rho) in golden.eigenvalues.iter().take(5).enumerate() {
        println!(
            "β=0  ρ_{k} = {:.15}  (2λ^k = {})",
            rho.re,
            2.0 * 0.5f64.powi(k as i32)
        );
    }

    for b in [-2.0, 1.0, 4.0] {
        let s = spectrum_converged(Beta::real(b), &params, 20, 20, 1e-12)?;
        let top: Vec<String> = s
            .eigenvalues
            .iter()
            .take(4)
            .map(|r| format!("{:.10}", r.re))
            .collect();
        println!(
            "β={b:<4} N={:<3} leading {}  max |Im|/|ρ_0| = {:.1e}",
            s.n,
            top.join(" "),
            s.max_relative_imaginary(1e-8)
        );
    }

    let beta = Beta::real(0.7);
    let l = ruelle_matrix(beta, 80, &params)?;
    for n in 1..=3 {
        let t = truncated_trace_power(&l, n)?;
        let exact = exact_trace_ruelle_power(n, beta, &params)?;
        println!(
            "tr L^{n} = {:.12}  lattice Z_n/(1-λ^n) = {:.12}",
            t.re, exact.re
        );
    }

    // even and odd functions are invariant subspaces
    let pair = parity_matrices(beta, 40, &params)?;
    let even = eigenvalues(&pair.even)?;
    let odd = eigenvalues(&pair.odd)?;
    println!(
        "leading even {:.10}, leading odd {:.10}",
        even.eigenvalues[0].re, odd.eigenvalues[0].re
    );
    Ok(())
}
