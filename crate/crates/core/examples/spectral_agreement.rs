//! The Ruelle matrix and the quadrature Kac-Gutzwiller matrix have the same
//! leading eigenvalues, and eigenvectors of one transport to eigenfunctions
//! of the other.

use std::f64::consts::LN_2;

use kacbaker::spectral::{eigenfunction_connection_check, spectra_match};
use kacbaker::ModelParams;

fn main() -> kacbaker::Result<()> {
    let params = ModelParams::new(0.5)?;
    for beta in [0.0, 1.0, LN_2] {
        let report = spectra_match(beta, &params, 80, 60, 1e-6)?;
        println!(
            "β = {beta:.6}: top-5 max relative deviation {:.2e}",
            report.max_deviation(5)
        );
        for p in report.pairs.iter().take(3) {
            println!("    {:.14}  {:.14}", p.ruelle.re, p.gutzwiller.re);
        }
        if beta > 0.0 {
            for which in 0..3 {
                let c = eigenfunction_connection_check(beta, which, &params)?;
                println!(
                    "    eigenfunction {which}: ρ = {:.12}, residual {:.1e}",
                    c.eigenvalue, c.residual
                );
            }
        }
    }
    Ok(())
}
