//! The Kac-Gutzwiller integral operator in the Hermite basis: Mehler's formula,
//! the quadrature matrix and Gutzwiller's closed-form matrix.

use kacbaker::kacg::{
    b_matrix, g_matrix_quadrature_detailed, mehler_adaptive, trace_g_closed_form,
};
use kacbaker::spectral::eigenvalues;
use kacbaker::{Beta, ModelParams};

fn main() -> kacbaker::Result<()> {
    let params = ModelParams::new(0.5)?;

    for (x, y) in [(0.0, 0.0), (0.4, -0.3), (1.2, 0.9)] {
        let s = mehler_adaptive(0.5, x, y)?;
        println!(
            "Mehler at ({x}, {y}): series {:.15e}  closed form {:.15e}",
            s.lhs, s.rhs
        );
    }

    for b in [0.0, 1.0, 3.0] {
        let beta = Beta::real(b);
        let bm = b_matrix(beta, 80, &params)?;
        let g = g_matrix_quadrature_detailed(beta, 80, 320, &params)?;
        println!(
            "β={b}: tr B = {:.12}  tr G_quad = {:.12}  closed form {:.12}  (K_cut {}, tail bound {:.1e})",
            bm.trace().re,
            g.matrix.trace().re,
            trace_g_closed_form(beta, &params).re,
            g.k_cut,
            g.tail_bound
        );
    }

    let g = g_matrix_quadrature_detailed(Beta::real(1.0), 60, 240, &params)?;
    let spec = eigenvalues(&g.matrix)?;
    let top: Vec<String> = spec
        .eigenvalues
        .iter()
        .take(5)
        .map(|r| format!("{:.12}", r.re))
        .collect();
    println!("leading eigenvalues of G at β=1: {}", top.join(" "));
    Ok(())
}
