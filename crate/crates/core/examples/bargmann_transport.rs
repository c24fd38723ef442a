//! The Segal-Bargmann transform: Hermite functions go to the normalized
//! monomials ζ_k, and the Ruelle operator is a conjugate of the Kac-Gutzwiller one.

use kacbaker::bargmann::{
    bargmann_transform, bargmann_transform_quadrature, verify_operator_identities,
    verify_ruelle_conjugacy, zeta_k, HermiteCoefficients,
};
use kacbaker::{Beta, Complex, ModelParams};

fn main() -> kacbaker::Result<()> {
    let z = Complex::new(0.3, -0.4);
    for k in [0usize, 1, 5, 10] {
        let mut a = vec![Complex::new(0.0, 0.0); k + 1];
        a[k] = Complex::new(1.0, 0.0);
        let h = HermiteCoefficients(a);
        let q = bargmann_transform_quadrature(|x| h.eval(x), z)?;
        println!(
            "B h_{k}(z): quadrature {q:.12}  series {:.12}  ζ_k {:.12}",
            bargmann_transform(&h, z),
            zeta_k(k, z)
        );
    }

    let checks = verify_operator_identities(&[0, 2], 1e-8)?;
    for c in &checks {
        println!(
            "{:<40} abs err {:.1e}  {}",
            c.check_name,
            c.abs_err,
            if c.pass { "ok" } else { "FAIL" }
        );
    }

    let params = ModelParams::new(0.5)?;
    for c in verify_ruelle_conjugacy(Beta::real(1.0), &params, 1e-8)? {
        println!(
            "{:<40} abs err {:.1e}  {}",
            c.check_name,
            c.abs_err,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    Ok(())
}
