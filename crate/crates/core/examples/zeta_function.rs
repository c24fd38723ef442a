//! Values of the Ruelle zeta function ζ_R(z, β) = det(1 - zλL_β) / det(1 - zL_β).

use kacbaker::spectral::zeta_value;
use kacbaker::{Beta, Complex, ModelParams};

fn main() -> kacbaker::Result<()> {
    let zero = Beta::real(0.0);
    for lambda in [0.3, 0.5, 0.7] {
        let params = ModelParams::new(lambda)?;
        let e = zeta_value(Complex::new(1.0, 0.0), zero, 60, &params)?;
        println!("λ={lambda}: ζ(1, 0) = {:?}  [{}]", e.value, e.flag.as_str());
    }

    let params = ModelParams::new(0.5)?;
    for z in [0.1, 0.4, 0.45] {
        let e = zeta_value(Complex::new(z, 0.0), zero, 60, &params)?;
        println!(
            "ζ({z}, 0) = {:.12}  vs 1/(1-2z) = {:.12}",
            e.value.unwrap_or_default().re,
            1.0 / (1.0 - 2.0 * z)
        );
    }

    let beta = Beta::new(Complex::new(0.5, 1.0))?;
    let e = zeta_value(Complex::new(0.2, 0.1), beta, 80, &params)?;
    println!(
        "complex β: num {:.6e}  den {:.6e}  ζ {:?}",
        e.numerator, e.denominator, e.value
    );
    Ok(())
}
