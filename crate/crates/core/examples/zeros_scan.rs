//! Zeros and poles of the zeta function along the real β axis, and the
//! complex zeros at β = ln 2 + 2πin for λ = 1/2.
//!
//! ```bash
//! cargo run --release --example zeros_scan
//! ```

use kacbaker::spectral::{find_line_zeros, find_real_zeros, ZeroKind};
use kacbaker::ModelParams;

fn main() -> kacbaker::Result<()> {
    let half = ModelParams::new(0.5)?;
    let r = find_real_zeros((0.0, 1.0), &half, 120, 0.05)?;
    for z in &r.zeros {
        println!(
            "λ=1/2  {:<16} β = {:.12}  residual {:.1e}",
            z.kind.as_str(),
            z.location.re,
            z.residual
        );
    }
    println!("candidate zero/pole cancellations: {:?}", r.cancellations);

    let line = find_line_zeros(&half, -2..=2, 120)?;
    for z in &line.zeros {
        println!("line zero {:.10}", z.location);
    }

    let p = ModelParams::new(0.3)?;
    let wide = find_real_zeros((-20.0, 20.0), &p, 100, 0.1)?;
    let real: Vec<f64> = wide
        .zeros
        .iter()
        .filter(|z| z.kind == ZeroKind::NontrivialReal)
        .map(|z| z.location.re)
        .collect();
    println!("λ=0.3 nontrivial real zeros in [-20, 20]: {real:.6?}");
    Ok(())
}
