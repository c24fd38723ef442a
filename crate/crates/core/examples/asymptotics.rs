//! Leading eigenvalues at large |β| against their closed-form asymptotes.

use kacbaker::spectral::{asymptotic_ratios, trace_asymptote_ratio};
use kacbaker::ModelParams;

fn main() -> kacbaker::Result<()> {
    let params = ModelParams::new(0.3)?;
    for beta in [40.0, -40.0] {
        let r = asymptotic_ratios(beta, 4, &params, 160)?;
        let fmt = |v: &[kacbaker::Complex]| {
            v.iter()
                .map(|c| format!("{:.6}", c.re))
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("β={beta}: even {}  odd {}", fmt(&r.even), fmt(&r.odd));
    }
    println!(
        "trace ratio at β=40: {:.8}",
        trace_asymptote_ratio(40.0, 8, &params, 160)?.re
    );
    Ok(())
}
