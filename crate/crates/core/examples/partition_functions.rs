//! Exact periodic partition functions by enumeration of all 2^n configurations.
//!
//! ```bash
//! cargo run --release --example partition_functions
//! ```

use kacbaker::model::{free_energy_estimate, partition_function_exact, site_interaction_sum};
use kacbaker::{Beta, ModelParams, SpinConfig};

fn main() -> kacbaker::Result<()> {
    let params = ModelParams::new(0.5)?;

    // interaction felt by site 0 of the periodic configuration (+,+,-)
    let config = SpinConfig::new(vec![1, 1, -1])?;
    println!(
        "site sum at k=0 for (+,+,-): {:.12}",
        site_interaction_sum(&config, 0, &params)?
    );

    println!(
        "{:>4} {:>22} {:>22}",
        "n", "Z_n(β=1)", "free energy estimate"
    );
    for n in 1..=12 {
        let beta = Beta::real(1.0);
        let z = partition_function_exact(n, beta, &params)?;
        println!(
            "{n:>4} {:>22.12e} {:>22.12}",
            z.re,
            free_energy_estimate(beta, n, &params)?
        );
    }
    Ok(())
}
