//! Runs the invariant suite in-process and prints failures only.

use kacbaker::cli::{beta_checks, beta_free_checks};
use kacbaker::ModelParams;

fn main() -> kacbaker::Result<()> {
    let params = ModelParams::new(0.3)?;
    let mut checks = beta_free_checks(&params)?;
    for beta in [0.0, 0.5, 2.0] {
        checks.extend(beta_checks(beta, &params)?);
    }
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
    for c in &failed {
        println!("FAIL {} abs err {:.2e}", c.check_name, c.abs_err);
    }
    println!("{} checks, {} failed", checks.len(), failed.len());
    Ok(())
}
