//! The Grassmannian dilogarithm: CP^1 quadrature against the Bloch–Wigner
//! function of the cross-ratio.

use grasslog::configspace::Configuration;
use grasslog::grasspoly::{grass_dilog_closed, grass_dilog_numeric};
use num_complex::Complex64;

fn main() -> grasslog::Result<()> {
    let c = |re, im| Complex64::new(re, im);
    let config = Configuration::new(
        2,
        vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.3, 0.8), c(1.0, -0.2)],
        ],
    )?;
    let closed = grass_dilog_closed(&config)?;
    let numeric = grass_dilog_numeric(&config, 100_000, 1e-6)?;
    println!("cross-ratio      = {}", config.cross_ratio([0, 1, 2, 3])?);
    println!("closed  D(r)     = {closed:.12}");
    println!(
        "numeric          = {:.12} +- {:.1e} ({} samples)",
        numeric.value, numeric.sigma, numeric.samples
    );
    println!("difference       = {:.2e}", numeric.value - closed);

    let swapped = config.permuted(&[2, 1, 0, 3])?;
    println!("swap l_0, l_2    = {:.12}", grass_dilog_closed(&swapped)?);
    Ok(())
}
