//! The Grassmannian trilogarithm: CP^2 quadrature against the closed form.
//!
//! `cargo run --release --example grass_trilog -- 5000000` uses the full budget.

use grasslog::grasspoly::grass_trilog_numeric;
use grasslog::verify::{condition_number, conditioned_random_config};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> grasslog::Result<()> {
    let budget = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let config = conditioned_random_config(&mut rng, 6, 3);
    println!("condition number {:.1}", condition_number(&config));

    let r = grass_trilog_numeric(&config, budget, 42)?;
    let e = r.numeric.as_ref().expect("numeric estimate");
    println!("lie trilog       = {:.10}", r.lie);
    println!("difference term  = {:.10}", r.diff_term);
    println!("closed           = {:.10}", r.closed);
    println!("CP^2 integral    = {:.6} +- {:.6} ({} samples)", e.value, e.sigma, e.samples);
    println!(
        "|numeric-closed| = {:.2e} ({:.1} sigma)",
        (e.value - r.closed).abs(),
        (e.value - r.closed).abs() / e.sigma
    );
    Ok(())
}
