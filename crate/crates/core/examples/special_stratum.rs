//! The closed trilogarithm extrapolated onto the special stratum, next to
//! L_3(z) and -L_3(-z).

use grasslog::grasspoly::{special_stratum_value, DEFAULT_EPSILONS};
use grasslog::polylog::sv_trilog;
use num_complex::Complex64;

fn main() -> grasslog::Result<()> {
    println!("{:>8} {:>12} {:>12} {:>12}", "z", "limit", "L3(z)", "-L3(-z)");
    for z in [c(0.5, 0.0), c(-1.0, 0.0), c(2.0, 0.0), c(1.0, 1.0), c(3.0, 0.0), c(-2.0, 0.0)] {
        let v = special_stratum_value(z, &DEFAULT_EPSILONS)?;
        println!(
            "{:>8} {:>12.6} {:>12.6} {:>12.6}",
            z.to_string(),
            v,
            sv_trilog(z),
            -sv_trilog(-z)
        );
    }
    match special_stratum_value(c(0.0, 0.0), &DEFAULT_EPSILONS) {
        Ok(v) => println!("z = 0 unexpectedly gave {v}"),
        Err(e) => println!("z = 0: {e}"),
    }
    Ok(())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
