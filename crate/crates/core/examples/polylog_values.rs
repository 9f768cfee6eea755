//! Classical and single-valued polylogarithms at a few landmark points.

use grasslog::polylog::{bloch_wigner, li, sv_trilog, ZETA3};
use num_complex::Complex64;

fn main() -> grasslog::Result<()> {
    let half = Complex64::new(0.5, 0.0);
    println!("Li_2(1/2)  = {}", li(2, half)?.re);
    println!("Li_3(1/2)  = {}", li(3, half)?.re);
    println!(
        "Li_3(-1)   = {}  (-3/4 zeta(3) = {})",
        li(3, Complex64::new(-1.0, 0.0))?.re,
        -0.75 * ZETA3
    );

    for z in [
        Complex64::new(0.5, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(1.0, 1.0),
    ] {
        println!(
            "z = {z:>8}:  D(z) = {:>10.7}  L_3(z) = {:>10.7}",
            bloch_wigner(z),
            sv_trilog(z)
        );
    }
    println!("7/8 zeta(3) = {}", 7.0 / 8.0 * ZETA3);

    // D is odd under z -> 1/z and z -> conj z; the maximum sits at exp(i pi/3)
    let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
    println!(
        "D(e^(i pi/3)) = {}  D(1/z) = {}  D(conj z) = {}",
        bloch_wigner(w),
        bloch_wigner(w.inv()),
        bloch_wigner(w.conj())
    );
    Ok(())
}
