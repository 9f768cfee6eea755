//! Orientation calibration and a plain CP^1 integral.

use std::sync::Arc;

use grasslog::formeval::{ChartPoint, FunctionSystem};
use grasslog::quad::{calibration_integral, integrate_cp1, orientation_calibrate, Integrand, Kernel};
use num_complex::Complex64;

fn main() -> grasslog::Result<()> {
    let cal = calibration_integral();
    println!(
        "area of CP^1 = {} +- {} (pi = {})",
        cal.value,
        cal.sigma,
        std::f64::consts::PI
    );
    println!("orientation: {}", orientation_calibrate().tag());

    // |x_0|^2 / |x|^2 against the Fubini-Study area form: pi/2 by symmetry
    let one = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let fs = FunctionSystem::new(2, vec![one.clone(), one])?;
    let kernel = Kernel::Custom(Arc::new(|p: &ChartPoint| {
        let x = p.homogeneous();
        let g = x[0].norm_sqr() / (x[0].norm_sqr() + x[1].norm_sqr());
        g / (1.0 + p.t[0].norm_sqr()).powi(2)
    }));
    let e = integrate_cp1(&Integrand::new(fs, kernel)?, 100_000, 1e-9)?;
    println!(
        "int |x_0|^2/|x|^2 dA_FS = {} (pi/2 = {}), {} samples",
        e.value,
        std::f64::consts::FRAC_PI_2,
        e.samples
    );
    Ok(())
}
