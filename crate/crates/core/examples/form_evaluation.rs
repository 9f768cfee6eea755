//! The forms r_m in their three presentations, d r_m, and the Leray form.

use grasslog::configspace::GaussRat;
use grasslog::formeval::{
    d_r_check, eval_r, leray, leray_by_determinant, ChartPoint, FunctionSystem, Presentation, TangentVector,
};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> grasslog::Result<()> {
    let forms = vec![
        vec![c(1.0, 0.0), c(0.3, -0.2), c(0.1, 0.4)],
        vec![c(0.2, 0.5), c(1.0, 0.0), c(-0.4, 0.1)],
        vec![c(-0.3, 0.2), c(0.6, 0.1), c(1.0, 0.0)],
        vec![c(0.7, -0.1), c(-0.2, 0.9), c(0.5, 0.5)],
    ];
    let fs = FunctionSystem::new(3, forms)?;
    let p = ChartPoint::new(0, vec![c(0.4, -0.3), c(-0.2, 0.7)])?;
    let ws = [
        TangentVector(vec![1.0, 0.0, 0.3, -0.5]),
        TangentVector(vec![0.2, 1.0, -0.1, 0.4]),
    ];
    for pres in [Presentation::Definition, Presentation::Holo, Presentation::Reduced] {
        let v = eval_r(3, &fs, &p, &ws, pres)?;
        println!("r_3 {pres:?}: {:.15} (weight {})", v.value, v.weight);
    }

    // d r_3 needs a complex 3-fold: four forms on C^4
    let fs4 = FunctionSystem::new(
        4,
        vec![
            vec![c(1.0, 0.0), c(0.3, -0.2), c(0.1, 0.4), c(0.2, 0.0)],
            vec![c(0.2, 0.5), c(1.0, 0.0), c(-0.4, 0.1), c(0.0, 0.3)],
            vec![c(-0.3, 0.2), c(0.6, 0.1), c(1.0, 0.0), c(0.4, -0.4)],
            vec![c(0.7, -0.1), c(-0.2, 0.9), c(0.5, 0.5), c(1.0, 0.2)],
        ],
    )?;
    let p4 = ChartPoint::new(0, vec![c(0.4, -0.3), c(-0.2, 0.7), c(0.1, 0.1)])?;
    let three = [
        TangentVector(vec![1.0, 0.0, 0.3, -0.5, 0.2, 0.1]),
        TangentVector(vec![0.2, 1.0, -0.1, 0.4, 0.0, -0.3]),
        TangentVector(vec![-0.6, 0.2, 1.0, 0.1, 0.5, 0.7]),
    ];
    let (lhs, rhs) = d_r_check(3, &fs4, &p4, &three)?;
    println!("d r_3 by differences = {:.10}, closed = {:.10}", lhs.value, rhs.value);

    let g = |a: i64, b: i64| GaussRat::from_ints(a, 1, b, 1);
    let ls = vec![
        vec![g(1, 0), g(2, 1), g(0, 1)],
        vec![g(0, 1), g(1, 0), g(3, 0)],
        vec![g(1, -1), g(0, 0), g(1, 0)],
    ];
    let x = vec![g(1, 1), g(-1, 0), g(2, 0)];
    let vs = vec![vec![g(0, 1), g(1, 0), g(1, 1)], vec![g(2, 0), g(0, -1), g(1, 0)]];
    println!("Leray form = {}", leray(&ls, &x, &vs)?);
    println!("Delta * i_E omega = {}", leray_by_determinant(&ls, &x, &vs)?);
    Ok(())
}
