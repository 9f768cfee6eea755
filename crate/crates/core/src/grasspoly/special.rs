use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grass_trilog_closed;
use crate::configspace::{Configuration, Scalar};
use crate::error::{Error, Result};

pub const DEFAULT_EPSILONS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// `g_3(z)`: columns `e_0, e_1, e_2, e_0 + e_1, e_1 + e_2, e_0 + z e_2`.
pub fn special_config<S: Scalar>(z: S) -> Result<Configuration<S>> {
    if z.is_zero() {
        return Err(Error::Domain("g_3(z) needs z != 0".into()));
    }
    let (o, l) = (S::zero, S::one);
    Configuration::new(
        3,
        vec![
            vec![l(), o(), o()],
            vec![o(), l(), o()],
            vec![o(), o(), l()],
            vec![l(), l(), o()],
            vec![o(), l(), l()],
            vec![l(), o(), z],
        ],
    )
}

/// Value at `0` of the polynomial through `(eps_k, values_k)` (Neville).
pub fn richardson_to_zero(eps: &[f64], values: &[f64]) -> f64 {
    let mut p = values.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (eps[i + m] * p[i] - eps[i] * p[i + 1]) / (eps[i + m] - eps[i]);
        }
    }
    p.first().copied().unwrap_or(f64::NAN)
}

fn direction(seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..6)
        .map(|_| {
            (0..3)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect()
}

/// `L^G_3(g_3(z))` by perturbing `g_3(z)` along a fixed pseudo-random
/// direction and extrapolating the closed form to `eps = 0`.
///
/// A direction that leaves some perturbation degenerate is replaced by the
/// next one in a fixed sequence.
pub fn special_stratum_value(z: Complex64, epsilons: &[f64]) -> Result<f64> {
    if epsilons.is_empty() || epsilons.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::Domain("epsilons must be positive and finite".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("z = {z} is not finite")));
    }
    let base = special_config(z)?;
    let mut last = None;
    for seed in 0..8 {
        let w = direction(seed);
        let values: Result<Vec<f64>> = epsilons
            .iter()
            .map(|&e| grass_trilog_closed(&base.perturbed(&w, Complex64::new(e, 0.0))?).map(|r| r.closed))
            .collect();
        match values {
            Ok(v) => return Ok(richardson_to_zero(epsilons, &v)),
            Err(e @ (Error::Degenerate(_) | Error::CrossRatioDegenerate(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Degenerate("no usable perturbation".into())))
}
