//! Drop and projection equations for the trilogarithm, and the one-form
//! difference on configurations of five points in dimension 2.

use grasslog::configspace::{Configuration, GaussRat};
use grasslog::grasspoly::{check_drop_equation, check_oneform_difference, check_projection_equation, TrilogFn};
use grasslog::verify::conditioned_random_config;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_exact(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Configuration<GaussRat> {
    loop {
        let vs = (0..n)
            .map(|_| {
                (0..dim)
                    .map(|_| GaussRat::from_ints(rng.gen_range(-6..=6), 1, rng.gen_range(-6..=6), 1))
                    .collect()
            })
            .collect();
        if let Ok(c) = Configuration::new(dim, vs) {
            if c.is_generic() {
                return c;
            }
        }
    }
}

fn main() -> grasslog::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let seven_in_3 = random_exact(&mut rng, 7, 3);
    let seven_in_4 = random_exact(&mut rng, 7, 4);
    for f in [TrilogFn::Closed, TrilogFn::Lie, TrilogFn::Diff] {
        let d = check_drop_equation(&seven_in_3, f)?;
        let p = check_projection_equation(&seven_in_4, f)?;
        println!(
            "{f:?}: drop residual {:.2e}, projection residual {:.2e}",
            d.relative(),
            p.relative()
        );
    }

    let config = conditioned_random_config(&mut rng, 5, 2);
    let w: Vec<Vec<Complex64>> = (0..5)
        .map(|_| {
            (0..2)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect();
    let r = check_oneform_difference(&config, &w)?;
    println!("one-form pieces {:?}, residual {:.2e}", r.terms, r.residual);
    Ok(())
}
