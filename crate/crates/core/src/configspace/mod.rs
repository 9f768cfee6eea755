//! Configurations of vectors, their determinants, and the maps between
//! configuration spaces.

mod alternate;
mod config;
mod formal;
mod json;
mod scalar;

pub use alternate::{alternate, permutations, try_alternate, AltValue, Permutation, MAX_ALT};
pub use config::{cross_ratio, subsets, triple_ratio_arg, Configuration};
pub use formal::FormalSum;
pub use json::{exact_to_json, float_to_json, AnyConfiguration};
pub use scalar::{det, GaussRat, Scalar, EPS_GEN};

use num_rational::BigRational;

use crate::error::Result;

/// Exact configuration used as a formal symbol: the list of its vectors.
pub type ConfigKey = Vec<Vec<GaussRat>>;

/// `d'(x) = sum_i (-1)^i drop_i(x)`, extended linearly to formal sums.
pub fn drop_differential(sum: &FormalSum<ConfigKey>, dim: usize) -> Result<FormalSum<ConfigKey>> {
    let mut out = FormalSum::new();
    for (key, c) in sum.iter() {
        let cfg = Configuration::new(dim, key.clone())?;
        for i in 0..cfg.len() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out.add_term(cfg.drop(i)?.vectors().to_vec(), c * BigRational::from_integer(sign.into()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_exact(rng: &mut ChaCha8Rng, dim: usize, m: usize) -> Configuration<GaussRat> {
        loop {
            let vs = (0..m)
                .map(|_| {
                    (0..dim)
                        .map(|_| {
                            GaussRat::from_ints(
                                rng.gen_range(-9..=9),
                                rng.gen_range(1..=4),
                                rng.gen_range(-9..=9),
                                rng.gen_range(1..=4),
                            )
                        })
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

    #[test]
    fn drop_differential_squares_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let c = random_exact(&mut rng, 3, 7);
            let x = FormalSum::symbol(c.vectors().to_vec());
            let dd = drop_differential(&drop_differential(&x, 3).unwrap(), 3).unwrap();
            assert!(dd.is_zero());
        }
    }

    #[test]
    fn delta_is_multilinear_and_alternating() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = random_exact(&mut rng, 3, 5);
        let extra = random_exact(&mut rng, 3, 1);
        let lambda = GaussRat::from_ints(2, 3, -1, 2);
        for col in 0..3 {
            let idx = [0, 1, 2];
            // column `col` replaced by v + lambda * u
            let mut vs = c.vectors().to_vec();
            let u = extra.vectors()[0].clone();
            vs[idx[col]] = vs[idx[col]]
                .iter()
                .zip(&u)
                .map(|(a, b)| a.clone() + lambda.clone() * b.clone())
                .collect();
            let lhs = Configuration::new(3, vs).unwrap().delta(&idx).unwrap();
            let mut only_u = c.vectors().to_vec();
            only_u[idx[col]] = u;
            let rhs = c.delta(&idx).unwrap() + lambda.clone() * Configuration::new(3, only_u).unwrap().delta(&idx).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(c.delta(&[2, 1, 0]).unwrap(), -c.delta(&[0, 1, 2]).unwrap());
    }

    #[test]
    fn ratio_invariances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c2 = random_exact(&mut rng, 2, 4);
        let g2 = random_exact(&mut rng, 2, 2).vectors().to_vec();
        let r = c2.cross_ratio([0, 1, 2, 3]).unwrap();
        assert_eq!(c2.transformed(&g2).unwrap().cross_ratio([0, 1, 2, 3]).unwrap(), r);
        assert_eq!(
            c2.rescaled(2, GaussRat::from_ints(-3, 2, 5, 1))
                .unwrap()
                .cross_ratio([0, 1, 2, 3])
                .unwrap(),
            r
        );
        assert_eq!(
            c2.clone()
                .with_volume_form(GaussRat::from_ints(7, 1, 1, 1))
                .cross_ratio([0, 1, 2, 3])
                .unwrap(),
            r
        );

        let c3 = random_exact(&mut rng, 3, 6);
        let g3 = random_exact(&mut rng, 3, 3).vectors().to_vec();
        let t = c3.triple_ratio_arg([0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(c3.transformed(&g3).unwrap().triple_ratio_arg([0, 1, 2, 3, 4, 5]).unwrap(), t);
        for i in 0..6 {
            let s = c3.rescaled(i, GaussRat::from_ints(1, 5, 4, 3)).unwrap();
            assert_eq!(s.triple_ratio_arg([0, 1, 2, 3, 4, 5]).unwrap(), t);
        }
        assert_eq!(
            c3.with_volume_form(GaussRat::from_i64(-2))
                .triple_ratio_arg([0, 1, 2, 3, 4, 5])
                .unwrap(),
            t
        );
    }

    #[test]
    fn triple_ratio_matches_cofactor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let c = random_exact(&mut rng, 3, 6);
        let v = c.vectors();
        let d3 = |a: usize, b: usize, e: usize| {
            let (x, y, z) = (&v[a], &v[b], &v[e]);
            x[0].clone() * (y[1].clone() * z[2].clone() - y[2].clone() * z[1].clone())
                - y[0].clone() * (x[1].clone() * z[2].clone() - x[2].clone() * z[1].clone())
                + z[0].clone() * (x[1].clone() * y[2].clone() - x[2].clone() * y[1].clone())
        };
        let expect = d3(0, 1, 3) * d3(1, 2, 4) * d3(2, 0, 5) / (d3(0, 1, 4) * d3(1, 2, 5) * d3(2, 0, 3));
        let l: Vec<&[GaussRat]> = v.iter().map(Vec::as_slice).collect();
        assert_eq!(triple_ratio_arg([l[0], l[1], l[2], l[3], l[4], l[5]]).unwrap(), expect);
    }

    #[test]
    fn project_preserves_genericity() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let c = random_exact(&mut rng, 3, 6);
            for i in 0..6 {
                let p = c.project(i).unwrap();
                assert!(p.is_generic());
                for s in subsets(5, 2) {
                    let orig: Vec<usize> = s.iter().map(|&j| if j >= i { j + 1 } else { j }).collect();
                    assert_eq!(p.delta(&s).unwrap(), c.delta(&[i, orig[0], orig[1]]).unwrap());
                }
            }
        }
    }

    #[test]
    fn dual_cross_ratio_is_a_fixed_transform() {
        // For 4 points the dual cross-ratio is a fixed Moebius image of the
        // original; find it on the first sample and check the rest.
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let candidates: [fn(GaussRat) -> GaussRat; 6] = [
            |r| r,
            |r| r.inv(),
            |r| GaussRat::from_i64(1) - r,
            |r| (GaussRat::from_i64(1) - r).inv(),
            |r| (r.clone() - GaussRat::from_i64(1)) / r,
            |r| r.clone() / (r - GaussRat::from_i64(1)),
        ];
        let mut which: Option<usize> = None;
        for _ in 0..20 {
            let c = random_exact(&mut rng, 2, 4);
            let r = c.cross_ratio([0, 1, 2, 3]).unwrap();
            let rd = c.dualize().unwrap().cross_ratio([0, 1, 2, 3]).unwrap();
            let hits: Vec<usize> = (0..6).filter(|&k| candidates[k](r.clone()) == rd).collect();
            assert!(!hits.is_empty());
            match which {
                None => which = Some(hits[0]),
                Some(k) => assert!(hits.contains(&k)),
            }
        }
    }

    #[test]
    fn dualize_rejects_non_generic() {
        let c = Configuration::new(
            2,
            vec![
                vec![GaussRat::from_i64(1), GaussRat::from_i64(0)],
                vec![GaussRat::from_i64(2), GaussRat::from_i64(0)],
                vec![GaussRat::from_i64(0), GaussRat::from_i64(1)],
            ],
        )
        .unwrap();
        assert!(matches!(c.dualize(), Err(crate::Error::Degenerate(_))));
    }

    #[test]
    fn float_alternation_is_order_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let w: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = |p: &[usize]| {
            p.iter()
                .enumerate()
                .map(|(i, &j)| w[i] * (j as f64 + 1.0).ln())
                .product::<f64>()
        };
        let a = alternate(6, f).unwrap();
        // same sum accumulated in reverse permutation order
        let perms = permutations(6).unwrap();
        let b: f64 = perms.iter().rev().map(|p| f64::from(p.sign) * f(&p.images)).sum();
        assert!((a - b).abs() <= 1e-14 * perms.iter().map(|p| f(&p.images).abs()).sum::<f64>());
    }
}
