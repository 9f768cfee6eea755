use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{det_q, random_gauss, random_vector, ExactCheck};
use crate::configspace::{permutations, GaussRat, Scalar};
use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `c_{k,n} = C(n, 2k+1) / n!`.
pub fn c_coefficient(k: u64, n: u64) -> BigRational {
    BigRational::new(binomial(n, 2 * k + 1), factorial(n))
}

/// `b_{j,n} = (2n)! C(n, j) / C(2n, 2j)`.
pub fn b_coefficient(j: u64, n: u64) -> BigRational {
    BigRational::new(factorial(2 * n) * binomial(n, j), binomial(2 * n, 2 * j))
}

/// `sum_{k<n} (-1)^{n-k} c_{k,2n-1} b_{k,n-1}`.
pub fn dn_sum(n: u64) -> BigRational {
    (0..n).fold(BigRational::zero(), |acc, k| {
        let t = c_coefficient(k, 2 * n - 1) * b_coefficient(k, n - 1);
        if (n - k).is_multiple_of(2) {
            acc + t
        } else {
            acc - t
        }
    })
}

/// `(-1)^n 4^{n-1} ((n-1)!)^2 / (2n-1)!`.
pub fn dn_closed_form(n: u64) -> BigRational {
    let f = factorial(n - 1);
    let v = BigRational::new(BigInt::from(4).pow((n - 1) as u32) * &f * &f, factorial(2 * n - 1));
    if n.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// `C(2n-i, p-i) C(2n, i) = C(2n, p) C(p, i)` for all `0 <= i <= p <= 2n <= max_2n`.
pub fn verify_com_id(max_2n: u64) -> ExactCheck {
    let mut check = ExactCheck::new("binomial_identity");
    for m in (2..=max_2n).step_by(2) {
        for p in 0..=m {
            for i in 0..=p {
                let lhs = binomial(m - i, p - i) * binomial(m, i);
                let rhs = binomial(m, p) * binomial(p, i);
                check.record(lhs == rhs, || format!("2n={m} p={p} i={i}: {lhs} != {rhs}"));
            }
        }
    }
    check
}

pub fn verify_dn_constant(max_n: u64) -> Result<ExactCheck> {
    if max_n == 0 {
        return Err(Error::Domain("max_n must be at least 1".into()));
    }
    let mut check = ExactCheck::new("dn_constant");
    for n in 1..=max_n {
        let (s, c) = (dn_sum(n), dn_closed_form(n));
        check.record(s == c, || format!("n={n}: sum {s} != closed form {c}"));
    }
    check.absorb(verify_com_id(12));
    Ok(check)
}

/// `2n` functions on an `n`-dimensional complex manifold, seen at one point
/// through their values and complex gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalCovectorModel {
    pub n: usize,
    pub values: Vec<GaussRat>,
    pub gradients: Vec<Vec<GaussRat>>,
}

impl FormalCovectorModel {
    pub fn new(values: Vec<GaussRat>, gradients: Vec<Vec<GaussRat>>) -> Result<Self> {
        let n = gradients.first().map_or(0, Vec::len);
        if n == 0 || values.len() != gradients.len() || gradients.iter().any(|g| g.len() != n) {
            return Err(Error::Size("values and gradients do not match".into()));
        }
        if values.iter().any(Scalar::is_zero) {
            return Err(Error::Domain("function values must be nonzero".into()));
        }
        Ok(FormalCovectorModel { n, values, gradients })
    }

    /// `2n` random functions; zero values are redrawn.
    pub fn random(n: usize, rng: &mut ChaCha8Rng) -> Self {
        let values = (0..2 * n)
            .map(|_| loop {
                let v = random_gauss(rng);
                if !Scalar::is_zero(&v) {
                    break v;
                }
            })
            .collect();
        let gradients = (0..2 * n).map(|_| random_vector(rng, n)).collect();
        FormalCovectorModel { n, values, gradients }
    }

    fn dlog(&self, k: usize) -> Vec<GaussRat> {
        let inv = self.values[k].inv();
        self.gradients[k].iter().map(|c| c.clone() * inv.clone()).collect()
    }

    /// Values of `dlog|f_k|` (`arg = false`) or `darg f_k` on the real basis
    /// `d/dx_1, d/dy_1, ..., d/dx_n, d/dy_n`.
    pub fn real_form(&self, k: usize, arg: bool) -> Vec<BigRational> {
        self.dlog(k)
            .into_iter()
            .flat_map(|g| {
                let gi = g.mul_i();
                if arg {
                    [g.im, gi.im]
                } else {
                    [g.re, gi.re]
                }
            })
            .collect()
    }

    /// `Alt_{2n}` of the wedge with `logs` leading `dlog|f|` factors and
    /// `darg f` factors after, on the real basis.
    pub fn alternated_wedge(&self, logs: usize) -> Result<BigRational> {
        let m = 2 * self.n;
        let rows: Vec<[Vec<BigRational>; 2]> = (0..m).map(|k| [self.real_form(k, false), self.real_form(k, true)]).collect();
        let mut total = BigRational::zero();
        for p in permutations(m)? {
            let mat = (0..m)
                .map(|slot| rows[p.images[slot]][usize::from(slot >= logs)].clone())
                .collect();
            let d = det_q(mat);
            if p.sign > 0 {
                total += d;
            } else {
                total -= d;
            }
        }
        Ok(total)
    }

    /// `dlog|f_1| ^ ... ^ dlog|f_{2n}|` on the real basis.
    pub fn log_volume(&self) -> BigRational {
        det_q((0..2 * self.n).map(|k| self.real_form(k, false)).collect())
    }
}

fn check_n(n: usize) -> Result<()> {
    if !(2..=3).contains(&n) {
        return Err(Error::Domain(format!("n must be 2 or 3, got {n}")));
    }
    Ok(())
}

/// Odd number of `dlog|f|` factors: the alternation vanishes.
pub fn verify_lemma_xj(n: usize, seed: u64) -> Result<ExactCheck> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = ExactCheck::new(format!("lemma_xj_n{n}"));
    for draw in 0..5 {
        let model = FormalCovectorModel::random(n, &mut rng);
        for j in 0..n {
            let v = model.alternated_wedge(2 * j + 1)?;
            check.record(v.is_zero(), || format!("draw {draw}, j={j}: {v}"));
        }
    }
    Ok(check)
}

/// Even number `2j` of `dlog|f|` factors: `b_{j,n}` times the `dlog|f|` volume.
pub fn verify_lemma_yj(n: usize, seed: u64) -> Result<ExactCheck> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = ExactCheck::new(format!("lemma_yj_n{n}"));
    for draw in 0..5 {
        let model = FormalCovectorModel::random(n, &mut rng);
        let vol = model.log_volume();
        for j in 0..=n {
            let v = model.alternated_wedge(2 * j)?;
            let expect = b_coefficient(j as u64, n as u64) * &vol;
            check.record(v == expect, || format!("draw {draw}, j={j}: {v} != {expect}"));
        }
    }
    Ok(check)
}
