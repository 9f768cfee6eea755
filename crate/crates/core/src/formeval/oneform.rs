//! Weight-three one-forms on configurations of five vectors in `C^2`,
//! evaluated on a configuration-space direction (one perturbation vector per
//! configuration vector).

use num_complex::Complex64;

use super::LogGerm;
use crate::configspace::{alternate, det, Configuration};
use crate::error::{Error, Result};
use crate::polylog::bloch_wigner;

/// One perturbation vector per configuration vector.
pub type ConfigDirection = Vec<Vec<Complex64>>;

fn replace_column(cols: &[&[Complex64]], k: usize, w: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = cols.len();
    (0..n)
        .map(|r| (0..n).map(|c| if c == k { w[r] } else { cols[c][r] }).collect())
        .collect()
}

/// Germ of `Delta(v_{i_1}, ..., v_{i_n})` along `w`:
/// `dDelta(w) = sum_k Delta(..., w_{i_k}, ...)`.
pub fn delta_germ(config: &Configuration<Complex64>, w: &[Vec<Complex64>], indices: &[usize]) -> Result<LogGerm> {
    check_direction(config, w)?;
    let value = config.delta_nonzero(indices)?;
    let cols: Vec<&[Complex64]> = indices.iter().map(|&i| config.vectors()[i].as_slice()).collect();
    let dvalue: Complex64 = (0..indices.len())
        .map(|k| det(&replace_column(&cols, k, &w[indices[k]])))
        .sum::<Complex64>()
        * *config.volume_form();
    Ok(LogGerm {
        log_abs: value.norm().ln(),
        dlog: vec![dvalue / value],
    })
}

fn check_direction(config: &Configuration<Complex64>, w: &[Vec<Complex64>]) -> Result<()> {
    if w.len() != config.len() || w.iter().any(|v| v.len() != config.dim()) {
        return Err(Error::Size(format!(
            "direction needs {} vectors of length {}",
            config.len(),
            config.dim()
        )));
    }
    Ok(())
}

/// Values and germs of all `Delta(i, j)` for five vectors in dimension 2.
struct PairTable {
    value: [[Complex64; 5]; 5],
    germ: Vec<Vec<Option<LogGerm>>>,
}

impl PairTable {
    fn new(config: &Configuration<Complex64>, w: &[Vec<Complex64>]) -> Result<Self> {
        if config.dim() != 2 || config.len() != 5 {
            return Err(Error::Size("expected five vectors in dimension 2".into()));
        }
        check_direction(config, w)?;
        let mut value = [[Complex64::new(0.0, 0.0); 5]; 5];
        let mut germ = vec![vec![None; 5]; 5];
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    value[i][j] = config.delta_nonzero(&[i, j])?;
                    germ[i][j] = Some(delta_germ(config, w, &[i, j])?);
                }
            }
        }
        Ok(PairTable { value, germ })
    }

    fn g(&self, i: usize, j: usize) -> &LogGerm {
        self.germ[i][j].as_ref().expect("distinct indices")
    }

    /// `r(v_a, v_b, v_c, v_d) = Delta(a,c) Delta(b,d) / (Delta(a,d) Delta(b,c))`
    /// with its complex `dlog`.
    fn cross_ratio(&self, a: usize, b: usize, c: usize, d: usize) -> (Complex64, Complex64) {
        let v = &self.value;
        let r = v[a][c] * v[b][d] / (v[a][d] * v[b][c]);
        let dl = self.g(a, c).dlog[0] + self.g(b, d).dlog[0] - self.g(a, d).dlog[0] - self.g(b, c).dlog[0];
        (r, dl)
    }
}

/// The weight-three Grassmannian one-form on `(l_0, ..., l_4)`:
/// `Alt_5{ -(1/12) D(r(l_0,l_1,l_2,l_4)) d arg Delta(1,4)
///         - (1/3) log|Delta(0,1)| log|Delta(1,4)| dlog|Delta(2,4)| }`.
///
/// `D` times `d arg` is the real form of `(i D) (d i arg)`.
pub fn oneform_grass_13(config: &Configuration<Complex64>, w: &[Vec<Complex64>]) -> Result<f64> {
    let t = PairTable::new(config, w)?;
    alternate(5, |s| {
        let (r, _) = t.cross_ratio(s[0], s[1], s[2], s[4]);
        -bloch_wigner(r) / 12.0 * t.g(s[1], s[4]).darg(0)
            - t.g(s[0], s[1]).log_abs * t.g(s[1], s[4]).log_abs * t.g(s[2], s[4]).dlog_abs(0) / 3.0
    })
}

/// The Lie-motivic one-form
/// `(1/12) Alt_5{ -D(r) d arg Delta(1,4) - (1/3) log|Delta(1,4)| alpha(r) }`,
/// `r = r(l_0,l_1,l_2,l_4)`, `alpha(f) = log|f| dlog|1-f| - log|1-f| dlog|f|`.
pub fn oneform_lie_13(config: &Configuration<Complex64>, w: &[Vec<Complex64>]) -> Result<f64> {
    let t = PairTable::new(config, w)?;
    for s in crate::configspace::permutations(5)? {
        let p = &s.images;
        let (r, _) = t.cross_ratio(p[0], p[1], p[2], p[4]);
        if (Complex64::new(1.0, 0.0) - r).norm() < 1e-14 || r.norm() < 1e-300 || !r.norm().is_finite() {
            return Err(Error::CrossRatioDegenerate(format!("r = {r} at labels {p:?}")));
        }
    }
    alternate(5, |s| {
        let (r, dlog_r) = t.cross_ratio(s[0], s[1], s[2], s[4]);
        let one_minus = Complex64::new(1.0, 0.0) - r;
        let dlog_one_minus = -r / one_minus * dlog_r;
        let alpha = r.norm().ln() * dlog_one_minus.re - one_minus.norm().ln() * dlog_r.re;
        let d14 = t.g(s[1], s[4]);
        (-bloch_wigner(r) * d14.darg(0) - d14.log_abs * alpha / 3.0) / 12.0
    })
}

/// `d Alt_5{ log|Delta(2,4)| log|Delta(1,4)| log|Delta(0,2)| }(w)`, analytically.
pub fn log_product_derivative(config: &Configuration<Complex64>, w: &[Vec<Complex64>]) -> Result<f64> {
    let t = PairTable::new(config, w)?;
    alternate(5, |s| {
        let a = t.g(s[2], s[4]);
        let b = t.g(s[1], s[4]);
        let c = t.g(s[0], s[2]);
        a.dlog_abs(0) * b.log_abs * c.log_abs + a.log_abs * b.dlog_abs(0) * c.log_abs + a.log_abs * b.log_abs * c.dlog_abs(0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rc(rng: &mut ChaCha8Rng) -> Complex64 {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }

    fn sample(rng: &mut ChaCha8Rng) -> (Configuration<Complex64>, ConfigDirection) {
        let c = Configuration::new(2, (0..5).map(|_| vec![rc(rng), rc(rng)]).collect()).unwrap();
        let w = (0..5).map(|_| vec![rc(rng), rc(rng)]).collect();
        (c, w)
    }

    #[test]
    fn delta_germ_matches_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (c, w) = sample(&mut rng);
        let g = delta_germ(&c, &w, &[3, 1]).unwrap();
        let h = 1e-6;
        let at = |s: f64| c.perturbed(&w, Complex64::new(s, 0.0)).unwrap().delta(&[3, 1]).unwrap();
        let fd = (at(h) - at(-h)) / (2.0 * h) / at(0.0);
        assert!((fd - g.dlog[0]).norm() < 1e-7);
    }

    #[test]
    fn zero_direction_gives_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let (c, _) = sample(&mut rng);
        let zero = vec![vec![Complex64::new(0.0, 0.0); 2]; 5];
        assert_eq!(oneform_grass_13(&c, &zero).unwrap(), 0.0);
        assert_eq!(oneform_lie_13(&c, &zero).unwrap(), 0.0);
        assert_eq!(log_product_derivative(&c, &zero).unwrap(), 0.0);
    }

    #[test]
    fn scaling_flow_is_invisible() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (c, _) = sample(&mut rng);
        // real rescaling of each vector; phase rotations move the d arg terms
        let lambdas: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let w: ConfigDirection = c
            .vectors()
            .iter()
            .zip(&lambdas)
            .map(|(v, l)| v.iter().map(|x| x * l).collect())
            .collect();
        assert!(oneform_grass_13(&c, &w).unwrap().abs() < 1e-10);
        assert!(oneform_lie_13(&c, &w).unwrap().abs() < 1e-10);
    }

    #[test]
    fn equal_vectors_are_degenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (c, w) = sample(&mut rng);
        let mut vs = c.vectors().to_vec();
        vs[3] = vs[1].clone();
        let d = Configuration::new(2, vs).unwrap();
        assert!(matches!(oneform_lie_13(&d, &w), Err(Error::Degenerate(_))));
        assert!(matches!(oneform_grass_13(&d, &w), Err(Error::Degenerate(_))));
    }
}
