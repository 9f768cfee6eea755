//! Exact verification of the algebraic identities behind the Grassmannian
//! polylogarithms: rational arithmetic and formal symbols only.

mod koszul;
mod lemma;
mod leray;
mod rforms;

pub use koszul::{kappa1, kappa2, kappa2_split, verify_koszul_lemma, DeltaGen, TensorWord};
pub use lemma::{
    b_coefficient, binomial, c_coefficient, dn_closed_form, dn_sum, verify_com_id, verify_dn_constant, verify_lemma_xj,
    verify_lemma_yj, FormalCovectorModel,
};
pub use leray::verify_leray_decomposition;
pub use rforms::{
    conjugate, pi_projection, r_definition, r_example, r_holomorphic, r_reduced, verify_prop_rn_presentations, wedge,
    FormMonomial, FormSum, OneForm,
};

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::configspace::GaussRat;

/// Outcome of one exact verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactCheck {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// The first mismatch found, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

impl ExactCheck {
    fn new(name: impl Into<String>) -> Self {
        ExactCheck {
            name: name.into(),
            passed: true,
            cases: 0,
            mismatch: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.mismatch = Some(detail());
        }
    }

    fn absorb(&mut self, other: ExactCheck) {
        self.cases += other.cases;
        if !other.passed && self.passed {
            self.passed = false;
            self.mismatch = other.mismatch.map(|m| format!("{}: {m}", other.name));
        }
    }
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn random_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    GaussRat::from_ints(
        rng.gen_range(-7..=7),
        rng.gen_range(1..=4),
        rng.gen_range(-7..=7),
        rng.gen_range(1..=4),
    )
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<GaussRat> {
    (0..n).map(|_| random_gauss(rng)).collect()
}

/// Determinant over `Q` by fraction-exact elimination.
fn det_q(mut m: Vec<Vec<BigRational>>) -> BigRational {
    use num_traits::{One, Zero};
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for j in c..n {
                let delta = &f * &m[c][j];
                m[r][j] -= delta;
            }
        }
    }
    det
}

/// Determinant over `Q(i)` by fraction-exact elimination.
fn det_gauss(mut m: Vec<Vec<GaussRat>>) -> GaussRat {
    use crate::configspace::Scalar;
    let n = m.len();
    let mut det = GaussRat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !Scalar::is_zero(&m[r][c])) else {
            return GaussRat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det = det * pivot.clone();
        let inv = pivot.inv();
        for r in c + 1..n {
            if Scalar::is_zero(&m[r][c]) {
                continue;
            }
            let f = m[r][c].clone() * inv.clone();
            for j in c..n {
                let delta = f.clone() * m[c][j].clone();
                m[r][j] = m[r][j].clone() - delta;
            }
        }
    }
    det
}
