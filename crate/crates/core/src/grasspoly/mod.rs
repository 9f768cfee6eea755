//! The Grassmannian di- and trilogarithm, their Lie-motivic relatives, and
//! harnesses for the identities relating them.

mod equations;
mod special;

pub use equations::{
    check_drop_equation, check_oneform_difference, check_projection_equation, check_weight2_oneform, check_weight3_twoform,
    EquationResidual, TrilogFn,
};
pub use special::{richardson_to_zero, special_config, special_stratum_value, DEFAULT_EPSILONS};

use std::any::Any;
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use serde::Serialize;

use crate::configspace::{permutations, AltValue, Configuration, GaussRat, Scalar};
use crate::error::{Error, Result};
use crate::formeval::FunctionSystem;
use crate::polylog::{bloch_wigner, sv_trilog};
use crate::quad::{integrate_cp1, integrate_cp2, Integrand, QuadratureEstimate};

/// All `Delta(a, b, c)` of six vectors in dimension 3, keyed by bitmask.
struct DeltaTable<S> {
    values: Vec<Option<S>>,
}

impl<S: Scalar> DeltaTable<S> {
    fn new(config: &Configuration<S>) -> Result<Self> {
        if config.dim() != 3 || config.len() != 6 {
            return Err(Error::Size(format!(
                "expected 6 vectors in dimension 3, got {} in dimension {}",
                config.len(),
                config.dim()
            )));
        }
        let mut values = vec![None; 64];
        for idx in crate::configspace::subsets(6, 3) {
            let mask = idx.iter().map(|i| 1usize << i).sum::<usize>();
            values[mask] = Some(config.delta_nonzero(&idx)?);
        }
        Ok(DeltaTable { values })
    }

    fn get(&self, a: usize, b: usize, c: usize) -> S {
        let v = self.values[(1 << a) | (1 << b) | (1 << c)].clone().expect("distinct labels");
        // parity of the permutation sorting (a, b, c)
        let inversions = (a > b) as u8 + (a > c) as u8 + (b > c) as u8;
        if inversions.is_multiple_of(2) {
            v
        } else {
            -v
        }
    }

    fn ln_abs(&self, a: usize, b: usize, c: usize) -> f64 {
        self.values[(1 << a) | (1 << b) | (1 << c)]
            .as_ref()
            .expect("distinct labels")
            .to_c64()
            .norm()
            .ln()
    }

    /// `Delta(013) Delta(124) Delta(205) / (Delta(014) Delta(125) Delta(203))`
    /// on relabelled vectors.
    fn triple_ratio(&self, p: &[usize]) -> S {
        let d = |a: usize, b: usize, c: usize| self.get(p[a], p[b], p[c]);
        (d(0, 1, 3) * d(1, 2, 4) * d(2, 0, 5)) / (d(0, 1, 4) * d(1, 2, 5) * d(2, 0, 3))
    }
}

#[derive(PartialEq, Eq, Hash)]
enum RatioKey {
    Exact(GaussRat),
    Float(u64, u64),
}

/// Rounds to 12 significant digits.
fn quantize(x: f64) -> u64 {
    if x == 0.0 || !x.is_finite() {
        return x.to_bits();
    }
    let unit = 10f64.powi(x.abs().log10().floor() as i32 - 11);
    ((x / unit).round() * unit).to_bits()
}

fn ratio_key<S: Scalar>(r: &S) -> RatioKey {
    match (r as &dyn Any).downcast_ref::<GaussRat>() {
        Some(g) => RatioKey::Exact(g.clone()),
        None => {
            let z = r.to_c64();
            RatioKey::Float(quantize(z.re), quantize(z.im))
        }
    }
}

/// `L^G_3 = (1/90) Alt_6 L_3(triple ratio)`.
///
/// Equal ratio values are evaluated once (exact values on the exact
/// backend, 12-digit rounding on floats).
pub fn lie_trilog<S: Scalar>(config: &Configuration<S>) -> Result<f64> {
    let table = DeltaTable::new(config)?;
    let mut cache: HashMap<RatioKey, f64> = HashMap::new();
    let mut terms = Vec::with_capacity(720);
    for p in permutations(6)? {
        let r = table.triple_ratio(&p.images);
        if (r.clone() - S::one()).is_negligible(1.0) {
            return Err(Error::CrossRatioDegenerate(format!(
                "triple ratio equals 1 at labels {:?}",
                p.images
            )));
        }
        let v = *cache.entry(ratio_key(&r)).or_insert_with(|| sv_trilog(r.to_c64()));
        terms.push(if p.sign > 0 { v } else { -v });
    }
    Ok(f64::reduce(terms) / 90.0)
}

/// `(1/9) Alt_6 log|Delta(012)| log|Delta(123)| log|Delta(234)|`.
pub fn difference_term<S: Scalar>(config: &Configuration<S>) -> Result<f64> {
    let table = DeltaTable::new(config)?;
    let terms: Vec<f64> = permutations(6)?
        .iter()
        .map(|p| {
            let s = &p.images;
            let v = table.ln_abs(s[0], s[1], s[2]) * table.ln_abs(s[1], s[2], s[3]) * table.ln_abs(s[2], s[3], s[4]);
            if p.sign > 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    Ok(f64::reduce(terms) / 9.0)
}

/// Closed form of the Grassmannian trilogarithm and its constituents.
#[derive(Debug, Clone, Serialize)]
pub struct TrilogReport {
    pub closed: f64,
    pub lie: f64,
    pub diff_term: f64,
    /// `(2 / (3 pi^2)) int_{CP^2}` of the trilog kernel, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<QuadratureEstimate>,
    pub residuals: BTreeMap<String, f64>,
}

/// `lie_trilog - difference_term`.
pub fn grass_trilog_closed<S: Scalar>(config: &Configuration<S>) -> Result<TrilogReport> {
    let lie = lie_trilog(config)?;
    let diff_term = difference_term(config)?;
    let closed = lie - diff_term;
    let residuals = BTreeMap::from([("closed_identity".to_string(), closed - (lie - diff_term))]);
    Ok(TrilogReport {
        closed,
        lie,
        diff_term,
        numeric: None,
        residuals,
    })
}

/// Normalization between the `CP^2` integral and the trilogarithm.
pub const TRILOG_NORMALIZATION: f64 = 2.0 / (3.0 * PI * PI);

/// The closed form together with the rescaled `CP^2` integral of
/// `log|f_1| dlog|f_2| ^ ... ^ dlog|f_5|`, `f_i = l_i / l_0`.
pub fn grass_trilog_numeric<S: Scalar>(config: &Configuration<S>, budget: u64, seed: u64) -> Result<TrilogReport> {
    let mut report = grass_trilog_closed(config)?;
    let intg = Integrand::trilog(FunctionSystem::from_configuration(&config.to_float())?)?;
    let mut e = integrate_cp2(&intg, budget, seed)?;
    e.value *= TRILOG_NORMALIZATION;
    e.sigma *= TRILOG_NORMALIZATION;
    report
        .residuals
        .insert("numeric_minus_closed".into(), e.value - report.closed);
    report.numeric = Some(e);
    Ok(report)
}

/// How [`grass_dilog`] computes its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DilogMode {
    Closed,
    Numeric,
}

pub const DEFAULT_CP1_BUDGET: u64 = 100_000;
pub const DEFAULT_CP1_TOL: f64 = 1e-6;

/// `D(r(l_0, l_1, l_2, l_3))` for four covectors in dimension 2.
pub fn grass_dilog_closed<S: Scalar>(config: &Configuration<S>) -> Result<f64> {
    check_dilog_shape(config)?;
    Ok(bloch_wigner(config.cross_ratio([0, 1, 2, 3])?.to_c64()))
}

/// `-(1/pi) int_{CP^1} log|f_1| dlog|f_2| ^ dlog|f_3|`; value and error are
/// both rescaled.
pub fn grass_dilog_numeric<S: Scalar>(config: &Configuration<S>, budget: u64, tol: f64) -> Result<QuadratureEstimate> {
    check_dilog_shape(config)?;
    if !config.is_generic() {
        return Err(Error::Degenerate("two of the covectors are proportional".into()));
    }
    let intg = Integrand::dilog(FunctionSystem::from_configuration(&config.to_float())?)?;
    let mut e = integrate_cp1(&intg, budget, tol * PI)?;
    e.value /= -PI;
    e.sigma /= PI;
    Ok(e)
}

pub fn grass_dilog<S: Scalar>(config: &Configuration<S>, mode: DilogMode) -> Result<f64> {
    match mode {
        DilogMode::Closed => grass_dilog_closed(config),
        DilogMode::Numeric => Ok(grass_dilog_numeric(config, DEFAULT_CP1_BUDGET, DEFAULT_CP1_TOL)?.value),
    }
}

fn check_dilog_shape<S: Scalar>(config: &Configuration<S>) -> Result<()> {
    if config.dim() != 2 || config.len() != 4 {
        return Err(Error::Size(format!(
            "expected 4 covectors in dimension 2, got {} in dimension {}",
            config.len(),
            config.dim()
        )));
    }
    Ok(())
}
