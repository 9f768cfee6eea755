//! Pointwise evaluation of the differential forms built from `log|f|`,
//! `dlog|f|` and `d arg f`, as multilinear functionals on explicit tangent
//! vectors.
//!
//! Normalization: a value of "weight" `n` lives in `R(n-1) = (2 pi i)^{n-1} R`.
//! It is stored as a real number: unchanged for odd `n`, divided by `i` for
//! even `n`. [`FormValue`] carries the weight so the two cases are never mixed.

mod leray;
mod oneform;
mod rform;

pub use leray::{euler_contraction, leray, leray_by_determinant};
pub use oneform::{delta_germ, log_product_derivative, oneform_grass_13, oneform_lie_13, ConfigDirection};
pub use rform::{d_r_check, eval_r, eval_r_germs, Presentation};

use num_complex::Complex64;

use crate::configspace::Configuration;
use crate::error::{Error, Result};
use crate::polylog;

/// Below this modulus a linear form counts as vanishing at the point.
pub const SINGULAR_EPS: f64 = 1e-300;

/// Real representative of an `R(n-1)`-valued quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormValue {
    pub value: f64,
    pub weight: usize,
}

impl FormValue {
    pub fn is_even(&self) -> bool {
        self.weight.is_multiple_of(2)
    }

    /// The complex number this value stands for.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_even() {
            Complex64::new(0.0, self.value)
        } else {
            Complex64::new(self.value, 0.0)
        }
    }
}

/// `pi_n(z)`: `Re z` for odd `n`, `i Im z` for even `n`.
pub fn pi_n(n: usize, z: Complex64) -> FormValue {
    let value = if n.is_multiple_of(2) { z.im } else { z.re };
    FormValue { value, weight: n }
}

/// Linear forms `l_0, ..., l_m` on `C^n` with a designated denominator `l_d`;
/// the functions are `f_i = l_i / l_d` for `i != d`, in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSystem {
    dim: usize,
    forms: Vec<Vec<Complex64>>,
    denominator: usize,
}

impl FunctionSystem {
    pub fn new(dim: usize, forms: Vec<Vec<Complex64>>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Domain("function systems need dimension >= 2".into()));
        }
        if forms.len() < 2 {
            return Err(Error::Domain("need a denominator and at least one numerator".into()));
        }
        for (i, l) in forms.iter().enumerate() {
            if l.len() != dim {
                return Err(Error::Domain(format!("form {i} has length {} but dim is {dim}", l.len())));
            }
            if l.iter().all(|x| x.norm() == 0.0) {
                return Err(Error::Degenerate(format!("form {i} is zero")));
            }
        }
        Ok(FunctionSystem {
            dim,
            forms,
            denominator: 0,
        })
    }

    /// Builds the system from the vectors of a configuration, read as covectors.
    pub fn from_configuration(c: &Configuration<Complex64>) -> Result<Self> {
        Self::new(c.dim(), c.vectors().to_vec())
    }

    pub fn with_denominator(mut self, d: usize) -> Result<Self> {
        if d >= self.forms.len() {
            return Err(Error::Index {
                index: d,
                len: self.forms.len(),
            });
        }
        self.denominator = d;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[Vec<Complex64>] {
        &self.forms
    }

    pub fn denominator(&self) -> usize {
        self.denominator
    }

    /// Number of functions `f_i`.
    pub fn len(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn numerator_indices(&self) -> Vec<usize> {
        (0..self.forms.len()).filter(|&i| i != self.denominator).collect()
    }

    /// Complex conjugate of every coefficient.
    pub fn conjugated(&self) -> Self {
        FunctionSystem {
            dim: self.dim,
            forms: self.forms.iter().map(|l| l.iter().map(Complex64::conj).collect()).collect(),
            denominator: self.denominator,
        }
    }

    /// Germs of `f_1, ..., f_m` at `p` along the tangent vectors `ws`.
    pub fn germs(&self, p: &ChartPoint, ws: &[TangentVector]) -> Result<Vec<LogGerm>> {
        self.check_point(p)?;
        let x = p.homogeneous();
        let dirs = ws.iter().map(|w| p.lift(w)).collect::<Result<Vec<_>>>()?;
        let den = LogGerm::of_linear(&self.forms[self.denominator], &x, &dirs)?;
        self.numerator_indices()
            .into_iter()
            .map(|i| Ok(LogGerm::of_linear(&self.forms[i], &x, &dirs)?.ratio(&den)))
            .collect()
    }

    fn check_point(&self, p: &ChartPoint) -> Result<()> {
        if p.t.len() + 1 != self.dim {
            return Err(Error::Domain(format!(
                "chart point has {} coordinates, expected {}",
                p.t.len(),
                self.dim - 1
            )));
        }
        Ok(())
    }
}

/// Affine coordinates `t` in the chart `x_chart = 1` of `CP^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub chart: usize,
    pub t: Vec<Complex64>,
}

impl ChartPoint {
    pub fn new(chart: usize, t: Vec<Complex64>) -> Result<Self> {
        if chart > t.len() {
            return Err(Error::Index {
                index: chart,
                len: t.len() + 1,
            });
        }
        if t.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("chart point must be finite".into()));
        }
        Ok(ChartPoint { chart, t })
    }

    /// The lift `x` with `x_chart = 1`.
    pub fn homogeneous(&self) -> Vec<Complex64> {
        let mut x = self.t.clone();
        x.insert(self.chart, Complex64::new(1.0, 0.0));
        x
    }

    /// The complex direction in `C^n` induced by a chart tangent vector.
    pub fn lift(&self, w: &TangentVector) -> Result<Vec<Complex64>> {
        if w.0.len() != 2 * self.t.len() {
            return Err(Error::Domain(format!(
                "tangent vector has {} components, expected {}",
                w.0.len(),
                2 * self.t.len()
            )));
        }
        let mut d = w.complex();
        d.insert(self.chart, Complex64::new(0.0, 0.0));
        Ok(d)
    }

    /// `p + h w` in the same chart.
    pub fn shifted(&self, w: &TangentVector, h: f64) -> ChartPoint {
        let t = self.t.iter().zip(w.complex()).map(|(a, b)| a + b * h).collect();
        ChartPoint { chart: self.chart, t }
    }
}

/// Real tangent vector in chart coordinates: `(Re dt_1, Im dt_1, Re dt_2, ...)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector(pub Vec<f64>);

impl TangentVector {
    pub fn from_complex(d: &[Complex64]) -> Self {
        TangentVector(d.iter().flat_map(|z| [z.re, z.im]).collect())
    }

    pub fn complex(&self) -> Vec<Complex64> {
        self.0
            .chunks(2)
            .map(|c| Complex64::new(c[0], c.get(1).copied().unwrap_or(0.0)))
            .collect()
    }

    pub fn scaled(&self, s: f64) -> Self {
        TangentVector(self.0.iter().map(|x| x * s).collect())
    }
}

/// First-order data of a function `f` at a point: `log|f|` and `dlog f` on
/// each of a fixed list of tangent vectors. `dlog|f| = Re dlog f` and
/// `d arg f = Im dlog f`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogGerm {
    pub log_abs: f64,
    pub dlog: Vec<Complex64>,
}

impl LogGerm {
    /// Germ of the linear function `x -> <l, x>` along complex directions.
    pub fn of_linear(l: &[Complex64], x: &[Complex64], dirs: &[Vec<Complex64>]) -> Result<Self> {
        let pair = |v: &[Complex64]| l.iter().zip(v).map(|(a, b)| a * b).sum::<Complex64>();
        let value = pair(x);
        if value.norm() < SINGULAR_EPS || !value.norm().is_finite() {
            return Err(Error::Singularity(format!(
                "linear form vanishes at the point (|l(x)| = {:e})",
                value.norm()
            )));
        }
        Ok(LogGerm {
            log_abs: value.norm().ln(),
            dlog: dirs.iter().map(|d| pair(d) / value).collect(),
        })
    }

    /// Germ of `self / den`.
    pub fn ratio(&self, den: &LogGerm) -> Self {
        LogGerm {
            log_abs: self.log_abs - den.log_abs,
            dlog: self.dlog.iter().zip(&den.dlog).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn dlog_abs(&self, k: usize) -> f64 {
        self.dlog[k].re
    }

    pub fn darg(&self, k: usize) -> f64 {
        self.dlog[k].im
    }
}

/// `dlog|l|(w)` at `p`.
pub fn dlog_abs(l: &[Complex64], p: &ChartPoint, w: &TangentVector) -> Result<f64> {
    Ok(LogGerm::of_linear(l, &p.homogeneous(), &[p.lift(w)?])?.dlog_abs(0))
}

/// `d arg l(w)` at `p`.
pub fn darg(l: &[Complex64], p: &ChartPoint, w: &TangentVector) -> Result<f64> {
    Ok(LogGerm::of_linear(l, &p.homogeneous(), &[p.lift(w)?])?.darg(0))
}

/// `{x}_2 -> D(x)`: the weight-two regulator in the real normalization
/// (the imaginary value is `i D(x)`).
pub fn regulator_r2_1(x: Complex64) -> f64 {
    polylog::bloch_wigner(x)
}

/// `{x}_3 -> L_3(x)`.
pub fn regulator_r3_1(x: Complex64) -> f64 {
    polylog::sv_trilog(x)
}
