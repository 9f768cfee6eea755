//! Integration of log-singular top forms over `CP^1` and `CP^2`.
//!
//! Densities are taken with respect to `dx_1 dy_1 ... dx_k dy_k` in affine
//! chart coordinates `t_j = x_j + i y_j`, i.e. the complex orientation.

mod cp1;
mod cp2;
mod gauss;

pub use cp1::{integrate_cp1, integrate_cp1_with, Cp1Options};
pub use cp2::{fubini_study_density, integrate_cp2, integrate_cp2_with, Cp2Options};
pub use gauss::GaussLegendre;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formeval::{ChartPoint, FunctionSystem};

/// Which top form to integrate.
#[derive(Clone)]
pub enum Kernel {
    /// `log|f_1| dlog|f_2| ^ dlog|f_3|` on `CP^1`.
    Dilog,
    /// `log|f_1| dlog|f_2| ^ ... ^ dlog|f_5|` on `CP^2`.
    Trilog,
    /// Density of an arbitrary top form in the chart of the given point.
    Custom(Arc<dyn Fn(&ChartPoint) -> f64 + Send + Sync>),
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::Dilog => write!(f, "Dilog"),
            Kernel::Trilog => write!(f, "Trilog"),
            Kernel::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// A function system together with the kernel built from it.
#[derive(Debug, Clone)]
pub struct Integrand {
    pub fs: FunctionSystem,
    pub kernel: Kernel,
}

impl Integrand {
    pub fn new(fs: FunctionSystem, kernel: Kernel) -> Result<Self> {
        let n = fs.dim();
        let need = 2 * n - 1;
        match kernel {
            Kernel::Dilog if n != 2 || fs.len() != need => {
                return Err(Error::Size(format!(
                    "dilog kernel needs 4 covectors in dimension 2, got {} in {n}",
                    fs.len() + 1
                )))
            }
            Kernel::Trilog if n != 3 || fs.len() != need => {
                return Err(Error::Size(format!(
                    "trilog kernel needs 6 covectors in dimension 3, got {} in {n}",
                    fs.len() + 1
                )))
            }
            _ => {}
        }
        Ok(Integrand { fs, kernel })
    }

    pub fn dilog(fs: FunctionSystem) -> Result<Self> {
        Self::new(fs, Kernel::Dilog)
    }

    pub fn trilog(fs: FunctionSystem) -> Result<Self> {
        Self::new(fs, Kernel::Trilog)
    }

    /// Density at the homogeneous point `x`, in the chart `x_chart = 1`.
    /// `None` on a zero locus.
    pub fn density(&self, x: &[Complex64], chart: usize) -> Option<f64> {
        match &self.kernel {
            Kernel::Custom(f) => {
                let xc = x[chart];
                let t = x
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != chart)
                    .map(|(_, v)| v / xc)
                    .collect();
                Some(f(&ChartPoint { chart, t }))
            }
            _ => log_wedge_density(&self.fs, x, chart),
        }
    }
}

/// `log|f_1| det[dlog|f_j|(e_b)]` with `e_b = d/dx_1, d/dy_1, ...`.
fn log_wedge_density(fs: &FunctionSystem, x: &[Complex64], chart: usize) -> Option<f64> {
    let n = fs.dim();
    let forms = fs.forms();
    let xc = x[chart];
    let pair = |l: &[Complex64]| l.iter().zip(x).map(|(a, b)| a * b).sum::<Complex64>() / xc;
    // g[k] = d log l / d t_k for every coordinate t_k of the chart
    let germ = |l: &[Complex64]| -> Option<(f64, [Complex64; 2])> {
        let v = pair(l);
        if v.norm() < 1e-300 {
            return None;
        }
        let mut g = [Complex64::new(0.0, 0.0); 2];
        for (slot, k) in (0..n).filter(|&k| k != chart).enumerate() {
            g[slot] = l[k] / v;
        }
        Some((v.norm().ln(), g))
    };
    let (den_log, den_g) = germ(&forms[fs.denominator()])?;
    let idx = fs.numerator_indices();
    let (l1, _) = germ(&forms[idx[0]])?;
    let dim_r = 2 * (n - 1);
    let mut m = [[0.0f64; 4]; 4];
    for (row, &i) in idx[1..].iter().enumerate() {
        let (_, g) = germ(&forms[i])?;
        for k in 0..n - 1 {
            let d = g[k] - den_g[k];
            m[row][2 * k] = d.re;
            m[row][2 * k + 1] = -d.im;
        }
    }
    Some((l1 - den_log) * small_det(&mut m, dim_r))
}

/// Determinant of the leading `k x k` block, destroying it.
fn small_det(m: &mut [[f64; 4]; 4], k: usize) -> f64 {
    match k {
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut det = 1.0;
            for c in 0..k {
                let p = (c..k).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap_or(c);
                if m[p][c] == 0.0 {
                    return 0.0;
                }
                if p != c {
                    m.swap(p, c);
                    det = -det;
                }
                det *= m[c][c];
                for r in c + 1..k {
                    let f = m[r][c] / m[c][c];
                    for j in c..k {
                        m[r][j] -= f * m[c][j];
                    }
                }
            }
            det
        }
    }
}

/// Sign convention attached to every estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `(i/2) dz ^ dzbar = dx ^ dy` is positive.
    ComplexStandard,
    Reversed,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::ComplexStandard => 1.0,
            Orientation::Reversed => -1.0,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Orientation::ComplexStandard => "complex-standard",
            Orientation::Reversed => "reversed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    AdaptiveCp1,
    QmcCp2,
}

/// Result of a quadrature run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub sigma: f64,
    pub samples: u64,
    pub method: Method,
    pub orientation: Orientation,
    /// False when the budget ran out before the tolerance was met.
    pub converged: bool,
}

/// Area of `CP^1` under `(i/2) dz ^ dzbar / (1+|z|^2)^2`, computed with the
/// `CP^1` engine; the sign fixes the orientation.
pub fn calibration_integral() -> QuadratureEstimate {
    let fs = FunctionSystem::new(2, vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]; 2])
        .expect("static function system");
    let kernel = Kernel::Custom(Arc::new(|p: &ChartPoint| 1.0 / (1.0 + p.t[0].norm_sqr()).powi(2)));
    let intg = Integrand { fs, kernel };
    cp1::integrate_raw(&intg, &Cp1Options::default(), Orientation::ComplexStandard).expect("smooth calibration integrand")
}

/// The orientation under which the calibration area is positive; computed
/// once per process.
pub fn orientation_calibrate() -> Orientation {
    static ORIENTATION: OnceLock<Orientation> = OnceLock::new();
    *ORIENTATION.get_or_init(|| {
        if calibration_integral().value > 0.0 {
            Orientation::ComplexStandard
        } else {
            Orientation::Reversed
        }
    })
}
