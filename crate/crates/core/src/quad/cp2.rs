//! Randomized quasi-Monte Carlo over `CP^2`.
//!
//! Points are drawn from a mixture of the Fubini–Study measure, one
//! component per singular line that samples the distance to the line
//! uniformly, and one component per crossing of two lines that samples both
//! distances uniformly in a chart centred at the crossing. The mixture
//! density (balance heuristic, fixed per-component allocation) divides the
//! integrand, which cancels the `1/rho` blow-up near each line and the
//! `1/(rho_a rho_b)` blow-up near each crossing. Each of the batches uses the
//! same Halton points under its own Cranley–Patterson shift; the batch spread
//! gives `sigma`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{orientation_calibrate, Integrand, Method, Orientation, QuadratureEstimate};
use crate::error::{Error, Result};

/// Lines whose normals are closer than this (chordal distance) count as coincident.
pub const MIN_LINE_SEPARATION: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Cp2Options {
    pub budget: u64,
    pub seed: u64,
    pub batches: usize,
    /// Share of samples drawn from the Fubini–Study measure.
    pub uniform_weight: f64,
    /// Share of samples drawn near the crossings of two lines.
    pub crossing_weight: f64,
    /// Half-width of the crossing charts, in units of the line normals.
    pub crossing_radius: f64,
    /// Samples closer than this to a singular line contribute zero.
    pub cutoff: f64,
    /// Extra unitary applied to `C^3` before sampling.
    pub rotation: Option<[[Complex64; 3]; 3]>,
}

impl Default for Cp2Options {
    fn default() -> Self {
        Cp2Options {
            budget: 5_000_000,
            seed: 42,
            batches: 16,
            uniform_weight: 0.2,
            crossing_weight: 0.5,
            crossing_radius: 0.3,
            cutoff: 1e-7,
            rotation: None,
        }
    }
}

pub fn integrate_cp2(intg: &Integrand, budget: u64, seed: u64) -> Result<QuadratureEstimate> {
    integrate_cp2_with(
        intg,
        &Cp2Options {
            budget,
            seed,
            ..Cp2Options::default()
        },
    )
}

pub fn integrate_cp2_with(intg: &Integrand, opts: &Cp2Options) -> Result<QuadratureEstimate> {
    integrate_raw(intg, opts, orientation_calibrate())
}

type Frame = [[Complex64; 3]; 3];

enum Component {
    FubiniStudy,
    /// Frame `(e_1, e_2, n)` with `n` the unit normal.
    Line(Frame),
    /// Chart `y = M x` with rows `(q, n_a, n_b)` conjugated, `q` the crossing.
    Crossing {
        m: Frame,
        inverse: Frame,
        det_inverse_sqr: f64,
    },
}
fn herm(a: &[Complex64; 3], b: &[Complex64; 3]) -> Complex64 {
    (0..3).map(|i| a[i].conj() * b[i]).sum()
}

fn normalized(v: [Complex64; 3]) -> [Complex64; 3] {
    let n = herm(&v, &v).re.sqrt();
    v.map(|x| x / n)
}

/// Orthonormal `(e_1, e_2, n)` with `n` the unit normal of `ker l`.
fn line_frame(l: &[Complex64]) -> Frame {
    let n = normalized([l[0].conj(), l[1].conj(), l[2].conj()]);
    let mut basis = vec![n];
    for k in 0..3 {
        if basis.len() == 3 {
            break;
        }
        let mut v = [Complex64::new(0.0, 0.0); 3];
        v[k] = Complex64::new(1.0, 0.0);
        for b in &basis {
            let c = herm(b, &v);
            for i in 0..3 {
                v[i] -= c * b[i];
            }
        }
        if herm(&v, &v).re > 1e-6 {
            basis.push(normalized(v));
        }
    }
    [basis[1], basis[2], basis[0]]
}

/// Distinct unit normals of the lines `l_i = 0`; proportional forms merge.
fn distinct_normals(forms: &[Vec<Complex64>]) -> Result<Vec<[Complex64; 3]>> {
    let mut out: Vec<[Complex64; 3]> = Vec::new();
    for (i, l) in forms.iter().enumerate() {
        let n = normalized([l[0].conj(), l[1].conj(), l[2].conj()]);
        let mut merged = false;
        for m in &out {
            let d = (1.0 - herm(m, &n).norm_sqr()).max(0.0).sqrt();
            if d == 0.0 || d < 1e-15 {
                merged = true;
                break;
            }
            if d < MIN_LINE_SEPARATION {
                return Err(Error::NonGeneric(format!(
                    "line l_{i} = 0 nearly coincides with an earlier line"
                )));
            }
        }
        if !merged {
            out.push(n);
        }
    }
    Ok(out)
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut r = 0.0;
    while i > 0 {
        r += (i % base) as f64 * inv;
        i /= base;
        inv /= base as f64;
    }
    r
}

/// The point on both lines `<n_a, x> = <n_b, x> = 0`.
fn crossing(a: &[Complex64; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    normalized([
        (a[1] * b[2] - a[2] * b[1]).conj(),
        (a[2] * b[0] - a[0] * b[2]).conj(),
        (a[0] * b[1] - a[1] * b[0]).conj(),
    ])
}

fn det3(m: &Frame) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn inverse3(m: &Frame) -> Frame {
    let d = det3(m);
    let c = |r: usize, k: usize| {
        let (r1, r2, k1, k2) = ((r + 1) % 3, (r + 2) % 3, (k + 1) % 3, (k + 2) % 3);
        m[r1][k1] * m[r2][k2] - m[r1][k2] * m[r2][k1]
    };
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| c(j, i) / d))
}

fn apply(m: &Frame, x: &[Complex64; 3]) -> [Complex64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|j| m[i][j] * x[j]).sum())
}

fn crossing_component(a: &[Complex64; 3], b: &[Complex64; 3]) -> Component {
    let q = crossing(a, b);
    let m = [q, *a, *b].map(|row| row.map(|z| z.conj()));
    let inverse = inverse3(&m);
    Component::Crossing {
        m,
        inverse,
        det_inverse_sqr: det3(&inverse).norm_sqr(),
    }
}

fn sample_point(c: &Component, u: [f64; 4], radius: f64) -> [Complex64; 3] {
    let (frame, s) = match c {
        Component::Crossing { inverse, .. } => {
            let y = [
                Complex64::new(1.0, 0.0),
                Complex64::from_polar(radius * u[0], 2.0 * PI * u[2]),
                Complex64::from_polar(radius * u[1], 2.0 * PI * u[3]),
            ];
            return normalized(apply(inverse, &y));
        }
        Component::FubiniStudy => (&IDENTITY, 1.0 - (1.0 - u[0]).sqrt()),
        Component::Line(frame) => (frame, u[0] * u[0]),
    };
    let (sin_eta, cos_eta) = (u[1].sqrt(), (1.0 - u[1]).sqrt());
    let along = Complex64::new((1.0 - s).sqrt(), 0.0);
    let a = along * cos_eta;
    let b = along * Complex64::from_polar(sin_eta, 2.0 * PI * u[2]);
    let n = Complex64::from_polar(s.sqrt(), 2.0 * PI * u[3]);
    [0, 1, 2].map(|i| a * frame[0][i] + b * frame[1][i] + n * frame[2][i])
}

/// Density of a component relative to the Fubini–Study measure at the unit
/// vector `x`; `None` inside the cutoff around a line.
fn relative_density(c: &Component, x: &[Complex64; 3], radius: f64, cutoff: f64) -> Option<f64> {
    match c {
        Component::FubiniStudy => Some(1.0),
        Component::Line(frame) => {
            let s = herm(&frame[2], x).norm_sqr();
            if s.sqrt() < cutoff {
                return None;
            }
            Some(1.0 / (4.0 * s.sqrt() * (1.0 - s).max(1e-300)))
        }
        Component::Crossing { m, det_inverse_sqr, .. } => {
            // chart density 1/(4 pi^2 R^2 rho_a rho_b) over the FS density
            // (2/pi^2) |det A|^2 / |A(1, t)|^6 with |A(1, t)| = 1/|y_0|
            let y = apply(m, x);
            let (ta, tb) = ((y[1] / y[0]).norm(), (y[2] / y[0]).norm());
            if ta > radius || tb > radius {
                return Some(0.0);
            }
            Some(1.0 / (8.0 * radius * radius * ta * tb * det_inverse_sqr * y[0].norm_sqr().powi(3)))
        }
    }
}

const IDENTITY: Frame = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
];

/// Probability density of the Fubini–Study measure in an affine chart.
pub fn fubini_study_density(t_norm_sqr: f64) -> f64 {
    2.0 / (PI * PI * (1.0 + t_norm_sqr).powi(3))
}

fn integrate_raw(intg: &Integrand, opts: &Cp2Options, orientation: Orientation) -> Result<QuadratureEstimate> {
    if intg.fs.dim() != 3 {
        return Err(Error::Size(format!(
            "CP^2 integration needs dimension 3, got {}",
            intg.fs.dim()
        )));
    }
    if opts.batches < 2 {
        return Err(Error::Domain("need at least two batches for an error estimate".into()));
    }
    let mut forms = intg.fs.forms().to_vec();
    if let Some(u) = opts.rotation {
        // l'(U x) = l(x)
        forms = forms
            .iter()
            .map(|l| (0..3).map(|j| (0..3).map(|i| l[i] * u[j][i].conj()).sum()).collect())
            .collect();
    }
    let rotated = Integrand {
        fs: crate::formeval::FunctionSystem::new(3, forms.clone())?.with_denominator(intg.fs.denominator())?,
        kernel: intg.kernel.clone(),
    };
    let normals = distinct_normals(&forms)?;
    let lines: Vec<Component> = normals
        .iter()
        .map(|n| Component::Line(line_frame(&n.map(|z| z.conj()))))
        .collect();
    let crossings: Vec<Component> = (0..normals.len())
        .flat_map(|a| (a + 1..normals.len()).map(move |b| (a, b)))
        .map(|(a, b)| crossing_component(&normals[a], &normals[b]))
        .collect();
    let crossing_weight = if crossings.is_empty() { 0.0 } else { opts.crossing_weight };
    let line_weight = if lines.is_empty() {
        0.0
    } else {
        1.0 - opts.uniform_weight - crossing_weight
    };
    let uniform_weight = 1.0 - line_weight - crossing_weight;
    let mut shares = vec![uniform_weight];
    shares.extend(lines.iter().map(|_| line_weight / lines.len() as f64));
    shares.extend(crossings.iter().map(|_| crossing_weight / crossings.len() as f64));
    let mut components = vec![Component::FubiniStudy];
    components.extend(lines);
    components.extend(crossings);

    let per_batch = (opts.budget / opts.batches as u64).max(components.len() as u64);
    let counts: Vec<u64> = shares.iter().map(|w| (w * per_batch as f64).round() as u64).collect();
    let total: u64 = counts.iter().sum();
    let alphas: Vec<f64> = counts.iter().map(|&k| k as f64 / total as f64).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let shifts: Vec<Vec<[f64; 4]>> = (0..opts.batches)
        .map(|_| components.iter().map(|_| [0; 4].map(|_| rng.gen::<f64>())).collect())
        .collect();

    let mixture = |x: &[Complex64; 3]| -> Option<f64> {
        components
            .iter()
            .zip(&alphas)
            .map(|(c, a)| Some(a * relative_density(c, x, opts.crossing_radius, opts.cutoff)?))
            .sum()
    };
    let weight = |x: &[Complex64; 3]| -> f64 {
        let Some(g) = mixture(x) else { return 0.0 };
        let chart = (0..3)
            .max_by(|&a, &b| x[a].norm_sqr().total_cmp(&x[b].norm_sqr()))
            .unwrap_or(0);
        let t2: f64 = (0..3).filter(|&i| i != chart).map(|i| (x[i] / x[chart]).norm_sqr()).sum();
        match rotated.density(x, chart) {
            Some(k) if k.is_finite() => k / fubini_study_density(t2) / g,
            _ => 0.0,
        }
    };

    let estimates: Vec<f64> = shifts
        .par_iter()
        .map(|batch_shifts| {
            let mut sum = 0.0;
            for ((comp, &n), shift) in components.iter().zip(&counts).zip(batch_shifts) {
                let mut part = 0.0;
                for i in 1..=n {
                    let u = [2, 3, 5, 7].map(|b| radical_inverse(i, b));
                    let u = [0, 1, 2, 3].map(|d| (u[d] + shift[d]).fract());
                    let x = sample_point(comp, u, opts.crossing_radius);
                    part += weight(&x);
                }
                sum += part;
            }
            sum / total as f64
        })
        .collect();
    let b = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / b;
    let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (b - 1.0);
    Ok(QuadratureEstimate {
        value: orientation.sign() * mean,
        sigma: (var / b).sqrt(),
        samples: total * opts.batches as u64,
        method: Method::QmcCp2,
        orientation,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formeval::{ChartPoint, FunctionSystem};
    use crate::quad::Kernel;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn six_forms() -> Vec<Vec<Complex64>> {
        vec![
            vec![c(1.0, 0.0), c(0.2, 0.1), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.3, -0.2)],
            vec![c(0.1, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.5), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(-0.5, 0.7)],
        ]
    }

    #[test]
    fn sampler_reproduces_fubini_study_moments() {
        // |x_0|^2 / |x|^2 has mean 1/3 under the Fubini–Study measure
        let fs = FunctionSystem::new(3, six_forms()).unwrap();
        let kernel = Kernel::Custom(Arc::new(|p: &ChartPoint| {
            let x = p.homogeneous();
            let n2: f64 = x.iter().map(|z| z.norm_sqr()).sum();
            let t2: f64 = p.t.iter().map(|z| z.norm_sqr()).sum();
            x[0].norm_sqr() / n2 * fubini_study_density(t2)
        }));
        let intg = Integrand { fs, kernel };
        let e = integrate_cp2(&intg, 200_000, 7).unwrap();
        assert!((e.value - 1.0 / 3.0).abs() < 4.0 * e.sigma + 1e-4, "{e:?}");
    }

    #[test]
    fn line_frames_are_orthonormal() {
        for l in six_forms() {
            let f = line_frame(&l);
            for i in 0..3 {
                for j in 0..3 {
                    let ip = herm(&f[i], &f[j]);
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - c(expect, 0.0)).norm() < 1e-14);
                }
            }
            let on_line: Complex64 = (0..3).map(|i| l[i] * f[0][i]).sum();
            assert!(on_line.norm() < 1e-14);
        }
    }

    #[test]
    fn equal_functions_give_zero_within_noise() {
        let mut forms = six_forms();
        forms[4] = forms[3].clone();
        let intg = Integrand::trilog(FunctionSystem::new(3, forms).unwrap()).unwrap();
        let e = integrate_cp2(&intg, 100_000, 3).unwrap();
        assert!(e.value.abs() <= 2.0 * e.sigma + 1e-12, "{e:?}");
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let intg = Integrand::trilog(FunctionSystem::new(3, six_forms()).unwrap()).unwrap();
        let a = integrate_cp2(&intg, 50_000, 11).unwrap();
        let b = integrate_cp2(&intg, 50_000, 11).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.sigma.to_bits(), b.sigma.to_bits());
    }
}
