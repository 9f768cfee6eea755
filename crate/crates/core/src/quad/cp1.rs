//! Deterministic adaptive quadrature over `CP^1`.
//!
//! After a unitary change of coordinates that pushes `infinity` away from
//! every zero, the sphere is covered by the disk `|t| <= R` and the cap
//! `|1/t| <= 1/R`. Each zero `z_k` gets a smooth bump `chi_k` of radius
//! `rho_k`; `chi_k K` is integrated in polar coordinates centred at `z_k`
//! (trapezoid in angle, Gauss–Legendre on geometrically graded radial panels),
//! and the smooth remainder `(1 - sum chi_k) K` by adaptive tensor Gauss rules
//! on polar cells.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::gauss::GaussLegendre;
use super::{orientation_calibrate, Integrand, Kernel, Method, Orientation, QuadratureEstimate};
use crate::error::{Error, Result};
use crate::formeval::FunctionSystem;

/// Zeros closer than this (chordal distance) make the input non-generic.
pub const MIN_SEPARATION: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Cp1Options {
    pub budget: u64,
    pub tol: f64,
    /// Bump radius as a fraction of the distance to the nearest other zero.
    pub radius_fraction: f64,
    /// Ratio between consecutive radial panels near a zero.
    pub grading_ratio: f64,
    /// Extra unitary applied to the sphere before anything else.
    pub rotation: Option<[[Complex64; 2]; 2]>,
}

impl Default for Cp1Options {
    fn default() -> Self {
        Cp1Options {
            budget: 100_000,
            tol: 1e-6,
            radius_fraction: 0.4,
            grading_ratio: 0.25,
            rotation: None,
        }
    }
}

/// `int_{CP^1}` of the integrand with the default layout.
pub fn integrate_cp1(intg: &Integrand, budget: u64, tol: f64) -> Result<QuadratureEstimate> {
    let opts = Cp1Options {
        budget,
        tol,
        ..Cp1Options::default()
    };
    integrate_raw(intg, &opts, orientation_calibrate())
}

/// `int_{CP^1}` with explicit options.
pub fn integrate_cp1_with(intg: &Integrand, opts: &Cp1Options) -> Result<QuadratureEstimate> {
    integrate_raw(intg, opts, orientation_calibrate())
}

pub(super) fn integrate_raw(intg: &Integrand, opts: &Cp1Options, orientation: Orientation) -> Result<QuadratureEstimate> {
    if intg.fs.dim() != 2 {
        return Err(Error::Size(format!(
            "CP^1 integration needs dimension 2, got {}",
            intg.fs.dim()
        )));
    }
    let custom = matches!(intg.kernel, Kernel::Custom(_));
    let mut forms = intg.fs.forms().to_vec();
    if let (Some(r), false) = (opts.rotation, custom) {
        forms = forms.iter().map(|l| rotate_form(l, &r)).collect();
    }
    let zeros = distinct_zeros(&forms)?;
    let u = if custom {
        IDENTITY
    } else {
        unitary_to_infinity(&far_point(&zeros))
    };
    let forms: Vec<Vec<Complex64>> = forms.iter().map(|l| rotate_form(l, &u)).collect();
    let zeros: Vec<[Complex64; 2]> = zeros.iter().map(|z| apply(&u, z)).collect();
    let fs = FunctionSystem::new(2, forms)?.with_denominator(intg.fs.denominator())?;
    let rotated = Integrand {
        fs,
        kernel: intg.kernel.clone(),
    };

    let centres: Vec<Complex64> = zeros.iter().map(|z| z[0] / z[1]).collect();
    let radii: Vec<f64> = centres
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let nearest = centres
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, d)| (c - d).norm())
                .fold(f64::INFINITY, f64::min);
            opts.radius_fraction * if nearest.is_finite() { nearest } else { 1.0 + c.norm() }
        })
        .collect();
    let big_r = centres.iter().zip(&radii).map(|(c, r)| c.norm() + r).fold(1.0, f64::max) * 1.25;

    let layout = Layout {
        intg: &rotated,
        centres,
        radii,
        big_r,
    };
    let mut evals = 0u64;
    let (mut value, mut err) = (0.0, 0.0);
    for k in 0..layout.centres.len() {
        let (v, e, n) = layout.bump_integral(k, opts.grading_ratio);
        value += v;
        err += e;
        evals += n;
    }
    let (v, e, n, done) = layout.adaptive(opts.budget.saturating_sub(evals), (opts.tol - err).max(opts.tol * 0.1));
    value += v;
    err += e;
    evals += n;
    Ok(QuadratureEstimate {
        value: orientation.sign() * value,
        sigma: err,
        samples: evals,
        method: Method::AdaptiveCp1,
        orientation,
        converged: done && err <= opts.tol,
    })
}

const IDENTITY: [[Complex64; 2]; 2] = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
];

fn apply(u: &[[Complex64; 2]; 2], x: &[Complex64; 2]) -> [Complex64; 2] {
    [u[0][0] * x[0] + u[0][1] * x[1], u[1][0] * x[0] + u[1][1] * x[1]]
}

/// `l'` with `l'(U x) = l(x)`, i.e. `l' = l U^*` for unitary `U`.
fn rotate_form(l: &[Complex64], u: &[[Complex64; 2]; 2]) -> Vec<Complex64> {
    (0..2).map(|j| l[0] * u[j][0].conj() + l[1] * u[j][1].conj()).collect()
}

fn chordal(a: &[Complex64; 2], b: &[Complex64; 2]) -> f64 {
    let ip = a[0].conj() * b[0] + a[1].conj() * b[1];
    (1.0 - ip.norm_sqr()).max(0.0).sqrt()
}

/// Unit representatives of the zero points, proportional forms merged.
fn distinct_zeros(forms: &[Vec<Complex64>]) -> Result<Vec<[Complex64; 2]>> {
    let mut out: Vec<([Complex64; 2], usize)> = Vec::new();
    for (i, l) in forms.iter().enumerate() {
        let norm = (l[0].norm_sqr() + l[1].norm_sqr()).sqrt();
        let z = [-l[1] / norm, l[0] / norm];
        let mut merged = false;
        for (w, j) in &out {
            if chordal(&z, w) < MIN_SEPARATION {
                let m = &forms[*j];
                let cross = (l[0] * m[1] - l[1] * m[0]).norm();
                if cross <= 1e-15 * norm * (m[0].norm_sqr() + m[1].norm_sqr()).sqrt() {
                    merged = true;
                    break;
                }
                return Err(Error::NonGeneric(format!(
                    "zeros of l_{j} and l_{i} coincide within {MIN_SEPARATION:e}"
                )));
            }
        }
        if !merged {
            out.push((z, i));
        }
    }
    Ok(out.into_iter().map(|(z, _)| z).collect())
}

/// A point of the sphere far from all zeros, from a fixed spiral of candidates.
fn far_point(zeros: &[[Complex64; 2]]) -> [Complex64; 2] {
    let n = 200;
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let theta = z.acos();
            let phi = golden * i as f64;
            [
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::from_polar((theta / 2.0).sin(), phi),
            ]
        })
        .map(|q| (zeros.iter().map(|z| chordal(z, &q)).fold(f64::INFINITY, f64::min), q))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, q)| q)
        .unwrap_or([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
}

/// Unitary sending `q` to `(1, 0)`, the point at infinity of the chart `(t, 1)`.
fn unitary_to_infinity(q: &[Complex64; 2]) -> [[Complex64; 2]; 2] {
    [[q[0].conj(), q[1].conj()], [-q[1], q[0]]]
}

fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / x).exp();
    let b = (-1.0 / (1.0 - x)).exp();
    a / (a + b)
}

/// Bump of unit radius: 1 on `[0, 1/2]`, 0 beyond 1.
fn bump(r: f64) -> f64 {
    1.0 - smooth_step(2.0 * r - 1.0)
}

struct Layout<'a> {
    intg: &'a Integrand,
    centres: Vec<Complex64>,
    radii: Vec<f64>,
    big_r: f64,
}

impl Layout<'_> {
    fn density_t(&self, t: Complex64) -> f64 {
        self.intg.density(&[t, Complex64::new(1.0, 0.0)], 1).unwrap_or(0.0)
    }

    fn density_s(&self, s: Complex64) -> f64 {
        self.intg.density(&[Complex64::new(1.0, 0.0), s], 0).unwrap_or(0.0)
    }

    fn partition_rest(&self, t: Complex64) -> f64 {
        1.0 - self
            .centres
            .iter()
            .zip(&self.radii)
            .map(|(c, r)| bump((t - c).norm() / r))
            .sum::<f64>()
    }

    /// `int chi_k K` over the disk around zero `k`, with a coarser rerun as
    /// the error estimate.
    fn bump_integral(&self, k: usize, ratio: f64) -> (f64, f64, u64) {
        let (c, rho) = (self.centres[k], self.radii[k]);
        let mut edges = vec![1.0];
        edges.extend((0..=6).map(|j| 0.5 + 0.5 * (6 - j) as f64 / 6.0).skip(1));
        let mut e = 0.5;
        while e > 1e-8 {
            e *= ratio;
            edges.push(e);
        }
        edges.push(0.0);
        let run = |order: usize, angles: usize| -> (f64, u64) {
            let gl = GaussLegendre::new(order);
            let mut total = 0.0;
            let mut n = 0;
            for win in edges.windows(2) {
                for (r, w) in gl.on(win[1], win[0]) {
                    let chi = bump(r);
                    if chi == 0.0 {
                        continue;
                    }
                    let ring: f64 = (0..angles)
                        .map(|j| self.density_t(c + Complex64::from_polar(rho * r, 2.0 * PI * j as f64 / angles as f64)))
                        .sum();
                    n += angles as u64;
                    total += w * chi * r * ring * 2.0 * PI / angles as f64;
                }
            }
            (total * rho * rho, n)
        };
        let (fine, n1) = run(8, 24);
        let (coarse, n2) = run(5, 16);
        (fine, (fine - coarse).abs(), n1 + n2)
    }

    fn cell_integral(&self, cell: &Cell, rule: &GaussLegendre) -> f64 {
        let mut total = 0.0;
        for (r, wr) in rule.on(cell.r0, cell.r1) {
            for (th, wt) in rule.on(cell.t0, cell.t1) {
                let z = Complex64::from_polar(r, th);
                let f = match cell.outer {
                    false => self.partition_rest(z) * self.density_t(z),
                    true => self.density_s(z),
                };
                total += wr * wt * r * f;
            }
        }
        total
    }

    fn evaluate(&self, mut cell: Cell, hi: &GaussLegendre, lo: &GaussLegendre) -> Cell {
        let a = self.cell_integral(&cell, hi);
        let b = self.cell_integral(&cell, lo);
        cell.value = a;
        cell.err = (a - b).abs();
        cell
    }

    /// Adaptive integration of the smooth remainder; returns
    /// `(value, error, evaluations, tolerance met)`.
    fn adaptive(&self, budget: u64, tol: f64) -> (f64, f64, u64, bool) {
        let hi = GaussLegendre::new(7);
        let lo = GaussLegendre::new(5);
        let per_cell = (hi.len() * hi.len() + lo.len() * lo.len()) as u64;
        let mut heap = BinaryHeap::new();
        let mut evals = 0;
        let grid = |outer: bool, rmax: f64, nr: usize, nt: usize| {
            (0..nr).flat_map(move |i| {
                (0..nt).map(move |j| Cell {
                    r0: rmax * i as f64 / nr as f64,
                    r1: rmax * (i + 1) as f64 / nr as f64,
                    t0: 2.0 * PI * j as f64 / nt as f64,
                    t1: 2.0 * PI * (j + 1) as f64 / nt as f64,
                    outer,
                    value: 0.0,
                    err: 0.0,
                })
            })
        };
        for cell in grid(false, self.big_r, 8, 8).chain(grid(true, 1.0 / self.big_r, 2, 4)) {
            heap.push(self.evaluate(cell, &hi, &lo));
            evals += per_cell;
        }
        let total_err = |h: &BinaryHeap<Cell>| h.iter().map(|c| c.err).sum::<f64>();
        let mut err = total_err(&heap);
        while err > tol && evals + 4 * per_cell <= budget {
            let Some(worst) = heap.pop() else { break };
            err -= worst.err;
            for child in worst.split() {
                let c = self.evaluate(child, &hi, &lo);
                err += c.err;
                heap.push(c);
            }
            evals += 4 * per_cell;
        }
        let mut cells = heap.into_vec();
        cells.sort_by(|a, b| {
            (a.outer, a.r0, a.t0)
                .partial_cmp(&(b.outer, b.r0, b.t0))
                .unwrap_or(Ordering::Equal)
        });
        let value = cells.iter().map(|c| c.value).sum();
        let err: f64 = cells.iter().map(|c| c.err).sum();
        (value, err, evals, err <= tol)
    }
}

#[derive(Debug, Clone)]
struct Cell {
    r0: f64,
    r1: f64,
    t0: f64,
    t1: f64,
    outer: bool,
    value: f64,
    err: f64,
}

impl Cell {
    fn split(&self) -> [Cell; 4] {
        let rm = (self.r0 + self.r1) / 2.0;
        let tm = (self.t0 + self.t1) / 2.0;
        let mk = |r0, r1, t0, t1| Cell {
            r0,
            r1,
            t0,
            t1,
            outer: self.outer,
            value: 0.0,
            err: 0.0,
        };
        [
            mk(self.r0, rm, self.t0, tm),
            mk(rm, self.r1, self.t0, tm),
            mk(self.r0, rm, tm, self.t1),
            mk(rm, self.r1, tm, self.t1),
        ]
    }
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.r0.total_cmp(&self.r0))
            .then_with(|| other.t0.total_cmp(&self.t0))
            .then_with(|| other.outer.cmp(&self.outer))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configspace::Configuration;
    use crate::polylog::bloch_wigner;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dilog_integrand(forms: Vec<Vec<Complex64>>) -> Integrand {
        Integrand::dilog(FunctionSystem::new(2, forms).unwrap()).unwrap()
    }

    #[test]
    fn bump_is_a_smooth_step() {
        assert_eq!(bump(0.2), 1.0);
        assert_eq!(bump(1.0), 0.0);
        assert!((bump(0.75) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn equal_functions_integrate_to_zero() {
        let l = [
            vec![c(1.0, 0.0), c(0.5, 0.0)],
            vec![c(0.0, 1.0), c(1.0, 0.0)],
            vec![c(2.0, 1.0), c(-1.0, 0.3)],
        ];
        let forms = vec![l[0].clone(), l[1].clone(), l[2].clone(), l[2].clone()];
        let e = integrate_cp1(&dilog_integrand(forms), 100_000, 1e-6).unwrap();
        assert_eq!(e.value, 0.0);
        assert_eq!(e.sigma, 0.0);
    }

    #[test]
    fn dilog_kernel_matches_bloch_wigner() {
        let forms = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, -1.0)],
        ];
        let cfg = Configuration::new(2, forms.clone()).unwrap();
        let r = cfg.cross_ratio([0, 1, 2, 3]).unwrap();
        let e = integrate_cp1(&dilog_integrand(forms.clone()), 100_000, 1e-6).unwrap();
        assert!(e.samples <= 100_000);
        assert!(
            (-e.value / PI - bloch_wigner(r)).abs() < 1e-5,
            "{} vs {}",
            -e.value / PI,
            bloch_wigner(r)
        );
        assert!((e.value + PI * bloch_wigner(r)).abs() <= e.sigma, "{e:?}");
        let e = integrate_cp1(&dilog_integrand(forms), 1_000_000, 1e-6).unwrap();
        assert!(e.converged && e.sigma <= 1e-6, "{e:?}");
    }

    fn skewed_forms() -> Vec<Vec<Complex64>> {
        vec![
            vec![c(0.3, -0.8), c(1.0, 0.2)],
            vec![c(-0.5, 0.1), c(0.7, 0.9)],
            vec![c(1.0, 0.0), c(-0.2, -0.4)],
            vec![c(0.1, 0.6), c(-0.9, 0.3)],
        ]
    }

    #[test]
    fn halving_the_bump_radius_stays_within_sigma() {
        let intg = dilog_integrand(skewed_forms());
        let base = Cp1Options {
            budget: 400_000,
            ..Cp1Options::default()
        };
        let a = integrate_cp1_with(&intg, &base).unwrap();
        let b = integrate_cp1_with(
            &intg,
            &Cp1Options {
                radius_fraction: 0.2,
                ..base.clone()
            },
        )
        .unwrap();
        let c = integrate_cp1_with(
            &intg,
            &Cp1Options {
                grading_ratio: 0.125,
                ..base
            },
        )
        .unwrap();
        assert!((a.value - b.value).abs() <= a.sigma.max(b.sigma), "{a:?} {b:?}");
        assert!((a.value - c.value).abs() <= a.sigma.max(c.sigma), "{a:?} {c:?}");
    }

    #[test]
    fn rotated_chart_agrees() {
        let intg = dilog_integrand(skewed_forms());
        let (th, ph) = (0.7f64, 1.9f64);
        let u = [
            [Complex64::new(th.cos(), 0.0), Complex64::from_polar(th.sin(), ph)],
            [-Complex64::from_polar(th.sin(), -ph), Complex64::new(th.cos(), 0.0)],
        ];
        let opts = Cp1Options {
            budget: 400_000,
            ..Cp1Options::default()
        };
        let a = integrate_cp1_with(&intg, &opts).unwrap();
        let b = integrate_cp1_with(
            &intg,
            &Cp1Options {
                rotation: Some(u),
                ..opts
            },
        )
        .unwrap();
        let band = 2.0 * (a.sigma.powi(2) + b.sigma.powi(2)).sqrt();
        assert!((a.value - b.value).abs() <= band, "{a:?} {b:?}");
    }

    #[test]
    fn unit_disk_area_by_custom_kernel() {
        // indicator-free smooth check: int e^{-|t|^2} over C is pi
        let fs = FunctionSystem::new(2, vec![vec![c(1.0, 0.0), c(0.0, 0.0)]; 2]).unwrap();
        let kernel = Kernel::Custom(std::sync::Arc::new(|p: &crate::formeval::ChartPoint| {
            if p.chart == 1 {
                (-p.t[0].norm_sqr()).exp()
            } else {
                (-1.0 / p.t[0].norm_sqr()).exp() / p.t[0].norm_sqr().powi(2)
            }
        }));
        let e = integrate_cp1(&Integrand { fs, kernel }, 200_000, 1e-8).unwrap();
        assert!((e.value - PI).abs() < 1e-7, "{e:?}");
    }

    #[test]
    fn near_coincident_zeros_are_rejected() {
        let forms = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(1e-10, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 1.0), c(1.0, 0.0)],
        ];
        assert!(matches!(
            integrate_cp1(&dilog_integrand(forms), 100_000, 1e-6),
            Err(Error::NonGeneric(_))
        ));
    }
}
