use num_complex::Complex64;

use super::{pi_n, ChartPoint, FormValue, FunctionSystem, LogGerm, TangentVector};
use crate::configspace::{alternate, det};
use crate::error::{Error, Result};

/// Which of the equivalent formulas for `r_m` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Presentation {
    /// `-Alt_m sum_k c_{k,m} log|f_1| dlog|f|^{2k} (d i arg f)^{m-2k-1}`.
    Definition,
    /// `Alt_m sum_k (-1)^{m-k-1}/m! log|f_1| (dlog f)^{k-1} (dbar log f)^{m-k}`.
    Holo,
    /// The holomorphic form folded by symmetry to its top half.
    Reduced,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `log|f_0| * det[theta_a(w_b)]` where `theta_a` is picked per slot from the
/// complex derivative `dlog f_a(w_b)`.
fn wedge_term(fs: &[&LogGerm], slot: impl Fn(usize, Complex64) -> Complex64) -> Complex64 {
    let m = fs.len();
    let rows: Vec<Vec<Complex64>> = (1..m).map(|a| fs[a].dlog.iter().map(|&z| slot(a, z)).collect()).collect();
    det(&rows) * fs[0].log_abs
}

/// Coefficients `(k, coeff)` of `T_k = log|f_1| (dlog f)^{k-1} (dbar log f)^{m-k}`.
fn holo_coefficients(m: usize, presentation: Presentation) -> Vec<(usize, f64)> {
    let mf = factorial(m);
    let sign = |e: usize| if e.is_multiple_of(2) { 1.0 } else { -1.0 };
    match presentation {
        Presentation::Holo => (1..=m).map(|k| (k, sign(m + 1 - k) / mf)).collect(),
        Presentation::Reduced if m % 2 == 1 => {
            let n = m.div_ceil(2);
            (n..=m)
                .map(|k| (k, if k == n { sign(n) / mf } else { 2.0 * sign(k) / mf }))
                .collect()
        }
        Presentation::Reduced => {
            let n = m / 2;
            (n + 1..=m).map(|k| (k, 2.0 * sign(k - 1) / mf)).collect()
        }
        Presentation::Definition => unreachable!(),
    }
}

/// `r_m(f_1, ..., f_m)` from precomputed germs; `m = germs.len()` and each
/// germ must carry `m - 1` directional derivatives.
pub fn eval_r_germs(germs: &[LogGerm], presentation: Presentation) -> Result<FormValue> {
    let m = germs.len();
    if !(2..=5).contains(&m) {
        return Err(Error::Size(format!("r_m is implemented for 2 <= m <= 5, got {m}")));
    }
    if germs.iter().any(|g| g.dlog.len() != m - 1) {
        return Err(Error::Size(format!("r_{m} takes {} tangent vectors", m - 1)));
    }
    let total = match presentation {
        Presentation::Definition => {
            let coeffs: Vec<(usize, f64)> = (0..)
                .map(|k| 2 * k + 1)
                .take_while(|&j| j <= m)
                .map(|j| ((j - 1) / 2, binomial(m, j) / factorial(m)))
                .collect();
            -alternate(m, |p| {
                let fs: Vec<&LogGerm> = p.iter().map(|&i| &germs[i]).collect();
                coeffs
                    .iter()
                    .map(|&(k, c)| {
                        c * wedge_term(&fs, |a, z| {
                            if a <= 2 * k {
                                Complex64::new(z.re, 0.0)
                            } else {
                                Complex64::new(0.0, z.im)
                            }
                        })
                    })
                    .sum::<Complex64>()
            })?
        }
        _ => {
            let coeffs = holo_coefficients(m, presentation);
            alternate(m, |p| {
                let fs: Vec<&LogGerm> = p.iter().map(|&i| &germs[i]).collect();
                coeffs
                    .iter()
                    .map(|&(k, c)| c * wedge_term(&fs, |a, z| if a < k { z } else { z.conj() }))
                    .sum::<Complex64>()
            })?
        }
    };
    Ok(pi_n(m, total))
}

/// Value of the `(m-1)`-form `r_m(f_1, ..., f_m)` at `p` on `ws`.
pub fn eval_r(
    m: usize,
    fs: &FunctionSystem,
    p: &ChartPoint,
    ws: &[TangentVector],
    presentation: Presentation,
) -> Result<FormValue> {
    if fs.len() != m {
        return Err(Error::Size(format!("r_{m} needs {m} functions, the system has {}", fs.len())));
    }
    if ws.len() + 1 != m {
        return Err(Error::Size(format!(
            "r_{m} takes {} tangent vectors, got {}",
            m - 1,
            ws.len()
        )));
    }
    eval_r_germs(&fs.germs(p, ws)?, presentation)
}

/// Finite-difference `d r_m` on `m` tangent vectors, next to the closed
/// value `-pi_m(dlog f_1 ^ ... ^ dlog f_m)`.
///
/// Each directional derivative is a central difference at `h = 1e-3` and
/// `5e-4`, combined by Richardson extrapolation.
pub fn d_r_check(m: usize, fs: &FunctionSystem, p: &ChartPoint, ws: &[TangentVector]) -> Result<(FormValue, FormValue)> {
    if ws.len() != m {
        return Err(Error::Size(format!("d r_{m} takes {m} tangent vectors, got {}", ws.len())));
    }
    let germs = fs.germs(p, ws)?;
    let rows: Vec<Vec<Complex64>> = germs.iter().map(|g| g.dlog.clone()).collect();
    let rhs = pi_n(m, -det(&rows));

    let mut lhs = 0.0;
    for j in 0..m {
        let rest: Vec<TangentVector> = ws
            .iter()
            .enumerate()
            .filter(|&(b, _)| b != j)
            .map(|(_, w)| w.clone())
            .collect();
        let at = |h: f64| eval_r(m, fs, &p.shifted(&ws[j], h), &rest, Presentation::Definition).map(|v| v.value);
        let central = |h: f64| -> Result<f64> { Ok((at(h)? - at(-h)?) / (2.0 * h)) };
        let (coarse, fine) = (central(1e-3)?, central(5e-4)?);
        let deriv = (4.0 * fine - coarse) / 3.0;
        lhs += if j % 2 == 0 { deriv } else { -deriv };
    }
    Ok((FormValue { value: lhs, weight: m }, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rc(rng: &mut ChaCha8Rng) -> Complex64 {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }

    fn random_germs(rng: &mut ChaCha8Rng, m: usize, vectors: usize) -> Vec<LogGerm> {
        (0..m)
            .map(|_| LogGerm {
                log_abs: rng.gen_range(-2.0..2.0),
                dlog: (0..vectors).map(|_| rc(rng)).collect(),
            })
            .collect()
    }

    #[test]
    fn r2_hand_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_germs(&mut rng, 2, 1);
        let expect = -(g[0].log_abs * g[1].darg(0) - g[1].log_abs * g[0].darg(0));
        for pres in [Presentation::Definition, Presentation::Holo, Presentation::Reduced] {
            let v = eval_r_germs(&g, pres).unwrap();
            assert!(v.is_even());
            assert!((v.value - expect).abs() < 1e-14, "{pres:?}");
        }
    }

    #[test]
    fn presentations_agree_on_abstract_germs() {
        // germs with arbitrary (not necessarily integrable) derivatives: the
        // identities are pointwise-algebraic
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for m in 2..=5 {
            for _ in 0..5 {
                let g = random_germs(&mut rng, m, m - 1);
                let d = eval_r_germs(&g, Presentation::Definition).unwrap().value;
                let h = eval_r_germs(&g, Presentation::Holo).unwrap().value;
                let r = eval_r_germs(&g, Presentation::Reduced).unwrap().value;
                let scale = 1.0 + d.abs();
                assert!((d - h).abs() < 1e-12 * scale, "m={m}: {d} vs {h}");
                assert!((d - r).abs() < 1e-12 * scale, "m={m}: {d} vs {r}");
            }
        }
    }

    #[test]
    fn equal_functions_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut g = random_germs(&mut rng, 3, 2);
        g[2] = g[1].clone();
        assert!(eval_r_germs(&g, Presentation::Definition).unwrap().value.abs() < 1e-15);
    }

    #[test]
    fn size_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(matches!(
            eval_r_germs(&random_germs(&mut rng, 6, 5), Presentation::Holo),
            Err(Error::Size(_))
        ));
        assert!(matches!(
            eval_r_germs(&random_germs(&mut rng, 3, 1), Presentation::Holo),
            Err(Error::Size(_))
        ));
    }

    fn random_system(rng: &mut ChaCha8Rng, dim: usize, m: usize) -> (FunctionSystem, ChartPoint) {
        let forms = (0..=m).map(|_| (0..dim).map(|_| rc(rng)).collect()).collect();
        let fs = FunctionSystem::new(dim, forms).unwrap();
        let p = ChartPoint::new(rng.gen_range(0..dim), (0..dim - 1).map(|_| rc(rng)).collect()).unwrap();
        (fs, p)
    }

    fn random_vectors(rng: &mut ChaCha8Rng, real_dim: usize, k: usize) -> Vec<TangentVector> {
        (0..k)
            .map(|_| TangentVector((0..real_dim).map(|_| rng.gen_range(-1.0..1.0)).collect()))
            .collect()
    }

    #[test]
    fn exterior_derivative_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in [2, 3] {
            for _ in 0..5 {
                let (fs, p) = random_system(&mut rng, m + 1, m);
                let ws = random_vectors(&mut rng, 2 * m, m);
                let (lhs, rhs) = d_r_check(m, &fs, &p, &ws).unwrap();
                assert!(
                    (lhs.value - rhs.value).abs() < 1e-5 * (1.0 + rhs.value.abs()),
                    "m={m}: {lhs:?} vs {rhs:?}"
                );
            }
        }
    }

    #[test]
    fn dependent_vectors_give_zero_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (fs, p) = random_system(&mut rng, 3, 2);
        let w = random_vectors(&mut rng, 4, 1).remove(0);
        let ws = vec![w.clone(), w.scaled(-2.0)];
        let (lhs, rhs) = d_r_check(2, &fs, &p, &ws).unwrap();
        assert!(lhs.value.abs() < 1e-6 && rhs.value.abs() < 1e-12);
    }

    #[test]
    fn swapping_vectors_or_functions_negates() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (fs, p) = random_system(&mut rng, 4, 4);
        let ws = random_vectors(&mut rng, 6, 3);
        let v = eval_r(4, &fs, &p, &ws, Presentation::Holo).unwrap().value;
        let swapped = vec![ws[1].clone(), ws[0].clone(), ws[2].clone()];
        let u = eval_r(4, &fs, &p, &swapped, Presentation::Holo).unwrap().value;
        assert!((u + v).abs() < 1e-14 * (1.0 + v.abs()));
        let mut forms = fs.forms().to_vec();
        forms.swap(1, 3);
        let gs = FunctionSystem::new(4, forms).unwrap();
        let u = eval_r(4, &gs, &p, &ws, Presentation::Holo).unwrap().value;
        assert!((u + v).abs() < 1e-13 * (1.0 + v.abs()));
    }
}
