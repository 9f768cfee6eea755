//! Classical polylogarithms `Li_1`, `Li_2`, `Li_3` and their single-valued
//! versions: the Bloch–Wigner function `D` and the single-valued trilogarithm.
//!
//! Evaluation strategy for `Li_2` and `Li_3`:
//!
//! * `|z| <= 1/2`: the defining power series `sum z^k / k^n`.
//! * `|z| >= 2`: the inversion relations
//!   `Li_2(z) = -Li_2(1/z) - pi^2/6 - log^2(-z)/2` and
//!   `Li_3(z) =  Li_3(1/z) - log^3(-z)/6 - pi^2/6 log(-z)`.
//! * the annulus in between: the expansion around `z = 1` in `mu = log z`,
//!   `Li_n(e^mu) = sum_{k != n-1} zeta(n-k) mu^k/k! + mu^{n-1}/(n-1)! (H_{n-1} - log(-mu))`,
//!   which converges for `|mu| < 2 pi` (here `|mu| < 3.3`).
//!
//! Points on the cut `(1, inf)` are evaluated as the limit from the upper
//! half plane; the lower limit is its complex conjugate. Every single-valued
//! combination in this module is insensitive to that choice.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `zeta(2) = pi^2 / 6`.
pub const ZETA2: f64 = PI * PI / 6.0;
/// Apéry's constant `zeta(3)`.
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

const SERIES_RADIUS: f64 = 0.5;
const INVERSION_RADIUS: f64 = 2.0;
const EPS: f64 = 1e-17;

/// Which side of the cut `(1, inf)` a limit is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    Upper,
    Lower,
}

/// A value of a single-valued polylogarithm together with its weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvValue {
    pub value: f64,
    pub weight: u32,
}

impl SvValue {
    /// `weight` 2 gives the Bloch–Wigner function, 3 the single-valued trilogarithm.
    pub fn new(weight: u32, z: Complex64) -> Result<Self> {
        let value = match weight {
            2 => bloch_wigner(z),
            3 => sv_trilog(z),
            w => return Err(Error::Domain(format!("single-valued weight {w} not in {{2, 3}}"))),
        };
        Ok(SvValue { value, weight })
    }
}

fn check_order(n: u32) -> Result<()> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::Domain(format!("polylog order {n} not in {{1, 2, 3}}")))
    }
}

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite argument {z}")))
    }
}

fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re > 1.0
}

/// Principal branch `Li_n(z)` for `n` in `{1, 2, 3}`.
///
/// Points on the open cut `(1, inf)` are rejected; use [`li_limit`].
pub fn li(n: u32, z: Complex64) -> Result<Complex64> {
    check_order(n)?;
    check_finite(z)?;
    if on_cut(z) {
        return Err(Error::Cut(z.re));
    }
    Ok(li_upper(n, z))
}

/// `Li_n(z)`, taking the one-sided limit when `z` sits on the cut.
pub fn li_limit(n: u32, z: Complex64, side: CutSide) -> Result<Complex64> {
    check_order(n)?;
    check_finite(z)?;
    let v = li_upper(n, z);
    Ok(if on_cut(z) && side == CutSide::Lower { v.conj() } else { v })
}

/// Unchecked evaluation; the cut is approached from above.
pub(crate) fn li_upper(n: u32, z: Complex64) -> Complex64 {
    // fold -0.0 into +0.0 so the real axis is consistently the upper side
    let z = Complex64::new(z.re, z.im + 0.0);
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if z.re == 1.0 && z.im == 0.0 {
        return match n {
            1 => Complex64::new(f64::INFINITY, 0.0),
            2 => Complex64::new(ZETA2, 0.0),
            _ => Complex64::new(ZETA3, 0.0),
        };
    }
    match n {
        1 => -one_minus(z).ln(),
        2 => li2(z),
        3 => li3(z),
        _ => unreachable!("order checked by callers"),
    }
}

/// `1 - z` with the sign of the imaginary part flipped exactly, so that
/// `z = x + 0i` maps to `1 - x - 0i`.
fn one_minus(z: Complex64) -> Complex64 {
    Complex64::new(1.0 - z.re, -z.im)
}

fn neg(z: Complex64) -> Complex64 {
    Complex64::new(-z.re, -z.im)
}

fn li2(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r <= SERIES_RADIUS {
        power_series(2, z)
    } else if r >= INVERSION_RADIUS {
        let l = neg(z).ln();
        -power_series(2, z.inv()) - ZETA2 - 0.5 * l * l
    } else {
        log_expansion(2, z)
    }
}

fn li3(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r <= SERIES_RADIUS {
        power_series(3, z)
    } else if r >= INVERSION_RADIUS {
        let l = neg(z).ln();
        power_series(3, z.inv()) - l * l * l / 6.0 - ZETA2 * l
    } else {
        log_expansion(3, z)
    }
}

fn power_series(n: u32, z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = z;
    for k in 1..=200u32 {
        let term = zk / f64::from(k).powi(n as i32);
        sum += term;
        if term.norm() <= EPS * sum.norm() {
            break;
        }
        zk *= z;
    }
    sum
}

/// Coefficients of the odd/even tail of the expansion around `z = 1`:
/// `a_j = (-1)^j 2 zeta(2j) / ((2 pi)^{2j} * prod)` where `prod` is
/// `2j(2j+1)` for `Li_2` and `2j(2j+1)(2j+2)` for `Li_3`.
fn tail_coefficients(n: u32) -> &'static [f64] {
    static LI2: OnceLock<Vec<f64>> = OnceLock::new();
    static LI3: OnceLock<Vec<f64>> = OnceLock::new();
    let build = |n: u32| {
        (1..=40)
            .map(|j: i32| {
                let two_j = f64::from(2 * j);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let mut denom = (2.0 * PI).powi(2 * j) * two_j * (two_j + 1.0);
                if n == 3 {
                    denom *= two_j + 2.0;
                }
                sign * 2.0 * zeta_even(j as u32) / denom
            })
            .collect::<Vec<_>>()
    };
    match n {
        2 => LI2.get_or_init(|| build(2)),
        _ => LI3.get_or_init(|| build(3)),
    }
}

/// `zeta(2j)` for `j >= 1`.
fn zeta_even(j: u32) -> f64 {
    let pi2 = PI * PI;
    match j {
        1 => pi2 / 6.0,
        2 => pi2 * pi2 / 90.0,
        3 => pi2 * pi2 * pi2 / 945.0,
        4 => pi2 * pi2 * pi2 * pi2 / 9450.0,
        _ => {
            let s = f64::from(2 * j);
            (1..=64u32).rev().map(|k| f64::from(k).powf(-s)).sum()
        }
    }
}

fn log_expansion(n: u32, z: Complex64) -> Complex64 {
    let mu = z.ln();
    let log_neg_mu = neg(mu).ln();
    let mu2 = mu * mu;
    let coeffs = tail_coefficients(n);
    let (mut sum, mut power) = if n == 2 {
        // zeta(2) + mu (1 - log(-mu)) - mu^2/4, tail in mu^{2j+1}
        (ZETA2 + mu * (1.0 - log_neg_mu) - 0.25 * mu2, mu * mu2)
    } else {
        // zeta(3) + zeta(2) mu + mu^2/2 (3/2 - log(-mu)) - mu^3/12, tail in mu^{2j+2}
        (
            ZETA3 + ZETA2 * mu + 0.5 * mu2 * (1.5 - log_neg_mu) - mu * mu2 / 12.0,
            mu2 * mu2,
        )
    };
    for &a in coeffs {
        let term = a * power;
        sum += term;
        if term.norm() <= EPS * sum.norm().max(1e-300) {
            break;
        }
        power *= mu2;
    }
    sum
}

/// Bloch–Wigner function `D(z) = Im Li_2(z) + arg(1 - z) log|z|`.
///
/// Real normalization; the imaginary-valued version used by the regulator
/// maps is `i D(z)`. Extended by `0` on the real line and at infinity;
/// non-finite input is treated as the point at infinity.
pub fn bloch_wigner(z: Complex64) -> f64 {
    if !(z.re.is_finite() && z.im.is_finite()) || z.im == 0.0 {
        return 0.0;
    }
    li2(z).im + one_minus(z).arg() * z.norm().ln()
}

/// Single-valued trilogarithm
/// `L_3(z) = Re(Li_3(z) - log|z| Li_2(z)) - log^2|z| log|1 - z| / 3`.
///
/// Extended continuously by `L_3(0) = L_3(inf) = 0` and `L_3(1) = zeta(3)`.
pub fn sv_trilog(z: Complex64) -> f64 {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return 0.0;
    }
    if z.re == 0.0 && z.im == 0.0 {
        return 0.0;
    }
    if z.re == 1.0 && z.im == 0.0 {
        return ZETA3;
    }
    let log_abs = z.norm().ln();
    let l3 = li_upper(3, z);
    let l2 = li_upper(2, z);
    l3.re - log_abs * l2.re - log_abs * log_abs * one_minus(z).norm().ln() / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // oracle: plain series with 500 terms
    fn series_oracle(n: u32, z: Complex64) -> Complex64 {
        (1..=500u32).map(|k| z.powu(k) / f64::from(k).powi(n as i32)).sum()
    }

    #[test]
    fn li2_at_zero_and_one() {
        assert_eq!(li(2, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let oracle: f64 = (1..=200_000u32).map(|k| 1.0 / f64::from(k).powi(2)).sum::<f64>() + 1.0 / 200_000.5;
        let v = li(2, c(1.0, 0.0)).unwrap();
        assert!((v.re - oracle).abs() < 1e-10);
        assert!((v.re - 1.644_934_066_8).abs() < 1e-10);
    }

    #[test]
    fn li3_minus_one() {
        let oracle: f64 = (1..=100_000u32)
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / f64::from(k).powi(3))
            .sum();
        let v = li(3, c(-1.0, 0.0)).unwrap();
        assert!((v.re - oracle).abs() < 1e-12);
        assert!((v.re + 0.75 * ZETA3).abs() < 1e-13);
        assert!((v.re + 0.901_542_677_4).abs() < 1e-10);
    }

    #[test]
    fn li_rejects_cut_and_bad_order() {
        assert_eq!(li(2, c(3.0, 0.0)), Err(Error::Cut(3.0)));
        assert!(matches!(li(4, c(0.1, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(li(0, c(0.1, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(li(2, c(f64::NAN, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn cut_limits_are_conjugate_and_match_nearby_points() {
        for n in 1..=3 {
            for &x in &[1.5, 3.0, 10.0] {
                let up = li_limit(n, c(x, 0.0), CutSide::Upper).unwrap();
                let lo = li_limit(n, c(x, 0.0), CutSide::Lower).unwrap();
                assert_eq!(up, lo.conj());
                let near_up = li(n, c(x, 1e-12)).unwrap();
                let near_lo = li(n, c(x, -1e-12)).unwrap();
                assert!((up - near_up).norm() < 1e-9, "n={n} x={x}");
                assert!((lo - near_lo).norm() < 1e-9, "n={n} x={x}");
            }
        }
        // Im Li_2(x + i0) = pi log x
        let v = li_limit(2, c(3.0, 0.0), CutSide::Upper).unwrap();
        assert!((v.im - PI * 3f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn regions_agree_with_series_on_overlap() {
        // the log expansion is also valid on 0.3 < |z| < 0.5
        for k in 0..24 {
            let th = 2.0 * PI * f64::from(k) / 24.0 + 0.1;
            let z = Complex64::from_polar(0.45, th);
            for n in 2..=3 {
                let a = log_expansion(n, z);
                let b = series_oracle(n, z);
                assert!((a - b).norm() < 1e-13 * b.norm(), "n={n} z={z}");
            }
        }
        // inversion vs log expansion on 2 <= |z| <= 3
        for k in 0..24 {
            let th = 2.0 * PI * f64::from(k) / 24.0 + 0.05;
            let z = Complex64::from_polar(2.5, th);
            let l = neg(z).ln();
            let inv2 = -series_oracle(2, z.inv()) - ZETA2 - 0.5 * l * l;
            let inv3 = series_oracle(3, z.inv()) - l * l * l / 6.0 - ZETA2 * l;
            assert!((log_expansion(2, z) - inv2).norm() < 1e-12 * inv2.norm());
            assert!((log_expansion(3, z) - inv3).norm() < 1e-12 * inv3.norm());
        }
    }

    #[test]
    fn known_special_values() {
        let ln2 = 2f64.ln();
        let v = li(2, c(0.5, 0.0)).unwrap();
        assert!((v.re - (PI * PI / 12.0 - ln2 * ln2 / 2.0)).abs() < 1e-14);
        let v = li(3, c(0.5, 0.0)).unwrap();
        let want = 7.0 / 8.0 * ZETA3 - PI * PI * ln2 / 12.0 + ln2.powi(3) / 6.0;
        assert!((v.re - want).abs() < 1e-14);
        let v = li(2, c(-1.0, 0.0)).unwrap();
        assert!((v.re + PI * PI / 12.0).abs() < 1e-14);
        let v = li(2, c(2.0, 0.0 + 1e-300)).unwrap();
        assert!((v.re - PI * PI / 4.0).abs() < 1e-13);
    }

    #[test]
    fn bloch_wigner_examples() {
        for &x in &[-5.0, -1.0, 0.0, 0.3, 1.0, 2.0, 1e6] {
            assert_eq!(bloch_wigner(c(x, 0.0)), 0.0);
        }
        let catalan: f64 = (0..2_000_000u32)
            .map(|k| {
                let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                s / f64::from(2 * k + 1).powi(2)
            })
            .sum();
        assert!((bloch_wigner(c(0.0, 1.0)) - catalan).abs() < 1e-12);
        assert!((bloch_wigner(c(0.0, 1.0)) - 0.915_965_594_2).abs() < 1e-10);
        let z = c(0.3, 0.7);
        assert!((bloch_wigner(z.conj()) + bloch_wigner(z)).abs() < 1e-15);
        assert_eq!(bloch_wigner(c(f64::INFINITY, 0.0)), 0.0);
    }

    #[test]
    fn sv_trilog_examples() {
        assert_eq!(sv_trilog(c(0.0, 0.0)), 0.0);
        assert!((sv_trilog(c(1.0, 0.0)) - 1.202_056_903_2).abs() < 1e-10);
        // zeta(3) by the series oracle
        let z3: f64 = (1..=100_000u32).map(|k| 1.0 / f64::from(k).powi(3)).sum::<f64>() + 0.5 / 1e10;
        assert!((sv_trilog(c(1.0, 0.0)) - z3).abs() < 1e-12);
        // defining expression with series-oracle Li_2(1/2), Li_3(1/2)
        let h = c(0.5, 0.0);
        let ln_h = 0.5f64.ln();
        let direct = series_oracle(3, h).re - ln_h * series_oracle(2, h).re - ln_h * ln_h * ln_h / 3.0;
        assert!((sv_trilog(h) - direct).abs() < 1e-14);
        assert!((direct - 7.0 / 8.0 * z3).abs() < 1e-12);
        assert!((sv_trilog(h) - 1.051_799_790_3).abs() < 1e-10);
        assert!((sv_trilog(c(-1.0, 0.0)) + 0.75 * ZETA3).abs() < 1e-14);
    }

    #[test]
    fn sv_value_constructor() {
        let v = SvValue::new(3, c(0.5, 0.0)).unwrap();
        assert_eq!(v.weight, 3);
        assert!(SvValue::new(4, c(0.5, 0.0)).is_err());
    }
}
