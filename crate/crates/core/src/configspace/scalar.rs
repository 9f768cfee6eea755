use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Relative genericity tolerance for the floating-point backend.
pub const EPS_GEN: f64 = 1e-10;

/// Field of scalars a configuration is defined over.
///
/// Two backends exist: [`GaussRat`] (exact `Q(i)`) and [`Complex64`].
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn to_c64(&self) -> Complex64;
    fn conj(&self) -> Self;

    /// Approximate modulus, used for pivoting and thresholds.
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Exactly zero on the exact backend; `|x| <= EPS_GEN * scale` on floats.
    fn is_negligible(&self, scale: f64) -> bool;
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_negligible(&self, scale: f64) -> bool {
        self.norm() <= EPS_GEN * scale
    }
}

/// Exact Gaussian rational `a + b i` with `a, b` in `Q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_ints(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussRat {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        GaussRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    /// Multiply by `i`.
    pub fn mul_i(&self) -> Self {
        GaussRat {
            re: -&self.im,
            im: self.re.clone(),
        }
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back on scaled integer division for huge numerators/denominators
        let n: &BigInt = r.numer();
        let d: &BigInt = r.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000);
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: GaussRat) -> GaussRat {
        self * o.inv()
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Scalar for GaussRat {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn one() -> Self {
        GaussRat {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
    fn from_i64(v: i64) -> Self {
        GaussRat::real(BigRational::from_integer(v.into()))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
    fn is_negligible(&self, _scale: f64) -> bool {
        Scalar::is_zero(self)
    }
}

/// Determinant of a square matrix (row-major) by Gaussian elimination with
/// partial pivoting on the approximate modulus.
pub fn det<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    match n {
        0 => return S::one(),
        1 => return m[0][0].clone(),
        2 => return m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        _ => {}
    }
    let mut a: Vec<Vec<S>> = m.to_vec();
    let mut result = S::one();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&x, &y| a[x][col].magnitude().total_cmp(&a[y][col].magnitude()));
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != col {
            a.swap(p, col);
            result = -result;
        }
        let pv = a[col][col].clone();
        result = result * pv.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / pv.clone();
            for c in col..n {
                let t = factor.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - t;
            }
        }
    }
    result
}
