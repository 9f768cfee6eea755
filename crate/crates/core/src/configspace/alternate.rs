//! Signed sums over the symmetric group.

use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::formal::FormalSum;
use super::scalar::{GaussRat, Scalar};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`alternate`].
pub const MAX_ALT: usize = 8;

/// A permutation in one-line notation with its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    pub images: Vec<usize>,
    pub sign: i32,
}

fn sign_of(p: &[usize]) -> i32 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Result<&'static [Permutation]> {
    static CACHE: [OnceLock<Vec<Permutation>>; MAX_ALT + 1] = [const { OnceLock::new() }; MAX_ALT + 1];
    if n > MAX_ALT {
        return Err(Error::Size(format!("alternation over S_{n} exceeds S_{MAX_ALT}")));
    }
    Ok(CACHE[n].get_or_init(|| {
        let mut p: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        loop {
            out.push(Permutation {
                sign: sign_of(&p),
                images: p.clone(),
            });
            if !next_permutation(&mut p) {
                break;
            }
        }
        out
    }))
}

/// Values that can be summed by the alternation engine.
pub trait AltValue: Sized + Send {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn neg(self) -> Self;

    /// Deterministic reduction of an ordered list of terms.
    fn reduce(terms: Vec<Self>) -> Self {
        terms.into_iter().fold(Self::zero(), Self::add)
    }
}

fn pairwise<T: Copy>(xs: &[T], zero: T, add: fn(T, T) -> T) -> T {
    match xs.len() {
        0 => zero,
        1 => xs[0],
        n => {
            let (a, b) = xs.split_at(n / 2);
            add(pairwise(a, zero, add), pairwise(b, zero, add))
        }
    }
}

impl AltValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn neg(self) -> Self {
        -self
    }
    fn reduce(terms: Vec<Self>) -> Self {
        pairwise(&terms, 0.0, |a, b| a + b)
    }
}

impl AltValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn neg(self) -> Self {
        -self
    }
    fn reduce(terms: Vec<Self>) -> Self {
        pairwise(&terms, Complex64::new(0.0, 0.0), |a, b| a + b)
    }
}

impl AltValue for i64 {
    fn zero() -> Self {
        0
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn neg(self) -> Self {
        -self
    }
}

impl AltValue for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn neg(self) -> Self {
        -self
    }
}

impl AltValue for GaussRat {
    fn zero() -> Self {
        <GaussRat as Scalar>::zero()
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn neg(self) -> Self {
        -self
    }
}

impl<K: Ord + Clone + Send> AltValue for FormalSum<K> {
    fn zero() -> Self {
        FormalSum::new()
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn neg(self) -> Self {
        -self
    }
}

/// `sum_{sigma in S_n} sgn(sigma) * evaluator(sigma)`.
///
/// Permutations are visited in lexicographic order and evaluated in
/// parallel; the reduction order is fixed, so the result does not depend on
/// scheduling.
pub fn alternate<T, F>(n: usize, evaluator: F) -> Result<T>
where
    T: AltValue,
    F: Fn(&[usize]) -> T + Sync,
{
    let perms = permutations(n)?;
    let terms: Vec<T> = perms
        .par_iter()
        .map(|p| {
            let v = evaluator(&p.images);
            if p.sign > 0 {
                v
            } else {
                v.neg()
            }
        })
        .collect();
    Ok(T::reduce(terms))
}

/// Fallible variant of [`alternate`]; the first error in permutation order wins.
pub fn try_alternate<T, F>(n: usize, evaluator: F) -> Result<T>
where
    T: AltValue,
    F: Fn(&[usize]) -> Result<T> + Sync,
{
    let perms = permutations(n)?;
    let terms: Vec<Result<T>> = perms
        .par_iter()
        .map(|p| evaluator(&p.images).map(|v| if p.sign > 0 { v } else { v.neg() }))
        .collect();
    let terms = terms.into_iter().collect::<Result<Vec<T>>>()?;
    Ok(T::reduce(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let p = permutations(4).unwrap();
        assert_eq!(p.len(), 24);
        assert_eq!(p[0].images, vec![0, 1, 2, 3]);
        assert_eq!(p[1].images, vec![0, 1, 3, 2]);
        assert_eq!(p[23].images, vec![3, 2, 1, 0]);
        assert_eq!(p.iter().map(|q| q.sign).sum::<i32>(), 0);
        assert_eq!(permutations(0).unwrap().len(), 1);
    }

    #[test]
    fn constant_evaluator_cancels() {
        for n in 2..=6 {
            assert_eq!(alternate(n, |_| 1i64).unwrap(), 0);
        }
    }

    #[test]
    fn sign_probe_gives_factorial() {
        // evaluator returning sgn(sigma) makes every term +1
        for (n, fact) in [(1, 1), (3, 6), (5, 120), (6, 720)] {
            assert_eq!(alternate(n, |p| i64::from(sign_of(p))).unwrap(), fact);
        }
    }

    #[test]
    fn size_guard() {
        assert!(matches!(alternate(9, |_| 0i64), Err(Error::Size(_))));
        assert!(alternate(8, |_| 0i64).is_ok());
    }

    #[test]
    fn float_reduction_is_deterministic() {
        let f = |p: &[usize]| {
            p.iter()
                .enumerate()
                .map(|(i, &v)| ((i + 1) as f64).ln() * (v as f64 + 0.1).sqrt())
                .sum::<f64>()
        };
        let a = alternate(6, f).unwrap();
        let b = alternate(6, f).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
