use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Finite rational linear combination of symbols.
///
/// Zero coefficients are never stored, so two sums are equal exactly when
/// their maps are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, BigRational>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: BigRational) -> Self {
        let mut s = Self::new();
        s.add_term(key, coeff);
        s
    }

    pub fn symbol(key: K) -> Self {
        Self::single(key, BigRational::one())
    }

    pub fn add_term(&mut self, key: K, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add_sum(&mut self, other: &FormalSum<K>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::new();
        }
        FormalSum {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * factor)).collect(),
        }
    }

    /// Linear extension of a map on symbols.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> FormalSum<K2>) -> FormalSum<K2> {
        let mut out = FormalSum::new();
        for (k, c) in &self.terms {
            out.add_sum(&f(k).scaled(c));
        }
        out
    }

    pub fn coeff(&self, key: &K) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> Add for FormalSum<K> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (k, c) in o.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl<K: Ord + Clone> Neg for FormalSum<K> {
    type Output = Self;
    fn neg(self) -> Self {
        FormalSum {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<K: Ord + Clone> Sub for FormalSum<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut s = FormalSum::new();
        s.add_term("a", q(1, 2));
        s.add_term("b", q(1, 3));
        s.add_term("a", q(-1, 2));
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff(&"b"), q(1, 3));
        let t = s.clone() - s;
        assert!(t.is_zero());
    }

    #[test]
    fn linear_map() {
        let s = FormalSum::single(2u32, q(3, 1)) + FormalSum::single(5u32, q(1, 1));
        let doubled = s.map_linear(|k| FormalSum::single(k * 2, q(1, 2)));
        assert_eq!(doubled.coeff(&4), q(3, 2));
        assert_eq!(doubled.coeff(&10), q(1, 2));
    }
}
