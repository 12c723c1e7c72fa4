//! Exponent vectors and their canonical ordering.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial `x1^e1 * ... * xn^en`.
///
/// Ordered by total degree first; within one degree, larger exponent
/// vectors in lexicographic order come first, so `x1` sorts before `x2`
/// and `x1^2` before `x1*x2`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Expo(Vec<u32>);

impl Expo {
    pub fn new(exponents: Vec<u32>) -> Self {
        Expo(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        Expo(vec![0; nvars])
    }

    /// `x_k` with a 0-based index.
    pub fn unit(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Expo(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn get(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Expo) -> Expo {
        debug_assert_eq!(self.len(), other.len());
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` unless `other <= self` in every slot.
    pub fn checked_sub(&self, other: &Expo) -> Option<Expo> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Expo)
    }

    pub fn divides(&self, other: &Expo) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn with(&self, index: usize, value: u32) -> Expo {
        let mut e = self.0.clone();
        e[index] = value;
        Expo(e)
    }

    /// Drops slot `index`, shifting later slots down.
    pub fn remove(&self, index: usize) -> Expo {
        let mut e = self.0.clone();
        e.remove(index);
        Expo(e)
    }

    /// Inserts `value` at slot `index`, shifting later slots up.
    pub fn insert(&self, index: usize, value: u32) -> Expo {
        let mut e = self.0.clone();
        e.insert(index, value);
        Expo(e)
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for Expo {
    fn from(v: Vec<u32>) -> Self {
        Expo(v)
    }
}

impl From<&[u32]> for Expo {
    fn from(v: &[u32]) -> Self {
        Expo(v.to_vec())
    }
}

impl fmt::Debug for Expo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Expo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}
