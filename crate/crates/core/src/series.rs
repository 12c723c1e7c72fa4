//! Truncated multivariate formal power series with exact rational coefficients.
//!
//! A [`Series`] stores the terms of total degree at most `trunc` together with
//! a guaranteed degree `G <= trunc`: the coefficients of total degree `<= G`
//! are certified to be those of the exact result. Operations thread both
//! numbers through, so precision loss is always visible in the output.
//!
//! Variable indices in the public API are 1-based (`x1 ... xn`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expo::Expo;

/// Exact rational coefficient, always kept in lowest terms with a positive
/// denominator.
pub type Coeff = BigRational;

/// Builds the coefficient `num/den`.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Coeff {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Order of a series in one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    /// Every pure power of the variable vanishes up to the truncation.
    Flat,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(d) => Some(d),
            Order::Flat => None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "SeriesExport", try_from = "SeriesExport")]
pub struct Series {
    nvars: usize,
    trunc: u32,
    guaranteed: u32,
    terms: BTreeMap<Expo, Coeff>,
}

impl Series {
    pub fn zero(nvars: usize, trunc: u32) -> Self {
        Series {
            nvars,
            trunc,
            guaranteed: trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, trunc: u32) -> Self {
        Self::constant(nvars, trunc, Coeff::one())
    }

    pub fn constant(nvars: usize, trunc: u32, c: Coeff) -> Self {
        let mut s = Self::zero(nvars, trunc);
        if !c.is_zero() {
            s.terms.insert(Expo::zero(nvars), c);
        }
        s
    }

    /// The coordinate function `x_var`.
    pub fn variable(nvars: usize, trunc: u32, var: usize) -> Result<Self> {
        let slot = check_var(var, nvars)?;
        Self::from_terms(nvars, trunc, [(Expo::unit(nvars, slot), Coeff::one())])
    }

    /// Builds a series from `(exponent, coefficient)` pairs, summing repeats
    /// and dropping zero coefficients and terms above `trunc`.
    pub fn from_terms<E, I>(nvars: usize, trunc: u32, terms: I) -> Result<Self>
    where
        E: Into<Expo>,
        I: IntoIterator<Item = (E, Coeff)>,
    {
        let mut map: BTreeMap<Expo, Coeff> = BTreeMap::new();
        for (e, c) in terms {
            let e = e.into();
            if e.len() != nvars {
                return Err(Error::ExponentLength {
                    expected: nvars,
                    found: e.len(),
                });
            }
            if e.total_degree() > trunc {
                continue;
            }
            *map.entry(e).or_insert_with(Coeff::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Series {
            nvars,
            trunc,
            guaranteed: trunc,
            terms: map,
        })
    }

    pub(crate) fn from_map(
        nvars: usize,
        trunc: u32,
        guaranteed: u32,
        mut terms: BTreeMap<Expo, Coeff>,
    ) -> Self {
        terms.retain(|e, c| !c.is_zero() && e.total_degree() <= trunc);
        Series {
            nvars,
            trunc,
            guaranteed: guaranteed.min(trunc),
            terms,
        }
    }

    fn from_hash(nvars: usize, trunc: u32, guaranteed: u32, terms: HashMap<Expo, Coeff>) -> Self {
        Self::from_map(nvars, trunc, guaranteed, terms.into_iter().collect())
    }

    /// Lowers (never raises) the certified degree.
    pub fn with_guaranteed_degree(mut self, degree: u32) -> Self {
        self.guaranteed = self.guaranteed.min(degree);
        self
    }

    /// Resets the certified degree to `min(degree, trunc)`. Used where an
    /// algorithm knows its own precision independently of the operands.
    pub(crate) fn certify(mut self, degree: u32) -> Self {
        self.guaranteed = degree.min(self.trunc);
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn guaranteed_degree(&self) -> u32 {
        self.guaranteed
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Coeff)> + '_ {
        self.terms.iter()
    }

    /// Number of stored nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Expo> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Coeff {
        self.terms
            .get(&Expo::from(exponents))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&vec![0; self.nvars])
    }

    /// Largest total degree of a stored term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Expo::total_degree)
    }

    /// Largest exponent of `x_var` among stored terms.
    pub fn degree_in(&self, var: usize) -> Result<u32> {
        let slot = check_var(var, self.nvars)?;
        Ok(self.terms.keys().map(|e| e.get(slot)).max().unwrap_or(0))
    }

    /// True when no stored term has total degree `<= degree`.
    pub fn vanishes_through(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.total_degree() > degree)
    }

    /// True when `self` and `other` have the same coefficients in every
    /// total degree `<= degree`.
    pub fn agrees_through(&self, other: &Series, degree: u32) -> Result<bool> {
        self.ensure_same_vars(other)?;
        let low = |s: &Series| {
            s.terms
                .iter()
                .filter(|(e, _)| e.total_degree() <= degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect::<Vec<_>>()
        };
        Ok(low(self) == low(other))
    }

    /// Exact structural identity, including truncation metadata.
    pub fn identical(&self, other: &Series) -> bool {
        self.nvars == other.nvars
            && self.trunc == other.trunc
            && self.guaranteed == other.guaranteed
            && self.terms == other.terms
    }

    pub fn truncate(&self, trunc: u32) -> Series {
        let trunc = trunc.min(self.trunc);
        Series::from_map(self.nvars, trunc, self.guaranteed, self.terms.clone())
    }

    /// The terms of total degree exactly `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> Series {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.total_degree() == degree)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Series::from_map(self.nvars, self.trunc, self.guaranteed, terms)
    }

    fn ensure_same_vars(&self, other: &Series) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        self.ensure_same_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert_with(Coeff::zero) += c;
        }
        Ok(Series::from_map(
            self.nvars,
            trunc,
            self.guaranteed.min(other.guaranteed),
            terms,
        ))
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Coeff) -> Series {
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        Series::from_map(self.nvars, self.trunc, self.guaranteed, terms)
    }

    /// Truncated product: terms of total degree above `min(trunc)` are dropped.
    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        self.ensure_same_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut acc: HashMap<Expo, Coeff> = HashMap::new();
        let rhs: Vec<(&Expo, u32, &Coeff)> = other
            .terms
            .iter()
            .map(|(e, c)| (e, e.total_degree(), c))
            .collect();
        for (ea, ca) in &self.terms {
            let da = ea.total_degree();
            if da > trunc {
                break;
            }
            for &(eb, db, cb) in &rhs {
                if da + db > trunc {
                    break;
                }
                *acc.entry(ea.add(eb)).or_insert_with(Coeff::zero) += ca * cb;
            }
        }
        Ok(Series::from_hash(
            self.nvars,
            trunc,
            self.guaranteed.min(other.guaranteed),
            acc,
        ))
    }

    pub fn pow(&self, mut exp: u32) -> Series {
        let mut result = Series::one(self.nvars, self.trunc).certify(self.guaranteed);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplicative inverse of a unit, computed degree by degree.
    pub fn invert_unit(&self) -> Result<Series> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = a0.recip();
        let n = self.trunc;
        let by_degree = group_by_degree(&self.terms, n);
        let mut result: Vec<Vec<(Expo, Coeff)>> = vec![vec![(Expo::zero(self.nvars), inv0.clone())]];
        for d in 1..=n {
            // degree-d part of self * result, using result's degrees < d
            let mut acc: HashMap<Expo, Coeff> = HashMap::new();
            for (i, layer) in by_degree.iter().enumerate().take(d as usize + 1).skip(1) {
                for (ea, ca) in layer {
                    for (eb, cb) in &result[d as usize - i] {
                        *acc.entry(ea.add(eb)).or_insert_with(Coeff::zero) += ca * cb;
                    }
                }
            }
            let mut layer: Vec<(Expo, Coeff)> = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, -(c * &inv0)))
                .collect();
            layer.sort_by(|a, b| a.0.cmp(&b.0));
            result.push(layer);
        }
        Ok(Series::from_map(
            self.nvars,
            n,
            self.guaranteed,
            result.into_iter().flatten().collect(),
        ))
    }

    /// `f(g_1, ..., g_n)` for series `g_i` without constant term.
    pub fn compose(&self, gs: &[Series]) -> Result<Series> {
        if gs.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: gs.len(),
            });
        }
        let Some(first) = gs.first() else {
            return Ok(self.clone());
        };
        let m = first.nvars;
        for g in gs {
            if g.nvars != m {
                return Err(Error::VariableCountMismatch {
                    left: m,
                    right: g.nvars,
                });
            }
        }
        for (i, g) in gs.iter().enumerate() {
            if !g.constant_term().is_zero() {
                return Err(Error::NonzeroConstantSubstitution { index: i + 1 });
            }
        }
        let trunc = gs.iter().map(|g| g.trunc).fold(self.trunc, u32::min);
        let guaranteed = gs.iter().map(|g| g.guaranteed).fold(self.guaranteed, u32::min);
        let gs: Vec<Series> = gs.iter().map(|g| g.truncate(trunc)).collect();

        // powers[i][e] = g_i^e, built on demand
        let mut powers: Vec<Vec<Series>> = gs
            .iter()
            .map(|g| vec![Series::one(m, trunc).certify(g.guaranteed)])
            .collect();
        let mut result = Series::zero(m, trunc);
        for (e, c) in &self.terms {
            // every g_i has order >= 1, so this term lands above trunc
            if e.total_degree() > trunc {
                break;
            }
            let mut prod = Series::constant(m, trunc, c.clone());
            for (i, &ei) in e.as_slice().iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                while powers[i].len() <= ei as usize {
                    let next = powers[i].last().unwrap() * &gs[i];
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][ei as usize];
            }
            result = &result + &prod;
        }
        Ok(result.certify(guaranteed))
    }

    /// Replaces `x_var` by `phi`, a series in the remaining variables
    /// (indices compacted) with `phi(0) = 0`. The result lives in those
    /// remaining variables.
    pub fn substitute(&self, var: usize, phi: &Series) -> Result<Series> {
        let slot = check_var(var, self.nvars)?;
        if phi.nvars + 1 != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars - 1,
                right: phi.nvars,
            });
        }
        if !phi.constant_term().is_zero() {
            return Err(Error::NonzeroConstantSubstitution { index: var });
        }
        let trunc = self.trunc.min(phi.trunc);
        let layers = self.layers(slot);
        let top = layers.keys().next_back().copied().unwrap_or(0);
        let mut acc = Series::zero(phi.nvars, trunc);
        for j in (0..=top).rev() {
            acc = &acc * phi;
            if let Some(layer) = layers.get(&j) {
                acc = &acc + &Series::from_map(phi.nvars, trunc, trunc, layer.clone());
            }
        }
        Ok(acc.certify(self.guaranteed.min(phi.guaranteed)))
    }

    /// Splits the terms by exponent of slot `slot`, removing that slot.
    pub(crate) fn layers(&self, slot: usize) -> BTreeMap<u32, BTreeMap<Expo, Coeff>> {
        let mut out: BTreeMap<u32, BTreeMap<Expo, Coeff>> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.get(slot))
                .or_default()
                .insert(e.remove(slot), c.clone());
        }
        out
    }

    /// Formal partial derivative. The top degree is lost, so both the
    /// truncation and the guaranteed degree drop by one.
    pub fn partial_derivative(&self, var: usize) -> Result<Series> {
        let slot = check_var(var, self.nvars)?;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.get(slot) > 0)
            .map(|(e, c)| {
                let k = e.get(slot);
                (e.with(slot, k - 1), c * BigInt::from(k))
            })
            .collect();
        Ok(Series::from_map(
            self.nvars,
            self.trunc.saturating_sub(1),
            self.guaranteed.saturating_sub(1),
            terms,
        ))
    }

    /// Coefficients of `f(0, ..., x_var, ..., 0)` in degrees `0..=trunc`.
    pub fn restriction_to_axis(&self, var: usize) -> Result<Vec<Coeff>> {
        let slot = check_var(var, self.nvars)?;
        let mut out = vec![Coeff::zero(); self.trunc as usize + 1];
        for (e, c) in &self.terms {
            let k = e.get(slot);
            if e.total_degree() == k {
                out[k as usize] = c.clone();
            }
        }
        Ok(out)
    }

    /// Least `d` with a nonzero coefficient of `x_var^d` in `f(0,...,x_var,...,0)`.
    pub fn order_in_variable(&self, var: usize) -> Result<Order> {
        let axis = self.restriction_to_axis(var)?;
        Ok(axis
            .iter()
            .position(|c| !c.is_zero())
            .map_or(Order::Flat, |d| Order::Finite(d as u32)))
    }

    /// Replaces `x_var` by `x_var^2`.
    pub fn substitute_square(&self, var: usize) -> Result<Series> {
        let slot = check_var(var, self.nvars)?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.with(slot, 2 * e.get(slot)), c.clone()))
            .collect();
        Ok(Series::from_map(self.nvars, self.trunc, self.guaranteed, terms))
    }

    /// Multiplies by `x_var`; truncation and guaranteed degree rise by one.
    pub fn multiply_by_variable(&self, var: usize) -> Result<Series> {
        let slot = check_var(var, self.nvars)?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.with(slot, e.get(slot) + 1), c.clone()))
            .collect();
        Ok(Series::from_map(
            self.nvars,
            self.trunc + 1,
            self.guaranteed + 1,
            terms,
        ))
    }

    /// Adds a new variable at position `var` (1-based, up to `nvars + 1`);
    /// existing variables from that position on shift up by one.
    pub fn insert_variable(&self, var: usize) -> Result<Series> {
        let slot = check_var(var, self.nvars + 1)?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.insert(slot, 0), c.clone()))
            .collect();
        Ok(Series::from_map(self.nvars + 1, self.trunc, self.guaranteed, terms))
    }

    /// Drops variable `var`, which must not occur; later variables shift down.
    pub fn remove_variable(&self, var: usize) -> Result<Series> {
        let slot = check_var(var, self.nvars)?;
        if self.terms.keys().any(|e| e.get(slot) != 0) {
            return Err(Error::DependsOnVariable { var });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.remove(slot), c.clone()))
            .collect();
        Ok(Series::from_map(self.nvars - 1, self.trunc, self.guaranteed, terms))
    }

    /// Sets `x_var = 0` and drops the variable.
    pub fn restrict_to_zero(&self, var: usize) -> Result<Series> {
        let slot = check_var(var, self.nvars)?;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.get(slot) == 0)
            .map(|(e, c)| (e.remove(slot), c.clone()))
            .collect();
        Ok(Series::from_map(self.nvars - 1, self.trunc, self.guaranteed, terms))
    }

    pub fn export(&self) -> SeriesExport {
        SeriesExport::from(self.clone())
    }
}

/// Converts a 1-based variable index into a 0-based slot.
pub(crate) fn check_var(var: usize, nvars: usize) -> Result<usize> {
    if var == 0 || var > nvars {
        return Err(Error::InvalidVariable { index: var, nvars });
    }
    Ok(var - 1)
}

fn group_by_degree(terms: &BTreeMap<Expo, Coeff>, max: u32) -> Vec<Vec<(Expo, Coeff)>> {
    let mut out = vec![Vec::new(); max as usize + 1];
    for (e, c) in terms {
        let d = e.total_degree();
        if d <= max {
            out[d as usize].push((e.clone(), c.clone()));
        }
    }
    out
}

/// Equality up to the smaller of the two guaranteed degrees.
impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self
                .agrees_through(other, self.guaranteed.min(other.guaranteed))
                .unwrap_or(false)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        /// Panics on a variable-count mismatch; use the `try_` method to
        /// get an error instead.
        impl std::ops::$trait<&Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                self.$try(rhs).expect("series variable count mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}

/// Canonical text: `x1^2 + -3/2*x1*x2`.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_term(f, e, c)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, e: &Expo, c: &Coeff) -> fmt::Result {
    let vars: Vec<String> = e
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, k)
            }
        })
        .collect();
    if vars.is_empty() {
        return write!(f, "{}", format_coeff(c));
    }
    if !c.is_one() {
        write!(f, "{}*", format_coeff(c))?;
    }
    write!(f, "{}", vars.join("*"))
}

pub fn format_coeff(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Structured mirror of a [`Series`] used for JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesExport {
    pub nvars: usize,
    pub trunc: u32,
    pub guaranteed_degree: u32,
    pub terms: Vec<TermExport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermExport {
    pub expo: Vec<u32>,
    pub numerator: String,
    pub denominator: String,
}

impl From<Series> for SeriesExport {
    fn from(s: Series) -> Self {
        SeriesExport {
            nvars: s.nvars,
            trunc: s.trunc,
            guaranteed_degree: s.guaranteed,
            terms: s
                .terms
                .into_iter()
                .map(|(e, c)| TermExport {
                    expo: e.into_vec(),
                    numerator: c.numer().to_string(),
                    denominator: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesExport> for Series {
    type Error = String;

    fn try_from(x: SeriesExport) -> std::result::Result<Self, String> {
        let mut terms = Vec::with_capacity(x.terms.len());
        for t in x.terms {
            let num: BigInt = t.numerator.parse().map_err(|e| format!("numerator: {e}"))?;
            let den: BigInt = t
                .denominator
                .parse()
                .map_err(|e| format!("denominator: {e}"))?;
            if !den.is_positive() {
                return Err("denominator must be positive".into());
            }
            terms.push((t.expo, BigRational::new(num, den)));
        }
        let s = Series::from_terms(x.nvars, x.trunc, terms).map_err(|e| e.to_string())?;
        Ok(s.certify(x.guaranteed_degree))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(nvars: usize, trunc: u32, terms: &[(&[u32], i64, i64)]) -> Series {
        Series::from_terms(
            nvars,
            trunc,
            terms.iter().map(|(e, n, d)| (e.to_vec(), ratio(*n, *d))),
        )
        .unwrap()
    }

    #[test]
    fn add_examples() {
        let x1 = s(2, 5, &[(&[1, 0], 1, 1)]);
        assert!((&x1 + &x1.neg()).is_zero());

        let a = s(2, 5, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1)]);
        let b = s(2, 5, &[(&[0, 1], 1, 1)]);
        assert_eq!((&a + &b).to_string(), "1 + x1 + x2");

        let a = s(2, 5, &[(&[2, 0], 1, 1), (&[0, 1], 1, 2)]);
        let b = s(2, 5, &[(&[0, 1], 1, 2)]);
        assert_eq!((&a + &b).to_string(), "x2 + x1^2");
    }

    #[test]
    fn add_rejects_mismatch() {
        let a = Series::zero(1, 3);
        let b = Series::zero(2, 3);
        assert_eq!(
            a.try_add(&b).unwrap_err(),
            Error::VariableCountMismatch { left: 1, right: 2 }
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn add_takes_min_precision() {
        let a = Series::zero(1, 7).with_guaranteed_degree(5);
        let b = Series::zero(1, 6);
        let c = &a + &b;
        assert_eq!(c.trunc(), 6);
        assert_eq!(c.guaranteed_degree(), 5);
    }

    #[test]
    fn mul_examples() {
        let a = s(1, 2, &[(&[0], 1, 1), (&[1], 1, 1)]);
        let b = s(1, 2, &[(&[0], 1, 1), (&[1], -1, 1)]);
        assert_eq!((&a * &b).to_string(), "1 + -1*x1^2");

        let x = s(2, 1, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)]);
        assert!((&x * &x).is_zero());

        let a = s(2, 3, &[(&[0, 2], 1, 1), (&[1, 0], 1, 1)]);
        let b = s(2, 3, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1)]);
        let expected = s(
            2,
            3,
            &[(&[0, 2], 1, 1), (&[1, 0], 1, 1), (&[1, 2], 1, 1), (&[2, 0], 1, 1)],
        );
        assert!((&a * &b).identical(&expected));
    }

    #[test]
    fn invert_examples() {
        let a = s(1, 3, &[(&[0], 1, 1), (&[1], -1, 1)]);
        assert_eq!(a.invert_unit().unwrap().to_string(), "1 + x1 + x1^2 + x1^3");

        let two = s(1, 3, &[(&[0], 2, 1)]);
        assert_eq!(two.invert_unit().unwrap().to_string(), "1/2");

        let a = s(2, 2, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1), (&[0, 1], 1, 1)]);
        let inv = a.invert_unit().unwrap();
        assert_eq!(
            inv.to_string(),
            "1 + -1*x1 + -1*x2 + x1^2 + 2*x1*x2 + x2^2"
        );
        let back = &a * &inv;
        assert!((&back - &Series::one(2, 2)).is_zero());
    }

    #[test]
    fn invert_rejects_non_unit() {
        let x = Series::variable(1, 4, 1).unwrap();
        assert_eq!(x.invert_unit().unwrap_err(), Error::NonUnit);
    }

    #[test]
    fn compose_examples() {
        let f = s(1, 4, &[(&[2], 1, 1)]);
        let g = s(2, 4, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)]);
        assert_eq!(f.compose(std::slice::from_ref(&g)).unwrap().to_string(), "x1^2 + 2*x1*x2 + x2^2");

        let id = s(1, 4, &[(&[1], 1, 1)]);
        assert!(id.compose(std::slice::from_ref(&g)).unwrap().identical(&g));

        let f = s(1, 2, &[(&[0], 1, 1), (&[1], 1, 1), (&[2], 1, 1)]);
        let g2 = g.truncate(2);
        assert_eq!(
            f.compose(&[g2]).unwrap().to_string(),
            "1 + x1 + x2 + x1^2 + 2*x1*x2 + x2^2"
        );
    }

    #[test]
    fn compose_errors() {
        let f = s(2, 4, &[(&[1, 1], 1, 1)]);
        let g = Series::variable(1, 4, 1).unwrap();
        assert_eq!(
            f.compose(std::slice::from_ref(&g)).unwrap_err(),
            Error::ArityMismatch { expected: 2, found: 1 }
        );
        let c = &g + &Series::one(1, 4);
        assert_eq!(
            f.compose(&[g, c]).unwrap_err(),
            Error::NonzeroConstantSubstitution { index: 2 }
        );
    }

    #[test]
    fn derivative_examples() {
        let f = s(2, 5, &[(&[1, 2], 1, 1)]);
        let d = f.partial_derivative(2).unwrap();
        assert_eq!(d.to_string(), "2*x1*x2");
        assert_eq!(d.guaranteed_degree(), 4);

        let c = s(2, 5, &[(&[0, 0], 7, 1)]);
        assert!(c.partial_derivative(1).unwrap().is_zero());

        let f = s(2, 5, &[(&[3, 0], 1, 1), (&[1, 2], -3, 1)]);
        assert_eq!(f.partial_derivative(1).unwrap().to_string(), "3*x1^2 + -3*x2^2");

        assert_eq!(
            f.partial_derivative(3).unwrap_err(),
            Error::InvalidVariable { index: 3, nvars: 2 }
        );
    }

    #[test]
    fn order_examples() {
        let f = s(2, 6, &[(&[0, 2], 1, 1), (&[0, 3], 1, 1), (&[1, 0], 1, 1)]);
        assert_eq!(f.order_in_variable(2).unwrap(), Order::Finite(2));
        let x1 = s(2, 6, &[(&[1, 0], 1, 1)]);
        assert_eq!(x1.order_in_variable(2).unwrap(), Order::Flat);
        let m = s(3, 6, &[(&[0, 0, 5], 1, 1)]);
        assert_eq!(m.order_in_variable(3).unwrap(), Order::Finite(5));
        assert!(m.order_in_variable(0).is_err());
    }

    #[test]
    fn substitute_square_examples() {
        let f = s(2, 4, &[(&[2, 0], 1, 1), (&[0, 1], 1, 1)]);
        assert_eq!(f.substitute_square(2).unwrap().to_string(), "x1^2 + x2^2");
        let one = Series::one(2, 4);
        assert!(one.substitute_square(2).unwrap().identical(&one));
        let f = s(2, 4, &[(&[1, 0], 1, 1), (&[0, 2], 3, 1)]);
        assert_eq!(f.substitute_square(2).unwrap().to_string(), "x1 + 3*x2^4");
        // x2^3 -> x2^6 leaves the truncation
        let f = s(2, 4, &[(&[0, 3], 1, 1)]);
        assert!(f.substitute_square(2).unwrap().is_zero());
    }

    #[test]
    fn substitute_matches_compose() {
        // f = x1 + x2^2 + x1*x2, x2 := x1^2
        let f = s(2, 6, &[(&[1, 0], 1, 1), (&[0, 2], 1, 1), (&[1, 1], 1, 1)]);
        let phi = s(1, 6, &[(&[2], 1, 1)]);
        let via_sub = f.substitute(2, &phi).unwrap();
        let x1 = Series::variable(1, 6, 1).unwrap();
        let via_compose = f.compose(&[x1, phi]).unwrap();
        assert!(via_sub.identical(&via_compose));
        assert_eq!(via_sub.to_string(), "x1 + x1^3 + x1^4");
    }

    #[test]
    fn equality_respects_guaranteed_degree() {
        let a = s(1, 6, &[(&[1], 1, 1), (&[5], 1, 1)]).with_guaranteed_degree(3);
        let b = s(1, 6, &[(&[1], 1, 1)]);
        assert_eq!(a, b);
        assert!(!a.identical(&b));
        let c = s(1, 6, &[(&[2], 1, 1)]);
        assert_ne!(a, c);
    }

    #[test]
    fn canonical_text_forms() {
        let f = s(2, 4, &[(&[2, 0], 1, 1), (&[1, 1], -3, 2)]);
        assert_eq!(f.to_string(), "x1^2 + -3/2*x1*x2");
        let g = s(1, 4, &[(&[1], -1, 1)]);
        assert_eq!(g.to_string(), "-1*x1");
        assert_eq!(Series::zero(3, 2).to_string(), "0");
    }

    #[test]
    fn json_export_round_trip() {
        let f = s(2, 4, &[(&[2, 0], 1, 1), (&[1, 1], -3, 2)]).with_guaranteed_degree(3);
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.contains("\"guaranteed_degree\":3"));
        assert!(text.contains("\"numerator\":\"-3\""));
        let back: Series = serde_json::from_str(&text).unwrap();
        assert!(back.identical(&f));
    }
}
