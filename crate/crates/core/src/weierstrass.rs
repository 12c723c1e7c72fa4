//! Weierstrass division and preparation in a distinguished variable.
//!
//! Both operate on the truncations as exact polynomials: the quotient and
//! remainder returned are those of the exact division of the truncated
//! inputs, correct in every total degree up to the truncation. The certified
//! degree reported is the conservative `N - d`.
//!
//! The division runs over the grading by degree in the other variables
//! `x'`. Writing `f = f^(0)(x_k) + f^(1) + ...` with `f^(j)` homogeneous of
//! degree `j` in `x'`, the `x'`-degree-`s` part of `g = q f + r` reads
//!
//! ```text
//! q^(s) f^(0) + r^(s) = g^(s) - sum_{j>=1} q^(s-j) f^(j)
//! ```
//!
//! and `f^(0) = x_k^d * unit(x_k)`, so each level is a univariate division.
//! A level only depends on lower levels, which makes the recursion finite.
//! Quotient coefficients of high `x_k`-degree at low `x'`-degree feed the
//! low total degrees of later levels, so each level is carried to the
//! `x_k`-degree computed by [`quotient_depths`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expo::Expo;
use crate::series::{check_var, Coeff, Order, Series};

/// `x_k^d + a_1 x_k^(d-1) + ... + a_d` with each `a_i` a series in the
/// other variables (indices compacted, `x_k` removed) vanishing at 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistinguishedPoly {
    /// Distinguished variable, 1-based, in the ambient numbering.
    pub var: usize,
    /// Number of ambient variables.
    pub nvars: usize,
    pub trunc: u32,
    /// `a_1, ..., a_d`.
    pub coeffs: Vec<Series>,
}

impl DistinguishedPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// The ambient series `x_k^d + sum a_i x_k^(d-i)`.
    pub fn expand(&self) -> Result<Series> {
        let slot = check_var(self.var, self.nvars)?;
        let d = self.coeffs.len() as u32;
        let guaranteed = self
            .coeffs
            .iter()
            .map(Series::guaranteed_degree)
            .fold(self.trunc, u32::min);
        let mut terms: BTreeMap<Expo, Coeff> = BTreeMap::new();
        terms.insert(Expo::zero(self.nvars).with(slot, d), Coeff::one());
        for (i, a) in self.coeffs.iter().enumerate() {
            let power = d - 1 - i as u32;
            for (e, c) in a.terms() {
                *terms.entry(e.insert(slot, power)).or_insert_with(Coeff::zero) += c;
            }
        }
        Ok(Series::from_map(self.nvars, self.trunc, guaranteed, terms))
    }

    /// True when every `a_i(0) = 0`.
    pub fn is_distinguished(&self) -> bool {
        self.coeffs.iter().all(|a| a.constant_term().is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisionResult {
    pub quotient: Series,
    pub remainder: Series,
    pub order: u32,
    pub var: usize,
    pub guaranteed_degree: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreparationResult {
    pub unit: Series,
    pub poly: DistinguishedPoly,
    pub guaranteed_degree: u32,
}

type Univariate = Vec<Coeff>;

/// Splits a series by its `x'`-part; values are dense in the `x_k` exponent.
fn layered(s: &Series, slot: usize) -> BTreeMap<Expo, Univariate> {
    let mut out: BTreeMap<Expo, Univariate> = BTreeMap::new();
    for (e, c) in s.terms() {
        let k = e.get(slot) as usize;
        let v = out.entry(e.remove(slot)).or_default();
        if v.len() <= k {
            v.resize(k + 1, Coeff::zero());
        }
        v[k] = c.clone();
    }
    out
}

fn trim(mut v: Univariate) -> Univariate {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Product truncated to `len` coefficients.
fn mul_univariate(a: &[Coeff], b: &[Coeff], len: usize) -> Univariate {
    let mut out = vec![Coeff::zero(); len.min((a.len() + b.len()).saturating_sub(1))];
    for (i, x) in a.iter().enumerate() {
        if i >= out.len() {
            break;
        }
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= out.len() {
                break;
            }
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// First `len` coefficients of `1/a`, `a[0] != 0`.
fn invert_univariate(a: &[Coeff], len: usize) -> Univariate {
    let inv0 = a[0].recip();
    let mut out: Univariate = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            out.push(inv0.clone());
            continue;
        }
        let mut acc = Coeff::zero();
        for i in 1..=n.min(a.len() - 1) {
            if !a[i].is_zero() {
                acc += &a[i] * &out[n - i];
            }
        }
        out.push(-(acc * &inv0));
    }
    out
}

/// `x_k`-degree to which the `x'`-degree-`s` level of the quotient must be
/// carried, for `s = 0..=trunc`.
///
/// `min_k_degree[j]` is the least `x_k` exponent among the terms of `f`
/// with `x'`-degree `j` (`None` if there are none).
fn quotient_depths(trunc: u32, order: u32, min_k_degree: &[Option<u32>]) -> Vec<u32> {
    let n = trunc as usize;
    let mut depth = vec![0u32; n + 1];
    for s in (0..=n).rev() {
        let mut need = (n - s) as i64;
        for (j, m) in min_k_degree.iter().enumerate().skip(1) {
            if s + j > n {
                break;
            }
            if let Some(m) = m {
                need = need.max(depth[s + j] as i64 + order as i64 - *m as i64);
            }
        }
        depth[s] = need.max(0) as u32;
    }
    depth
}

/// Weierstrass division `g = q f + r` with `deg_{x_var} r < d`, where `d`
/// is the order of `f` in `x_var`.
pub fn weierstrass_divide(g: &Series, f: &Series, var: usize) -> Result<DivisionResult> {
    if g.nvars() != f.nvars() {
        return Err(Error::VariableCountMismatch {
            left: g.nvars(),
            right: f.nvars(),
        });
    }
    let nvars = f.nvars();
    let slot = check_var(var, nvars)?;
    let trunc = g.trunc().min(f.trunc());
    let f = f.truncate(trunc);
    let g = g.truncate(trunc);
    let d = match f.order_in_variable(var)? {
        Order::Finite(d) => d,
        Order::Flat => return Err(Error::Flat { var, trunc }),
    };
    let guaranteed = g
        .guaranteed_degree()
        .min(f.guaranteed_degree())
        .saturating_sub(d);
    let du = d as usize;

    let f_layers = layered(&f, slot);
    let origin = Expo::zero(nvars - 1);
    let base = f_layers
        .get(&origin)
        .expect("finite order implies a pure x_k layer");
    let unit: Univariate = base[du..].to_vec();

    let mut min_k = vec![None; trunc as usize + 1];
    let mut perturbation: Vec<(Expo, u32, &Univariate)> = Vec::new();
    for (mu, v) in &f_layers {
        let j = mu.total_degree();
        if j == 0 {
            continue;
        }
        let m = v.iter().position(|c| !c.is_zero()).unwrap_or(0) as u32;
        let slot_min: &mut Option<u32> = &mut min_k[j as usize];
        *slot_min = Some(slot_min.map_or(m, |old| old.min(m)));
        perturbation.push((mu.clone(), j, v));
    }
    perturbation.sort_by_key(|(_, j, _)| *j);
    let depth = quotient_depths(trunc, d, &min_k);
    let unit_inv = invert_univariate(&unit, depth[0] as usize + 1);
    // length of the working series h^(s)
    let h_len = |s: u32| (depth[s as usize] + d) as usize + 1;

    let mut pending: BTreeMap<Expo, Univariate> = layered(&g, slot)
        .into_iter()
        .map(|(mu, mut v)| {
            v.truncate(h_len(mu.total_degree()));
            (mu, v)
        })
        .collect();
    let mut quotient: BTreeMap<Expo, Coeff> = BTreeMap::new();
    let mut remainder: BTreeMap<Expo, Coeff> = BTreeMap::new();

    while let Some((mu, h)) = pending.pop_first() {
        let s = mu.total_degree();
        for (k, c) in h.iter().enumerate().take(du) {
            if !c.is_zero() && s + k as u32 <= trunc {
                remainder.insert(mu.insert(slot, k as u32), c.clone());
            }
        }
        if h.len() <= du {
            continue;
        }
        let q_len = depth[s as usize] as usize + 1;
        let q_mu = trim(mul_univariate(&h[du..], &unit_inv, q_len));
        if q_mu.is_empty() {
            continue;
        }
        for (k, c) in q_mu.iter().enumerate() {
            if !c.is_zero() && s + k as u32 <= trunc {
                quotient.insert(mu.insert(slot, k as u32), c.clone());
            }
        }
        for (lambda, j, f_lambda) in &perturbation {
            if s + j > trunc {
                break;
            }
            let target = mu.add(lambda);
            let len = h_len(s + j);
            let prod = mul_univariate(&q_mu, f_lambda, len);
            let entry = pending.entry(target).or_default();
            if entry.len() < prod.len() {
                entry.resize(prod.len(), Coeff::zero());
            }
            for (slot_e, p) in entry.iter_mut().zip(prod) {
                *slot_e -= p;
            }
        }
    }

    Ok(DivisionResult {
        quotient: Series::from_map(nvars, trunc, guaranteed, quotient),
        remainder: Series::from_map(nvars, trunc, guaranteed, remainder),
        order: d,
        var,
        guaranteed_degree: guaranteed,
    })
}

/// Weierstrass preparation `f = U * P`, obtained by dividing `x_k^d` by `f`:
/// from `x_k^d = q f + r` one gets `U = 1/q` and `P = x_k^d - r`.
pub fn weierstrass_prepare(f: &Series, var: usize) -> Result<PreparationResult> {
    let nvars = f.nvars();
    let slot = check_var(var, nvars)?;
    let d = match f.order_in_variable(var)? {
        Order::Finite(d) => d,
        Order::Flat => {
            return Err(Error::Flat {
                var,
                trunc: f.trunc(),
            })
        }
    };
    let monomial = Series::from_terms(
        nvars,
        f.trunc(),
        [(Expo::zero(nvars).with(slot, d), Coeff::one())],
    )?
    .with_guaranteed_degree(f.guaranteed_degree());
    let div = weierstrass_divide(&monomial, f, var)?;
    let unit = div
        .quotient
        .invert_unit()
        .map_err(|_| Error::InvariantBreach("preparation quotient is not a unit".into()))?
        .with_guaranteed_degree(div.guaranteed_degree);

    let trunc = div.remainder.trunc();
    let mut by_power = div.remainder.layers(slot);
    let coeffs: Vec<Series> = (1..=d)
        .map(|i| {
            let terms = by_power.remove(&(d - i)).unwrap_or_default();
            Series::from_map(nvars - 1, trunc, div.guaranteed_degree, terms).neg()
        })
        .collect();
    let poly = DistinguishedPoly {
        var,
        nvars,
        trunc,
        coeffs,
    };
    if !poly.is_distinguished() {
        return Err(Error::InvariantBreach(
            "prepared polynomial has a coefficient with nonzero constant term".into(),
        ));
    }
    Ok(PreparationResult {
        unit,
        poly,
        guaranteed_degree: div.guaranteed_degree,
    })
}
