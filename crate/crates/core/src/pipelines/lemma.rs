//! Even/odd decomposition `f = f0(x', x_k^2) + x_k f1(x', x_k^2)` computed
//! through preparation and implicit solving.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_ring::{even_odd_split, implicit_solve, monomial_divide};
use crate::series::{check_var, Series};
use crate::weierstrass::{weierstrass_prepare, PreparationResult};

/// `f0` and `f1` share the variable layout of the input; slot `k` stands
/// for `t = x_k^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaResult {
    pub f0: Series,
    pub f1: Series,
    pub guaranteed_degree: u32,
}

impl LemmaResult {
    /// `f0(x', x_k^2) + x_k f1(x', x_k^2)`.
    pub fn reconstruct(&self, var: usize) -> Result<Series> {
        let even = self.f0.substitute_square(var)?;
        let odd = self.f1.substitute_square(var)?.multiply_by_variable(var)?;
        Ok(&even + &odd)
    }
}

/// One preparation of `F = g - t` run by the pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreparedStep {
    /// `F` in the variables of `g` followed by `t`.
    pub series: Series,
    pub preparation: PreparationResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaTrace {
    /// Preparation of `g0 - t`, where `g0` is the even part of `f`.
    pub even: PreparedStep,
    /// Preparation of `g1/x_k - t`, where `g1` is the odd part of `f`.
    pub odd: PreparedStep,
}

/// Checks `f(0, x_k) = x_k^2 + x_k^3 + O(x_k^4)`.
fn check_hypothesis(f: &Series, var: usize) -> Result<()> {
    if f.trunc() < 4 {
        return Err(Error::TruncationTooSmall {
            trunc: f.trunc(),
            needed: 4,
        });
    }
    let axis = f.restriction_to_axis(var)?;
    let expect = [(0, false), (1, false), (2, true), (3, true)];
    for (deg, one) in expect {
        let c = &axis[deg];
        let ok = if one { c.is_one() } else { c.is_zero() };
        if !ok {
            return Err(Error::LemmaHypothesis(format!(
                "coefficient of x{var}^{deg} on the axis is {c}, expected {}",
                if one { 1 } else { 0 }
            )));
        }
    }
    Ok(())
}

/// Given `g` even in `x_var` of order exactly 2 with unit leading
/// coefficient, returns `h` with `g(x) = h(x', x_var^2)`:
/// prepare `g - t` in `x_var` to get `x_var^2 + phi1 x_var + phi0(x', t)`,
/// confirm `phi1 = 0`, then solve `z + phi0(x', t) = 0` for `t = h(x', z)`.
fn even_part_via_preparation(g: &Series, var: usize) -> Result<(Series, PreparedStep)> {
    let n = g.nvars();
    let trunc = g.trunc();
    let t_var = n + 1;
    let t = Series::variable(n + 1, trunc, t_var)?;
    let big_f = &g.insert_variable(t_var)? - &t;
    let prep = weierstrass_prepare(&big_f, var)?;
    if prep.poly.degree() != 2 {
        return Err(Error::InvariantBreach(format!(
            "expected order 2 in x{var}, prepared polynomial has degree {}",
            prep.poly.degree()
        )));
    }
    let phi1 = &prep.poly.coeffs[0];
    if !phi1.vanishes_through(prep.guaranteed_degree) {
        return Err(Error::InvariantBreach(format!(
            "linear coefficient of the prepared polynomial is nonzero: {phi1}"
        )));
    }
    let phi0 = &prep.poly.coeffs[1];
    // (x', t) -> (x1.., z at slot var, .., t)
    let z = Series::variable(n + 1, phi0.trunc(), var)?;
    let equation = &z + &phi0.insert_variable(var)?;
    let h = implicit_solve(&equation, t_var)?;
    Ok((
        h,
        PreparedStep {
            series: big_f,
            preparation: prep,
        },
    ))
}

pub fn lemma_split(f: &Series, var: usize) -> Result<LemmaResult> {
    lemma_split_traced(f, var).map(|(r, _)| r)
}

/// The decomposition together with the two preparations it ran.
pub fn lemma_split_traced(f: &Series, var: usize) -> Result<(LemmaResult, LemmaTrace)> {
    check_var(var, f.nvars())?;
    check_hypothesis(f, var)?;
    let (g0, g1) = even_odd_split(f, var)?;
    let (f0, even) = even_part_via_preparation(&g0, var)?;
    let g1_bar = monomial_divide(&g1, var)?;
    let (f1, odd) = even_part_via_preparation(&g1_bar, var)?;
    let guaranteed = f.guaranteed_degree().saturating_sub(4);
    Ok((
        LemmaResult {
            f0,
            f1,
            guaranteed_degree: guaranteed,
        },
        LemmaTrace { even, odd },
    ))
}
