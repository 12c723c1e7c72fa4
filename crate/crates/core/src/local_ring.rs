//! Closure operations of the local ring on formal series: implicit
//! equation, division by a coordinate, and the even/odd machinery.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{check_var, Series};

/// Solves `f(x', phi(x')) = 0` for `phi` with `phi(0) = 0`.
///
/// Requires `f(0) = 0` and a nonzero coefficient of `x_var` in `f`. The
/// result lives in the other variables with indices compacted: `x_var`
/// is removed and the variables after it shift down by one.
///
/// Each pass fixes the next homogeneous degree of `phi`: if `phi` is
/// correct through degree `m`, then `f(x', phi)` vanishes through `m` and
/// its degree `m + 1` part equals `c * (correction)` where `c` is the
/// coefficient of `x_var`.
pub fn implicit_solve(f: &Series, var: usize) -> Result<Series> {
    let slot = check_var(var, f.nvars())?;
    if !f.constant_term().is_zero() {
        return Err(Error::ImplicitConstantTerm);
    }
    let mut unit = vec![0u32; f.nvars()];
    unit[slot] = 1;
    let c = f.coeff(&unit);
    if c.is_zero() {
        return Err(Error::ImplicitVanishingDerivative { var });
    }
    let inv = c.recip();
    let trunc = f.trunc();
    let mut phi = Series::zero(f.nvars() - 1, trunc);
    for m in 0..trunc {
        let residual = f.truncate(m + 1).substitute(var, &phi.truncate(m + 1))?;
        let top = residual.homogeneous_part(m + 1);
        if top.is_zero() {
            continue;
        }
        let step = Series::from_map(
            phi.nvars(),
            trunc,
            trunc,
            top.terms().map(|(e, a)| (e.clone(), -(a * &inv))).collect(),
        );
        phi = &phi + &step;
    }
    Ok(phi.certify(f.guaranteed_degree()))
}

/// `g` with `f = x_var * g`; every term of `f` must contain `x_var`.
pub fn monomial_divide(f: &Series, var: usize) -> Result<Series> {
    let slot = check_var(var, f.nvars())?;
    let mut terms = BTreeMap::new();
    for (e, c) in f.terms() {
        let k = e.get(slot);
        if k == 0 {
            return Err(Error::NotDivisible { var });
        }
        terms.insert(e.with(slot, k - 1), c.clone());
    }
    Ok(Series::from_map(
        f.nvars(),
        f.trunc().saturating_sub(1),
        f.guaranteed_degree().saturating_sub(1),
        terms,
    ))
}

/// `(g0, g1)` with `g0` the terms of even and `g1` the terms of odd degree
/// in `x_var`; formally `g0 = (f(x) + f(x', -x_var)) / 2` and
/// `g1 = (f(x) - f(x', -x_var)) / 2`.
pub fn even_odd_split(f: &Series, var: usize) -> Result<(Series, Series)> {
    let slot = check_var(var, f.nvars())?;
    let (even, odd): (BTreeMap<_, _>, BTreeMap<_, _>) = f
        .terms()
        .map(|(e, c)| (e.clone(), c.clone()))
        .partition(|(e, _)| e.get(slot) % 2 == 0);
    let wrap = |t| Series::from_map(f.nvars(), f.trunc(), f.guaranteed_degree(), t);
    Ok((wrap(even), wrap(odd)))
}

/// Inverse of [`Series::substitute_square`] on series even in `x_var`.
pub fn halve_exponents(g: &Series, var: usize) -> Result<Series> {
    let slot = check_var(var, g.nvars())?;
    let mut terms = BTreeMap::new();
    for (e, c) in g.terms() {
        let k = e.get(slot);
        if k % 2 == 1 {
            return Err(Error::NotEven { var });
        }
        terms.insert(e.with(slot, k / 2), c.clone());
    }
    Ok(Series::from_map(
        g.nvars(),
        g.trunc(),
        g.guaranteed_degree(),
        terms,
    ))
}
