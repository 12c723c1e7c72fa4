//! Complex extension of a one-variable series and Cauchy-Riemann checks.
//!
//! For `h` normalized so that `h = x^2 + x^3 + O(x^4)`, the series
//! `f(x1, x2) = h(x1 + x2)` is split as `f0(x1, x2^2) + x2 f1(x1, x2^2)` and
//! the candidate extension is
//!
//! ```text
//! H(x1 + i x2) = f0(x1, -x2^2) + i x2 f1(x1, -x2^2)
//! ```
//!
//! which should coincide with the direct expansion of `sum h_n (x1 + i x2)^n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expo::Expo;
use crate::pipelines::lemma::{lemma_split_traced, LemmaResult, LemmaTrace};
use crate::series::{Coeff, Series};

/// Real and imaginary parts of a series in `x1 + i x2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoloPair {
    pub u: Series,
    pub v: Series,
    pub guaranteed_degree: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrResiduals {
    /// `du/dx1 - dv/dx2`.
    pub first: Series,
    /// `du/dx2 + dv/dx1`.
    pub second: Series,
    /// Residuals must vanish through this degree.
    pub degree: u32,
    pub passes: bool,
}

fn require_univariate(h: &Series) -> Result<()> {
    if h.nvars() != 1 {
        return Err(Error::VariableCountMismatch {
            left: 1,
            right: h.nvars(),
        });
    }
    Ok(())
}

/// Returns `(h + q, q)` with `q` of degree at most 3 chosen so that the
/// first four coefficients of `h + q` are `0, 0, 1, 1`.
pub fn normalize_h(h: &Series) -> Result<(Series, Series)> {
    require_univariate(h)?;
    let target = [Coeff::zero(), Coeff::zero(), Coeff::one(), Coeff::one()];
    let correction = Series::from_terms(
        1,
        h.trunc(),
        target
            .iter()
            .enumerate()
            .map(|(i, want)| (vec![i as u32], want - h.coeff(&[i as u32]))),
    )?;
    Ok((h + &correction, correction))
}

/// `s(x', -x_var^2)`: squares the exponent and flips the sign of odd powers.
fn substitute_negative_square(s: &Series, var: usize) -> Result<Series> {
    let slot = var - 1;
    let squared = s.substitute_square(var)?;
    let terms = squared
        .terms()
        .map(|(e, c)| {
            if (e.get(slot) / 2) % 2 == 1 {
                (e.clone(), -c)
            } else {
                (e.clone(), c.clone())
            }
        })
        .collect();
    Ok(Series::from_map(
        s.nvars(),
        squared.trunc(),
        squared.guaranteed_degree(),
        terms,
    ))
}

pub fn holomorphic_extension(h: &Series) -> Result<HoloPair> {
    holomorphic_extension_traced(h).map(|(pair, _, _)| pair)
}

/// Builds `f = h(x1 + x2)`, splits it in `x2` and assembles `(u, v)`;
/// also returns the split and its preparations.
pub fn holomorphic_extension_traced(h: &Series) -> Result<(HoloPair, LemmaResult, LemmaTrace)> {
    require_univariate(h)?;
    let trunc = h.trunc();
    let sum = &Series::variable(2, trunc, 1)? + &Series::variable(2, trunc, 2)?;
    let f = h.compose(&[sum])?;
    let (lemma, trace) = lemma_split_traced(&f, 2)?;
    let u = substitute_negative_square(&lemma.f0, 2)?;
    let v = substitute_negative_square(&lemma.f1, 2)?.multiply_by_variable(2)?;
    let guaranteed = lemma.guaranteed_degree;
    Ok((
        HoloPair {
            u: u.with_guaranteed_degree(guaranteed),
            v: v.truncate(trunc).with_guaranteed_degree(guaranteed),
            guaranteed_degree: guaranteed,
        },
        lemma,
        trace,
    ))
}

/// Expands `sum h_n (x1 + i x2)^n` with the binomial theorem.
pub fn direct_complexification(h: &Series) -> Result<HoloPair> {
    require_univariate(h)?;
    let trunc = h.trunc();
    let mut real = Vec::new();
    let mut imag = Vec::new();
    for (e, c) in h.terms() {
        let n = e.get(0);
        let mut binom = BigInt::one();
        for j in 0..=n {
            // term C(n, j) x1^(n-j) (i x2)^j
            let expo = Expo::new(vec![n - j, j]);
            let value = c * &binom;
            match j % 4 {
                0 => real.push((expo, value)),
                1 => imag.push((expo, value)),
                2 => real.push((expo, -value)),
                _ => imag.push((expo, -value)),
            }
            binom = binom * BigInt::from(n - j) / BigInt::from(j + 1);
        }
    }
    let g = h.guaranteed_degree();
    Ok(HoloPair {
        u: Series::from_terms(2, trunc, real)?.with_guaranteed_degree(g),
        v: Series::from_terms(2, trunc, imag)?.with_guaranteed_degree(g),
        guaranteed_degree: g,
    })
}

/// Residuals of `du/dx1 = dv/dx2` and `du/dx2 = -dv/dx1`; the pair passes
/// when both vanish through `guaranteed_degree - 1`.
pub fn cauchy_riemann_check(pair: &HoloPair) -> Result<CrResiduals> {
    for s in [&pair.u, &pair.v] {
        if s.nvars() != 2 {
            return Err(Error::VariableCountMismatch {
                left: 2,
                right: s.nvars(),
            });
        }
    }
    let first = &pair.u.partial_derivative(1)? - &pair.v.partial_derivative(2)?;
    let second = &pair.u.partial_derivative(2)? + &pair.v.partial_derivative(1)?;
    let degree = pair.guaranteed_degree.saturating_sub(1);
    let passes = first.vanishes_through(degree) && second.vanishes_through(degree);
    Ok(CrResiduals {
        first,
        second,
        degree,
        passes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    fn uni(trunc: u32, coeffs: &[(u32, i64)]) -> Series {
        Series::from_terms(1, trunc, coeffs.iter().map(|&(k, c)| (vec![k], ratio(c, 1)))).unwrap()
    }

    fn bi(trunc: u32, terms: &[(&[u32], i64)]) -> Series {
        Series::from_terms(2, trunc, terms.iter().map(|(e, c)| (e.to_vec(), ratio(*c, 1)))).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let h = uni(8, &[(2, 1), (3, 1)]);
        let (ht, q) = normalize_h(&h).unwrap();
        assert!(ht.identical(&h));
        assert!(q.is_zero());

        let h = uni(8, &[(0, 5), (1, 2), (2, 3)]);
        let (ht, q) = normalize_h(&h).unwrap();
        assert_eq!(ht.to_string(), "x1^2 + x1^3");
        assert_eq!(q.to_string(), "-5 + -2*x1 + -2*x1^2 + x1^3");

        let h = uni(8, &[(2, 1), (3, 1), (4, 1)]);
        let (ht, q) = normalize_h(&h).unwrap();
        assert!(ht.identical(&h));
        assert!(q.is_zero());
    }

    #[test]
    fn extension_of_square_plus_cube() {
        let h = uni(12, &[(2, 1), (3, 1)]);
        let pair = holomorphic_extension(&h).unwrap();
        let u = bi(12, &[(&[2, 0], 1), (&[0, 2], -1), (&[3, 0], 1), (&[1, 2], -3)]);
        let v = bi(12, &[(&[1, 1], 2), (&[2, 1], 3), (&[0, 3], -1)]);
        assert!(pair.u.identical(&u.certify(8)));
        assert!(pair.v.identical(&v.certify(8)));
        assert_eq!(pair.u.restrict_to_zero(2).unwrap(), h);
        assert!(cauchy_riemann_check(&pair).unwrap().passes);
    }

    #[test]
    fn extension_requires_normalized_input() {
        let h = uni(12, &[(2, 2), (3, 1)]);
        assert!(matches!(
            holomorphic_extension(&h),
            Err(Error::LemmaHypothesis(_))
        ));
        assert!(holomorphic_extension(&bi(12, &[])).is_err());
    }

    #[test]
    fn direct_examples() {
        let pair = direct_complexification(&uni(6, &[(2, 1)])).unwrap();
        assert_eq!(pair.u.to_string(), "x1^2 + -1*x2^2");
        assert_eq!(pair.v.to_string(), "2*x1*x2");

        let pair = direct_complexification(&uni(6, &[(0, 7)])).unwrap();
        assert_eq!(pair.u.to_string(), "7");
        assert!(pair.v.is_zero());

        let pair = direct_complexification(&uni(6, &[(3, 1)])).unwrap();
        assert_eq!(pair.u.to_string(), "x1^3 + -3*x1*x2^2");
        assert_eq!(pair.v.to_string(), "3*x1^2*x2 + -1*x2^3");
    }

    #[test]
    fn cr_examples() {
        let pair = HoloPair {
            u: bi(6, &[(&[2, 0], 1), (&[0, 2], -1)]),
            v: bi(6, &[(&[1, 1], 2)]),
            guaranteed_degree: 6,
        };
        let cr = cauchy_riemann_check(&pair).unwrap();
        assert!(cr.passes && cr.first.is_zero() && cr.second.is_zero());

        let conj = HoloPair {
            u: bi(6, &[(&[1, 0], 1)]),
            v: bi(6, &[(&[0, 1], -1)]),
            guaranteed_degree: 6,
        };
        let cr = cauchy_riemann_check(&conj).unwrap();
        assert!(!cr.passes);
        assert_eq!(cr.first.to_string(), "2");
    }
}
