use serde::{Deserialize, Serialize};

use crate::cli::parse::ExprAst;
use crate::error::Result;
use crate::series::{Coeff, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub nvars: usize,
    pub trunc: u32,
    /// Distinguished variable, 1-based.
    pub var: usize,
    pub mode: OutputMode,
}

/// Evaluates an expression to a series truncated at `config.trunc`.
pub fn eval_expr(ast: &ExprAst, config: &RunConfig) -> Result<Series> {
    let n = config.nvars;
    let trunc = config.trunc;
    Ok(match ast {
        ExprAst::Rational(c) => Series::constant(n, trunc, c.clone()),
        ExprAst::Variable(i) => Series::variable(n, trunc, *i)?,
        ExprAst::Sum(items) => {
            let mut acc = Series::zero(n, trunc);
            for item in items {
                acc = acc.try_add(&eval_expr(item, config)?)?;
            }
            acc
        }
        ExprAst::Difference(a, b) => eval_expr(a, config)?.try_sub(&eval_expr(b, config)?)?,
        ExprAst::Product(items) => {
            let mut acc = Series::constant(n, trunc, Coeff::from_integer(1.into()));
            for item in items {
                acc = acc.try_mul(&eval_expr(item, config)?)?;
            }
            acc
        }
        ExprAst::Power(base, e) => eval_expr(base, config)?.pow(*e),
        ExprAst::UnitInverse(inner) => eval_expr(inner, config)?.invert_unit()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse::parse_expr;
    use crate::error::Error;

    fn cfg(nvars: usize, trunc: u32) -> RunConfig {
        RunConfig {
            nvars,
            trunc,
            var: nvars,
            mode: OutputMode::Text,
        }
    }

    fn eval(src: &str, nvars: usize, trunc: u32) -> Result<Series> {
        eval_expr(&parse_expr(src, nvars).unwrap(), &cfg(nvars, trunc))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval("(1+x1)*(1-x1)", 1, 3).unwrap().to_string(), "1 + -1*x1^2");
        assert_eq!(
            eval("inv(1-x1)", 1, 3).unwrap().to_string(),
            "1 + x1 + x1^2 + x1^3"
        );
        assert_eq!(eval("inv(x1)", 1, 3).unwrap_err(), Error::NonUnit);
    }

    #[test]
    fn powers_respect_truncation() {
        assert_eq!(eval("(x1+x2)^3", 2, 2).unwrap().to_string(), "0");
        assert_eq!(eval("x1^0", 1, 2).unwrap().to_string(), "1");
        assert_eq!(eval("2^3 - 1/2", 1, 2).unwrap().to_string(), "15/2");
    }
}
