//! Recursive-descent parser for series expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | 'x' nat | '(' expr ')' | 'inv(' expr ')'
//! rational := '-'? nat ('/' nat)?
//! ```
//!
//! Whitespace between tokens is ignored.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::series::{format_coeff, Coeff};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Rational(Coeff),
    /// 1-based variable index.
    Variable(usize),
    Sum(Vec<ExprAst>),
    Difference(Box<ExprAst>, Box<ExprAst>),
    Product(Vec<ExprAst>),
    Power(Box<ExprAst>, u32),
    UnitInverse(Box<ExprAst>),
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprAst::Rational(c) => write!(f, "{}", format_coeff(c)),
            ExprAst::Variable(i) => write!(f, "x{i}"),
            ExprAst::Sum(items) => {
                let parts: Vec<String> = items.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            ExprAst::Difference(a, b) => write!(f, "({a} - {b})"),
            ExprAst::Product(items) => {
                let parts: Vec<String> = items.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join("*"))
            }
            ExprAst::Power(b, e) => write!(f, "{b}^{e}"),
            ExprAst::UnitInverse(e) => write!(f, "inv({e})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable x{index} at position {position} is out of range 1..={nvars}")]
    VariableOutOfRange {
        position: usize,
        index: usize,
        nvars: usize,
    },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

/// Parses `input` as an expression in `x1 ... x{nvars}`.
pub fn parse_expr(input: &str, nvars: usize) -> Result<ExprAst, ParseError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        nvars,
    };
    let ast = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(ast)
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut acc = self.term()?;
        let mut open_sum = false;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = match acc {
                    ExprAst::Sum(mut items) if open_sum => {
                        items.push(rhs);
                        ExprAst::Sum(items)
                    }
                    other => ExprAst::Sum(vec![other, rhs]),
                };
                open_sum = true;
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = ExprAst::Difference(Box::new(acc), Box::new(rhs));
                open_sum = false;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let first = self.factor()?;
        let mut items = vec![first];
        while self.eat(b'*') {
            items.push(self.factor()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            ExprAst::Product(items)
        })
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let n = self.nat()?;
            let e = u32::try_from(n).map_err(|_| ParseError::Syntax {
                position: start,
                message: "exponent too large".into(),
            })?;
            return Ok(ExprAst::Power(Box::new(base), e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.error("expected variable index after 'x'"));
                }
                let index = usize::try_from(self.nat()?).unwrap_or(usize::MAX);
                if index == 0 || index > self.nvars {
                    return Err(ParseError::VariableOutOfRange {
                        position: start,
                        index,
                        nvars: self.nvars,
                    });
                }
                Ok(ExprAst::Variable(index))
            }
            Some(b'i') => {
                if !self.src[self.pos..].starts_with(b"inv") {
                    return Err(self.error("expected 'inv('"));
                }
                self.pos += 3;
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(ExprAst::UnitInverse(Box::new(inner)))
            }
            Some(c) if c == b'-' || c.is_ascii_digit() => self.rational(),
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn rational(&mut self) -> Result<ExprAst, ParseError> {
        let negative = self.eat(b'-');
        self.skip_ws();
        let num = self.nat()?;
        let den = if self.eat(b'/') {
            self.skip_ws();
            let start = self.pos;
            let den = self.nat()?;
            if den.is_zero() {
                return Err(ParseError::Syntax {
                    position: start,
                    message: "zero denominator".into(),
                });
            }
            den
        } else {
            BigInt::from(1)
        };
        let num = if negative { -num } else { num };
        Ok(ExprAst::Rational(Coeff::new(num, den)))
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    fn var(i: usize) -> ExprAst {
        ExprAst::Variable(i)
    }

    fn rat(n: i64, d: i64) -> ExprAst {
        ExprAst::Rational(ratio(n, d))
    }

    #[test]
    fn canonical_text_example() {
        let ast = parse_expr("x1^2 + -3/2*x1*x2", 2).unwrap();
        assert_eq!(
            ast,
            ExprAst::Sum(vec![
                ExprAst::Power(Box::new(var(1)), 2),
                ExprAst::Product(vec![rat(-3, 2), var(1), var(2)]),
            ])
        );
    }

    #[test]
    fn inverse_example() {
        let ast = parse_expr("inv(1 - x1)", 1).unwrap();
        assert_eq!(
            ast,
            ExprAst::UnitInverse(Box::new(ExprAst::Difference(
                Box::new(rat(1, 1)),
                Box::new(var(1))
            )))
        );
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(
            parse_expr("x1^2+-3/2*x1*x2", 2).unwrap(),
            parse_expr("  x1 ^ 2 +  - 3 / 2 * x1 * x2 ", 2).unwrap()
        );
    }

    #[test]
    fn sums_and_differences_fold_left() {
        let ast = parse_expr("1 + x1 - x2 + 2", 2).unwrap();
        assert_eq!(ast.to_string(), "(((1 + x1) - x2) + 2)");
    }

    #[test]
    fn variable_out_of_range() {
        assert_eq!(
            parse_expr("x3", 2).unwrap_err(),
            ParseError::VariableOutOfRange {
                position: 0,
                index: 3,
                nvars: 2
            }
        );
        assert!(matches!(
            parse_expr("x0", 2),
            Err(ParseError::VariableOutOfRange { index: 0, .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_expr("x1 + ", 1).unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                position: 5,
                message: "unexpected end of input".into()
            }
        );
        assert!(matches!(parse_expr("x1 x2", 2), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_expr("1/0", 1), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("-x1", 1), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("(x1", 1), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("x1^-1", 1), Err(ParseError::Syntax { .. })));
    }
}
