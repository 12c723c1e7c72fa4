//! Command-line front end.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 mathematical
//! precondition violated (flat order, non-unit, ...), 4 internal invariant
//! breached.

pub mod eval;
pub mod parse;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::local_ring::{even_odd_split, implicit_solve};
use crate::pipelines::{
    cauchy_riemann_check, direct_complexification, holomorphic_extension, lemma_split,
    normalize_h, semigroup_check, CrResiduals, HoloPair,
};
use crate::series::Series;
use crate::weierstrass::{weierstrass_divide, weierstrass_prepare};

pub use eval::{eval_expr, OutputMode, RunConfig};
pub use parse::{parse_expr, ExprAst, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "wprep", version, about = "Exact Weierstrass preparation on truncated power series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Number of variables
    #[arg(long = "vars")]
    vars: Option<usize>,
    /// Truncation degree N
    #[arg(long = "trunc", default_value_t = 12)]
    trunc: u32,
    /// Distinguished variable k (defaults to the last one)
    #[arg(long = "var")]
    var: Option<usize>,
    /// Emit one JSON document instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weierstrass preparation f = U * P
    Prepare {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'e', allow_hyphen_values = true)]
        expr: String,
    },
    /// Weierstrass division g = q * f + r
    Divide {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'g', allow_hyphen_values = true)]
        dividend: String,
        #[arg(short = 'f', allow_hyphen_values = true)]
        divisor: String,
    },
    /// Solve f(x', phi(x')) = 0 for the distinguished variable
    Implicit {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'e', allow_hyphen_values = true)]
        expr: String,
    },
    /// Even and odd parts in the distinguished variable
    Split {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'e', allow_hyphen_values = true)]
        expr: String,
    },
    /// f = f0(x', x_k^2) + x_k f1(x', x_k^2) through preparation
    Lemma {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'e', allow_hyphen_values = true)]
        expr: String,
    },
    /// Complex extension of a one-variable series with a Cauchy-Riemann check
    Holo {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'e', allow_hyphen_values = true, conflicts_with = "coeffs", required_unless_present = "coeffs")]
        expr: Option<String>,
        /// Coefficients h0,h1,h2,...
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
    },
    /// Cauchy-Riemann residuals of (u, v) = (-f, -g), or of the direct
    /// complexification of a one-variable series given by -e or --coeffs
    CrCheck {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'f', allow_hyphen_values = true, requires = "imag")]
        real: Option<String>,
        #[arg(short = 'g', allow_hyphen_values = true, requires = "real")]
        imag: Option<String>,
        #[arg(short = 'e', allow_hyphen_values = true, conflicts_with_all = ["real", "coeffs"])]
        expr: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "real")]
        coeffs: Option<String>,
    },
    /// Prepare F and test the support of P against the semigroup of supp(F)
    Semigroup {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'e', allow_hyphen_values = true)]
        expr: String,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Report { text, json, code }) => Outcome {
            code,
            stdout: match json {
                Some(doc) => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
                None => text,
            },
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Math(e)) => Outcome {
            code: if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_PRECONDITION
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

struct Report {
    text: String,
    json: Option<serde_json::Value>,
    code: i32,
}

impl Common {
    fn config(&self, nvars: usize) -> Result<RunConfig, Failure> {
        if nvars == 0 {
            return Err(Failure::Usage("--vars must be at least 1".into()));
        }
        let var = self.var.unwrap_or(nvars);
        if var == 0 || var > nvars {
            return Err(Failure::Usage(format!(
                "--var {var} out of range 1..={nvars}"
            )));
        }
        Ok(RunConfig {
            nvars,
            trunc: self.trunc,
            var,
            mode: if self.json {
                OutputMode::Json
            } else {
                OutputMode::Text
            },
        })
    }

    fn required_config(&self) -> Result<RunConfig, Failure> {
        let n = self
            .vars
            .ok_or_else(|| Failure::Usage("--vars is required".into()))?;
        self.config(n)
    }

    fn fixed_config(&self, nvars: usize) -> Result<RunConfig, Failure> {
        if let Some(n) = self.vars {
            if n != nvars {
                return Err(Failure::Usage(format!(
                    "this command works in {nvars} variable(s), got --vars {n}"
                )));
            }
        }
        self.config(nvars)
    }
}

fn require_pipeline_trunc(config: &RunConfig) -> Result<(), Failure> {
    if config.trunc < 4 {
        return Err(Failure::Usage(format!(
            "--trunc must be at least 4 for this command, got {}",
            config.trunc
        )));
    }
    Ok(())
}

fn series(src: &str, config: &RunConfig) -> Result<Series, Failure> {
    let ast = parse_expr(src, config.nvars)?;
    Ok(eval_expr(&ast, config)?)
}

fn coeff_series(list: &str, config: &RunConfig) -> Result<Series, Failure> {
    let mut terms = Vec::new();
    for (i, item) in list.split(',').enumerate() {
        let ast = parse_expr(item, 1)?;
        match ast {
            ExprAst::Rational(c) => terms.push((vec![i as u32], c)),
            _ => {
                return Err(Failure::Usage(format!(
                    "--coeffs entry {} is not a rational: {item:?}",
                    i + 1
                )))
            }
        }
    }
    Ok(Series::from_terms(1, config.trunc, terms)?)
}

/// Collects `name = value` lines and the matching JSON fields.
struct Builder {
    command: &'static str,
    config: RunConfig,
    text: String,
    fields: serde_json::Map<String, serde_json::Value>,
}

impl Builder {
    fn new(command: &'static str, config: &RunConfig) -> Self {
        Builder {
            command,
            config: config.clone(),
            text: String::new(),
            fields: serde_json::Map::new(),
        }
    }

    fn series(&mut self, name: &str, s: &Series) -> &mut Self {
        let _ = writeln!(self.text, "{name} = {s}");
        self.fields.insert(
            name.to_string(),
            json!({ "canonical": s.to_string(), "series": s.export() }),
        );
        self
    }

    fn value<T: Serialize + std::fmt::Display>(&mut self, name: &str, v: T) -> &mut Self {
        let _ = writeln!(self.text, "{name} = {v}");
        self.fields
            .insert(name.to_string(), serde_json::to_value(&v).expect("serializable"));
        self
    }

    fn line(&mut self, line: &str) -> &mut Self {
        let _ = writeln!(self.text, "{line}");
        self
    }

    fn json(&mut self, name: &str, v: serde_json::Value) -> &mut Self {
        self.fields.insert(name.to_string(), v);
        self
    }

    fn finish(&mut self, code: i32) -> Report {
        let json = (self.config.mode == OutputMode::Json).then(|| {
            json!({
                "command": self.command,
                "config": self.config,
                "exit_code": code,
                "result": serde_json::Value::Object(std::mem::take(&mut self.fields)),
            })
        });
        Report {
            text: std::mem::take(&mut self.text),
            json,
            code,
        }
    }
}

fn cr_lines(out: &mut Builder, cr: &CrResiduals) {
    out.series("cr_first", &cr.first)
        .series("cr_second", &cr.second)
        .value("cr_degree", cr.degree)
        .json("cr_pass", json!(cr.passes))
        .line(if cr.passes { "CR: PASS" } else { "CR: FAIL" });
}

fn pair_lines(out: &mut Builder, pair: &HoloPair) {
    out.series("u", &pair.u)
        .series("v", &pair.v)
        .value("guaranteed_degree", pair.guaranteed_degree);
}

fn dispatch(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Prepare { common, expr } => {
            let cfg = common.required_config()?;
            let f = series(&expr, &cfg)?;
            let prep = weierstrass_prepare(&f, cfg.var)?;
            let mut out = Builder::new("prepare", &cfg);
            out.value("d", prep.poly.degree())
                .value("k", cfg.var)
                .series("U", &prep.unit)
                .series("P", &prep.poly.expand()?);
            for (i, a) in prep.poly.coeffs.iter().enumerate() {
                out.series(&format!("a{}", i + 1), a);
            }
            out.value("guaranteed_degree", prep.guaranteed_degree);
            Ok(out.finish(EXIT_OK))
        }
        Command::Divide {
            common,
            dividend,
            divisor,
        } => {
            let cfg = common.required_config()?;
            let g = series(&dividend, &cfg)?;
            let f = series(&divisor, &cfg)?;
            let div = weierstrass_divide(&g, &f, cfg.var)?;
            let mut out = Builder::new("divide", &cfg);
            out.value("d", div.order)
                .value("k", cfg.var)
                .series("q", &div.quotient)
                .series("r", &div.remainder)
                .value("guaranteed_degree", div.guaranteed_degree);
            Ok(out.finish(EXIT_OK))
        }
        Command::Implicit { common, expr } => {
            let cfg = common.required_config()?;
            let f = series(&expr, &cfg)?;
            let phi = implicit_solve(&f, cfg.var)?;
            let mut out = Builder::new("implicit", &cfg);
            out.series("phi", &phi)
                .value("guaranteed_degree", phi.guaranteed_degree());
            Ok(out.finish(EXIT_OK))
        }
        Command::Split { common, expr } => {
            let cfg = common.required_config()?;
            let f = series(&expr, &cfg)?;
            let (g0, g1) = even_odd_split(&f, cfg.var)?;
            let mut out = Builder::new("split", &cfg);
            out.series("g0", &g0).series("g1", &g1);
            Ok(out.finish(EXIT_OK))
        }
        Command::Lemma { common, expr } => {
            let cfg = common.required_config()?;
            require_pipeline_trunc(&cfg)?;
            let f = series(&expr, &cfg)?;
            let r = lemma_split(&f, cfg.var)?;
            let mut out = Builder::new("lemma", &cfg);
            out.series("f0", &r.f0)
                .series("f1", &r.f1)
                .value("guaranteed_degree", r.guaranteed_degree);
            Ok(out.finish(EXIT_OK))
        }
        Command::Holo {
            common,
            expr,
            coeffs,
        } => {
            let cfg = common.fixed_config(1)?;
            require_pipeline_trunc(&cfg)?;
            let h = match (&expr, &coeffs) {
                (Some(e), _) => series(e, &cfg)?,
                (None, Some(c)) => coeff_series(c, &cfg)?,
                (None, None) => return Err(Failure::Usage("need -e or --coeffs".into())),
            };
            let (normalized, correction) = normalize_h(&h)?;
            let pair = holomorphic_extension(&normalized)?;
            let cr = cauchy_riemann_check(&pair)?;
            let mut out = Builder::new("holo", &cfg);
            out.series("q", &correction).series("h", &normalized);
            pair_lines(&mut out, &pair);
            cr_lines(&mut out, &cr);
            // the extension is holomorphic for every input; a failure is a bug
            let code = if cr.passes { EXIT_OK } else { EXIT_INTERNAL };
            Ok(out.finish(code))
        }
        Command::CrCheck {
            common,
            real,
            imag,
            expr,
            coeffs,
        } => {
            let (cfg, pair) = match (real, imag) {
                (Some(u), Some(v)) => {
                    let cfg = common.fixed_config(2)?;
                    let u = series(&u, &cfg)?;
                    let v = series(&v, &cfg)?;
                    let g = u.guaranteed_degree().min(v.guaranteed_degree());
                    (cfg, HoloPair { u, v, guaranteed_degree: g })
                }
                _ => {
                    let cfg = common.fixed_config(1)?;
                    let h = match (expr, coeffs) {
                        (Some(e), _) => series(&e, &cfg)?,
                        (None, Some(c)) => coeff_series(&c, &cfg)?,
                        (None, None) => {
                            return Err(Failure::Usage("need -f/-g, -e or --coeffs".into()))
                        }
                    };
                    (cfg, direct_complexification(&h)?)
                }
            };
            let cr = cauchy_riemann_check(&pair)?;
            let mut out = Builder::new("cr-check", &cfg);
            pair_lines(&mut out, &pair);
            cr_lines(&mut out, &cr);
            Ok(out.finish(EXIT_OK))
        }
        Command::Semigroup { common, expr } => {
            let cfg = common.required_config()?;
            let f = series(&expr, &cfg)?;
            let prep = weierstrass_prepare(&f, cfg.var)?;
            let report = semigroup_check(&prep.poly, &f)?;
            let mut out = Builder::new("semigroup", &cfg);
            out.series("P", &prep.poly.expand()?);
            for check in &report.checked {
                let line = match &check.witness {
                    Some(w) => {
                        let parts: Vec<String> = w.iter().map(|e| e.to_string()).collect();
                        format!("member {} = {}", check.target, parts.join(" + "))
                    }
                    None => format!("non-member {}", check.target),
                };
                out.line(&line);
            }
            out.value("guaranteed_degree", report.guaranteed_degree)
                .line(if report.all_members() {
                    "all members: yes"
                } else {
                    "all members: no"
                })
                .json("report", serde_json::to_value(&report).expect("serializable"))
                .json("all_members", json!(report.all_members()));
            Ok(out.finish(EXIT_OK))
        }
    }
}
