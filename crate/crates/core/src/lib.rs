//! Exact truncated multivariate formal power series.
//!
//! Provides ring arithmetic over exact rationals, Weierstrass division and
//! preparation, implicit solving, the decomposition
//! `f = f0(x', x_k^2) + x_k f1(x', x_k^2)` obtained through preparation,
//! and the complex extension of a one-variable series with a
//! Cauchy-Riemann check. The [`cli`] module backs the `wprep` binary.

pub mod cli;
pub mod error;
pub mod expo;
pub mod local_ring;
pub mod pipelines;
pub mod series;
pub mod weierstrass;

pub use error::{Error, Result};
pub use expo::Expo;
pub use local_ring::{even_odd_split, halve_exponents, implicit_solve, monomial_divide};
pub use pipelines::{
    cauchy_riemann_check, direct_complexification, holomorphic_extension,
    holomorphic_extension_traced, lemma_split, lemma_split_traced, normalize_h, semigroup_check,
    HoloPair, LemmaResult, LemmaTrace, SemigroupReport,
};
pub use series::{ratio, Coeff, Order, Series};
pub use weierstrass::{
    weierstrass_divide, weierstrass_prepare, DistinguishedPoly, DivisionResult,
    PreparationResult,
};
