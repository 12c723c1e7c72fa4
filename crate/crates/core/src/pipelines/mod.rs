//! The even/odd decomposition pipeline, the holomorphic extension built on
//! it, and the support-semigroup check.

pub mod holo;
pub mod lemma;
pub mod semigroup;

pub use holo::{
    cauchy_riemann_check, direct_complexification, holomorphic_extension,
    holomorphic_extension_traced, normalize_h, CrResiduals, HoloPair,
};
pub use lemma::{lemma_split, lemma_split_traced, LemmaResult, LemmaTrace, PreparedStep};
pub use semigroup::{semigroup_check, MembershipCheck, Semigroup, SemigroupReport};
