//! Sum-dominant and restricted-sum-dominant integer sets.
//!
//! A finite set `A ⊂ ℤ` is *sum-dominant* (SD) when `|A+A| > |A−A|` and
//! *restricted-sum-dominant* (RSD) when `|A∔A| > |A−A|`, where `A∔A` only
//! admits sums of two distinct elements. This crate provides
//!
//! - [`setcore`]: dense bit-vector sets with shift-or kernels for the three
//!   set operations, per-set analysis and an affine normal form;
//! - [`constructions`]: generators for arithmetic progressions, one-point
//!   extensions, base-`m` digit sets, sets with any prescribed
//!   `Δ(A) = |A−A| − |A∔A|`, and self-checking identity verifiers;
//! - [`enumeration`]: exhaustive, sharded, parallel enumeration of
//!   affine-equivalence classes inside `{0, …, n}`.

pub mod constructions;
pub mod enumeration;
mod error;
pub mod setcore;

pub use error::{Error, Result};
pub use setcore::{
    analyze, are_affinely_equivalent, canonicalize, parse_set, AnalysisReport, CanonicalForm,
    IntSet,
};
