//! Exact verification toolkit for quantum isometry groups of group
//! C*-algebras.
//!
//! The crate provides, with no floating point outside of heat traces:
//!
//! * [`rational`] / [`cyclotomic`] / [`matrix`] — exact arithmetic in
//!   `Q(zeta_N)` and dense matrices over it;
//! * [`group`] — finitely generated groups with symmetric generating sets,
//!   word lengths and sphere enumeration;
//! * [`dirac`] — the word-length Dirac operator, its spectrum and
//!   theta-summable heat traces;
//! * [`poly`] / [`parse`] / [`presentation`] / [`model`] — noncommutative
//!   *-polynomials, a presentation DSL, and evaluation against matrix models;
//! * [`action`] / [`presets`] — induced actions on group algebras and the
//!   bundled model catalog;
//! * [`real`] — the real structure `J`, commutant identities and
//!   finite-support certificates;
//! * [`laplacian`] — exact Laplacian coefficients and sphere-ratio analysis.

pub mod action;
pub mod cyclotomic;
pub mod dirac;
pub mod group;
pub mod laplacian;
pub mod matrix;
pub mod model;
pub mod parse;
pub mod poly;
pub mod presentation;
pub mod presets;
pub mod rational;
pub mod real;

pub use cyclotomic::{ArithError, CyclotomicScalar};
pub use group::{Elem, Group};
pub use matrix::Matrix;
pub use rational::Rational;

/// Every code block in the guide runs as a doctest of this crate, which keeps
/// the book and the library in sync by construction.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(exact_arithmetic, "../../../book/src/exact-arithmetic.md");
    chapter!(groups, "../../../book/src/groups.md");
    chapter!(dirac_heat, "../../../book/src/dirac-heat.md");
    chapter!(relations, "../../../book/src/relations.md");
    chapter!(models_actions, "../../../book/src/models-actions.md");
    chapter!(real_structure, "../../../book/src/real-structure.md");
    chapter!(laplacian, "../../../book/src/laplacian.md");
    chapter!(cli, "../../../book/src/cli.md");
}
