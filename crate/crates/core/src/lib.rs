//! Exact verification of `(λ, μ)`-eigenfunction identities on round spheres
//! and flat tori, of the binomial matrix determinants behind their L²
//! relations, and of the cone construction that turns eigenfamilies into
//! harmonic morphisms.
//!
//! All arithmetic is exact. The guide in `book/` walks through each module;
//! its snippets run as doctests of this crate.

pub mod arith;
pub mod cli;
pub mod combi;
pub mod error;
pub mod poly;
pub mod report;
pub mod suite;
pub mod torus;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/binomial-matrices.md")]
    mod binomial_matrices {}
    #[doc = include_str!("../../../book/src/spheres.md")]
    mod spheres {}
    #[doc = include_str!("../../../book/src/flat-tori.md")]
    mod flat_tori {}
    #[doc = include_str!("../../../book/src/l2-relations.md")]
    mod l2_relations {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
