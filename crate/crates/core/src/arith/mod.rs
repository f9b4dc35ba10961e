//! Exact scalars and exact dense linear algebra.
//!
//! Everything here is an immutable value type. Integers and rationals come from
//! `num-bigint`/`num-rational`; the Gaussian rationals, the formal Π-polynomials
//! and the matrix routines are implemented in this module.

mod binomial;
mod gaussian;
mod matrix;
mod pi;
mod scalar;

pub use binomial::{binomial, BinomialTable};
pub use gaussian::GaussianRational;
pub use matrix::{det_bareiss, det_rational, inverse_rational, kernel_basis, ExactMatrix};
pub use pi::PiScalar;
pub use scalar::{parse_rational, ExactScalar};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
