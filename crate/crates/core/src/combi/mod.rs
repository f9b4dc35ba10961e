//! The binomial matrices `A(n)`, `B(n)`, their row generating polynomials,
//! and checks of the determinant, kernel and recurrence identities they obey.
//!
//! Row `ℓ` of `A(n)` is `a_ℓ(n)` with `a_ℓ(n)_m = Σ_k C(ℓ,2k)·C(n-ℓ,2(m-k)+1)`;
//! `b_ℓ(n)` uses the even binomial `C(n-ℓ,2(m-k))`.

mod family;
mod genpoly;
mod intpoly;
mod kernel;
mod recurrences;
mod reduction;

pub use family::{
    a_entry, a_row, b_entry, b_row, build_matrix, dimensions, predicted_det, printed_examples, verify_det, verify_printed_example,
    MatrixFamily, PrintedExample,
};
pub use genpoly::{
    alpha_derivative_case, derivative_case, derivative_rows, falling, gen_poly, surjectivity_witnesses, verify_derivative_cases,
    verify_gen_polys, verify_surjectivity, witnesses, DerivativeCase, DerivativeRule, GenKind, GenPolyPair,
};
pub use intpoly::IntPoly;
pub use kernel::{cleared_kernel_sum, kernel_vector, verify_kernel};
pub use recurrences::verify_recurrences;
pub use reduction::{a_step_matrix, b_step_matrix, det_via_row_reduction, verify_reduction_steps};
