//! Geometry-independent verification over an abstract exact function algebra:
//! eigenfunction and eigenfamily detection, the eigenvalue constraints, the
//! L² relations between real and imaginary parts, and the cone
//! correspondence.
//!
//! `λ` and `μ` are always read off one leading coefficient and then verified
//! globally, which is exact because both carriers are integral domains.

mod algebra;
mod cone;
mod eigen;
mod l2;
mod structural;

pub use algebra::{proportionality, FlatTorus, FunctionAlgebra, Sphere};
pub use cone::{
    check_cone_correspondence, check_cone_lemma, cone_parameters, cone_round_trip, conical_pairs, harmonic_polynomials,
    harmonic_projection, isotropic_polynomials, verify_cone_parameters, ConeParams, QuadSurd,
};
pub use eigen::{
    check_eigenfamily, check_eigenfunction, check_lambda_mu_order, check_power_closure, check_spectrum_condition, lambda_mu_order,
    power_eigenvalue, EigenResult, FamilyResult,
};
pub use l2::{check_l2_family, check_l2_powers, exponent_tuples};
pub use structural::{random_sphere_function, random_trig_poly, sphere_cases, structural_properties, structural_suite, torus_cases};
