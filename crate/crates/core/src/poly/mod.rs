//! Polynomials over the Gaussian rationals and their restrictions to round
//! spheres, with the restricted Laplacian, conformality operator and
//! normalized integral.

mod examples;
mod multipoly;
mod sphere;

pub use examples::{complex_coordinate, make_example, s7_polynomial, SphereExample};
pub use multipoly::{Exponent, MultiPoly};
pub use sphere::{
    integrate_monomial, integrate_polynomial, reduce_mod_sphere, sphere_integrate, sphere_kappa, sphere_laplacian, SphereFunction,
};
