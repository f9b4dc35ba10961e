use super::multipoly::MultiPoly;
use super::sphere::{reduce_mod_sphere, SphereFunction};
use crate::arith::{ExactScalar, GaussianRational};
use crate::error::{Error, Result};

/// Built-in sphere families.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SphereExample {
    /// `{z_1, …, z_n}` on `S^{2n-1} ⊂ ℂ^n`.
    Coordinates(usize),
    /// The single cubic
    /// `a(z²w + zu·v̄) + b(zu·w̄ - z²v) + c(u²·v̄ + zuw) + d(u²·w̄ - zuv)` on `S^7`.
    S7 { a: GaussianRational, b: GaussianRational, c: GaussianRational, d: GaussianRational },
}

/// `z_j = x_{2j-1} + i·x_{2j}` in `ℝ^{2n}`, zero-based `j`.
pub fn complex_coordinate(n: usize, j: usize) -> MultiPoly {
    let dim = 2 * n;
    &MultiPoly::var(dim, 2 * j) + &MultiPoly::var(dim, 2 * j + 1).scale(&GaussianRational::i())
}

/// The `S^7` cubic as an ambient polynomial on `ℝ^8`.
pub fn s7_polynomial(a: &GaussianRational, b: &GaussianRational, c: &GaussianRational, d: &GaussianRational) -> MultiPoly {
    let [z, u, w, v] = [0, 1, 2, 3].map(|j| complex_coordinate(4, j));
    let (wb, vb) = (w.conj(), v.conj());
    let zu = &z * &u;
    let z2 = &z * &z;
    let u2 = &u * &u;
    let ta = &(&z2 * &w) + &(&zu * &vb);
    let tb = &(&zu * &wb) - &(&z2 * &v);
    let tc = &(&u2 * &vb) + &(&zu * &w);
    let td = &(&u2 * &wb) - &(&zu * &v);
    [(a, ta), (b, tb), (c, tc), (d, td)].into_iter().fold(MultiPoly::zero(8), |acc, (k, t)| &acc + &t.scale(k))
}

/// Builds the family as restrictions to the sphere. A zero `S7` parameter
/// tuple yields the zero function, which callers must reject before asking
/// for eigenvalues.
pub fn make_example(kind: &SphereExample) -> Result<Vec<SphereFunction>> {
    match kind {
        SphereExample::Coordinates(n) if *n >= 2 => (0..*n).map(|j| reduce_mod_sphere(&complex_coordinate(*n, j))).collect(),
        SphereExample::Coordinates(n) => Err(Error::Usage(format!("coordinates(n) needs n >= 2, got {n}"))),
        SphereExample::S7 { a, b, c, d } => Ok(vec![reduce_mod_sphere(&s7_polynomial(a, b, c, d))?]),
    }
}
