use std::fmt;
use std::sync::Arc;

use crate::arith::{ExactScalar, GaussianRational, PiScalar};
use crate::error::{Error, Result};
use crate::poly::{sphere_integrate, sphere_kappa, sphere_laplacian, SphereFunction};
use crate::torus::{trig_integrate, trig_kappa, trig_laplacian, Torus, TrigPoly};

/// An exact algebra of functions on a compact manifold with its Laplacian
/// `Δ`, conformality operator `κ` and normalized integral. The carrier must be
/// an integral domain so that proportionality is decidable by one
/// coefficient ratio.
pub trait FunctionAlgebra: Sync {
    type Scalar: ExactScalar;
    type Elem: Clone + PartialEq + fmt::Display + fmt::Debug + Send + Sync;

    fn describe(&self) -> String;
    /// Rejects elements that live on a different manifold.
    fn admit(&self, f: &Self::Elem) -> Result<()>;
    fn constant(&self, c: Self::Scalar) -> Self::Elem;
    fn add(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem;
    fn mul(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem;
    fn scale(&self, f: &Self::Elem, c: &Self::Scalar) -> Self::Elem;
    fn conj(&self, f: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, f: &Self::Elem) -> bool;
    fn laplacian(&self, f: &Self::Elem) -> Self::Elem;
    fn kappa(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem;
    fn integrate(&self, f: &Self::Elem) -> Self::Scalar;
    /// Coefficients of `num` and of `den` at the leading term of `den`, or
    /// `None` when `den` is zero.
    fn leading_pair(&self, num: &Self::Elem, den: &Self::Elem) -> Option<(Self::Scalar, Self::Scalar)>;

    fn zero(&self) -> Self::Elem {
        self.constant(Self::Scalar::zero())
    }

    fn one(&self) -> Self::Elem {
        self.constant(Self::Scalar::one())
    }

    fn sub(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.add(f, &self.scale(g, &-Self::Scalar::one()))
    }

    fn pow(&self, f: &Self::Elem, exp: u32) -> Self::Elem {
        (0..exp).fold(self.one(), |acc, _| self.mul(&acc, f))
    }

    /// `(f + f̄)/2`.
    fn re(&self, f: &Self::Elem) -> Self::Elem {
        self.scale(&self.add(f, &self.conj(f)), &Self::Scalar::from_rational(half()))
    }

    /// `(f - f̄)/(2i)`.
    fn im(&self, f: &Self::Elem) -> Self::Elem {
        let minus_half_i = Self::Scalar::i() * Self::Scalar::from_rational(-half());
        self.scale(&self.sub(f, &self.conj(f)), &minus_half_i)
    }
}

fn half() -> num_rational::BigRational {
    num_rational::BigRational::new(1.into(), 2.into())
}

/// The scalar `c` with `num = c·den`, if any.
pub fn proportionality<A: FunctionAlgebra>(alg: &A, num: &A::Elem, den: &A::Elem) -> Option<A::Scalar> {
    let (top, lead) = alg.leading_pair(num, den)?;
    let c = top.checked_div(&lead)?;
    (alg.scale(den, &c) == *num).then_some(c)
}

/// Functions on the unit sphere `S^{m-1} ⊂ ℝ^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sphere {
    pub m: usize,
}

impl FunctionAlgebra for Sphere {
    type Scalar = GaussianRational;
    type Elem = SphereFunction;

    fn describe(&self) -> String {
        format!("S^{}", self.m - 1)
    }

    fn admit(&self, f: &SphereFunction) -> Result<()> {
        if f.dim() == self.m {
            Ok(())
        } else {
            Err(Error::Dimension(format!("function on R^{} used on S^{}", f.dim(), self.m - 1)))
        }
    }

    fn constant(&self, c: GaussianRational) -> SphereFunction {
        SphereFunction::constant(self.m, c).expect("sphere dimension validated at construction")
    }

    fn add(&self, f: &SphereFunction, g: &SphereFunction) -> SphereFunction {
        f + g
    }

    fn mul(&self, f: &SphereFunction, g: &SphereFunction) -> SphereFunction {
        f * g
    }

    fn scale(&self, f: &SphereFunction, c: &GaussianRational) -> SphereFunction {
        f.scale(c)
    }

    fn conj(&self, f: &SphereFunction) -> SphereFunction {
        f.conj()
    }

    fn is_zero(&self, f: &SphereFunction) -> bool {
        f.is_zero()
    }

    fn laplacian(&self, f: &SphereFunction) -> SphereFunction {
        sphere_laplacian(f)
    }

    fn kappa(&self, f: &SphereFunction, g: &SphereFunction) -> SphereFunction {
        sphere_kappa(f, g)
    }

    fn integrate(&self, f: &SphereFunction) -> GaussianRational {
        sphere_integrate(f)
    }

    fn leading_pair(&self, num: &SphereFunction, den: &SphereFunction) -> Option<(GaussianRational, GaussianRational)> {
        let (key, lead) = den.normal_form().leading()?;
        Some((num.normal_form().coeff(key), lead.clone()))
    }
}

impl Sphere {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::ReducibleQuadric(m));
        }
        Ok(Self { m })
    }
}

/// Trigonometric polynomials on a flat torus.
#[derive(Clone, Debug)]
pub struct FlatTorus(pub Arc<Torus>);

impl FunctionAlgebra for FlatTorus {
    type Scalar = PiScalar;
    type Elem = TrigPoly;

    fn describe(&self) -> String {
        format!("R^{}/[{}]", self.0.rank(), self.0.lattice())
    }

    fn admit(&self, f: &TrigPoly) -> Result<()> {
        if f.torus().as_ref() == self.0.as_ref() {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    fn constant(&self, c: PiScalar) -> TrigPoly {
        TrigPoly::constant(&self.0, c)
    }

    fn add(&self, f: &TrigPoly, g: &TrigPoly) -> TrigPoly {
        f + g
    }

    fn mul(&self, f: &TrigPoly, g: &TrigPoly) -> TrigPoly {
        f * g
    }

    fn scale(&self, f: &TrigPoly, c: &PiScalar) -> TrigPoly {
        f.scale(c)
    }

    fn conj(&self, f: &TrigPoly) -> TrigPoly {
        f.conj()
    }

    fn is_zero(&self, f: &TrigPoly) -> bool {
        f.is_zero()
    }

    fn laplacian(&self, f: &TrigPoly) -> TrigPoly {
        trig_laplacian(f)
    }

    fn kappa(&self, f: &TrigPoly, g: &TrigPoly) -> TrigPoly {
        trig_kappa(f, g).expect("elements admitted on one torus")
    }

    fn integrate(&self, f: &TrigPoly) -> PiScalar {
        trig_integrate(f)
    }

    fn leading_pair(&self, num: &TrigPoly, den: &TrigPoly) -> Option<(PiScalar, PiScalar)> {
        let (key, lead) = den.leading()?;
        Some((num.coeff(key), lead.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{complex_coordinate, reduce_mod_sphere};
    use crate::torus::Lattice;

    #[test]
    fn real_and_imaginary_parts_on_the_sphere() {
        let s3 = Sphere::new(4).unwrap();
        let z = reduce_mod_sphere(&complex_coordinate(2, 0)).unwrap();
        assert_eq!(s3.re(&z), SphereFunction::coordinate(4, 0).unwrap());
        assert_eq!(s3.im(&z), SphereFunction::coordinate(4, 1).unwrap());
        assert!(Sphere::new(1).is_err());
    }

    #[test]
    fn real_and_imaginary_parts_on_the_torus() {
        let t = FlatTorus(Torus::new(Lattice::standard(2)).unwrap());
        let e = TrigPoly::character(&t.0, &[1, 0]);
        let cos = t.scale(&t.add(&e, &e.conj()), &PiScalar::constant(GaussianRational::ratio(1, 2)));
        assert_eq!(t.re(&e), cos);
        // Im(e) = (e - ē)/(2i) has coefficients -i/2 and i/2
        let im = t.im(&e);
        let minus_half_i = GaussianRational::new(num_traits::Zero::zero(), -half());
        assert_eq!(im.coeff(&[1, 0]), PiScalar::constant(minus_half_i));
        assert_eq!(t.add(&t.re(&e), &t.scale(&im, &PiScalar::i())), e);
    }

    #[test]
    fn proportionality_detects_scalar_multiples() {
        let s3 = Sphere::new(4).unwrap();
        let z = reduce_mod_sphere(&complex_coordinate(2, 0)).unwrap();
        let three = GaussianRational::from(3);
        assert_eq!(proportionality(&s3, &z.scale(&three), &z), Some(three));
        let w = reduce_mod_sphere(&complex_coordinate(2, 1)).unwrap();
        assert_eq!(proportionality(&s3, &(&z + &w), &z), None);
        assert_eq!(proportionality(&s3, &z, &s3.zero()), None);
    }

    #[test]
    fn admission() {
        let s3 = Sphere::new(4).unwrap();
        assert!(s3.admit(&SphereFunction::coordinate(3, 0).unwrap()).is_err());
        let t = FlatTorus(Torus::new(Lattice::standard(2)).unwrap());
        let other = Torus::new("2,0;0,1".parse().unwrap()).unwrap();
        assert_eq!(t.admit(&TrigPoly::character(&other, &[1, 0])), Err(Error::LatticeMismatch));
    }
}
