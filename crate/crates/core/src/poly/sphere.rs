use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::multipoly::{Exponent, MultiPoly};
use crate::arith::{ExactScalar, GaussianRational};
use crate::error::{Error, Result};

/// A polynomial function on the unit sphere `S^{m-1} ⊂ ℝ^m`, stored as its
/// normal form modulo `x_1² + … + x_m² - 1`: the unique representative whose
/// degree in `x_1` is at most one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SphereFunction {
    poly: MultiPoly,
}

/// Repeatedly substitutes `x_1² = 1 - Σ_{i≥2} x_i²`, largest `x_1` power first.
fn normalize(p: &MultiPoly) -> MultiPoly {
    let dim = p.dim();
    let mut work: BTreeMap<Exponent, GaussianRational> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    let mut done = Vec::new();
    while let Some((e, c)) = work.pop_last() {
        if e[0] < 2 {
            done.push((e, c));
            done.extend(std::mem::take(&mut work));
            break;
        }
        let mut base = e.clone();
        base[0] -= 2;
        let mut push = |exp: Exponent, coeff: GaussianRational| match work.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        };
        push(base.clone(), c.clone());
        for i in 1..dim {
            let mut t = base.clone();
            t[i] += 2;
            push(t, -&c);
        }
    }
    MultiPoly::from_terms(dim, done)
}

/// Normal form of `p|_S`. Rejects `m < 2`, where the quadric is reducible.
pub fn reduce_mod_sphere(p: &MultiPoly) -> Result<SphereFunction> {
    if p.dim() < 2 {
        return Err(Error::ReducibleQuadric(p.dim()));
    }
    Ok(SphereFunction { poly: normalize(p) })
}

impl SphereFunction {
    pub fn zero(dim: usize) -> Result<Self> {
        reduce_mod_sphere(&MultiPoly::zero(dim))
    }

    pub fn constant(dim: usize, c: GaussianRational) -> Result<Self> {
        reduce_mod_sphere(&MultiPoly::constant(dim, c))
    }

    /// Restriction of the coordinate `x_{i+1}`.
    pub fn coordinate(dim: usize, i: usize) -> Result<Self> {
        reduce_mod_sphere(&MultiPoly::var(dim, i))
    }

    pub fn normal_form(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { poly: self.poly.scale(c) }
    }

    pub fn conj(&self) -> Self {
        Self { poly: self.poly.conj() }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self { poly: MultiPoly::one(self.dim()) }, |acc, _| &acc * self)
    }
}

impl fmt::Display for SphereFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl<'a> Add<&'a SphereFunction> for &'a SphereFunction {
    type Output = SphereFunction;
    fn add(self, rhs: &SphereFunction) -> SphereFunction {
        SphereFunction { poly: &self.poly + &rhs.poly }
    }
}

impl<'a> Sub<&'a SphereFunction> for &'a SphereFunction {
    type Output = SphereFunction;
    fn sub(self, rhs: &SphereFunction) -> SphereFunction {
        SphereFunction { poly: &self.poly - &rhs.poly }
    }
}

impl<'a> Mul<&'a SphereFunction> for &'a SphereFunction {
    type Output = SphereFunction;
    fn mul(self, rhs: &SphereFunction) -> SphereFunction {
        SphereFunction { poly: normalize(&(&self.poly * &rhs.poly)) }
    }
}

impl Neg for &SphereFunction {
    type Output = SphereFunction;
    fn neg(self) -> SphereFunction {
        SphereFunction { poly: -&self.poly }
    }
}

/// `Δ_S(p|_S)` via `Δ_S p_d = (Δ p_d - d(d+m-2) p_d)|_S` on each homogeneous
/// component `p_d` of the normal form.
pub fn sphere_laplacian(f: &SphereFunction) -> SphereFunction {
    let m = f.dim() as i64;
    let ambient = f.poly.homogeneous_components().into_iter().fold(MultiPoly::zero(f.dim()), |acc, (d, p)| {
        let d = i64::from(d);
        let shift = GaussianRational::from(d * (d + m - 2));
        &acc + &(&p.laplacian() - &p.scale(&shift))
    });
    SphereFunction { poly: normalize(&ambient) }
}

/// `κ(f, g) = ⟨∇p, ∇q⟩ - (Ep)(Eq)` restricted, with `E` the Euler operator;
/// the subtraction removes the radial parts of the ambient gradients.
pub fn sphere_kappa(f: &SphereFunction, g: &SphereFunction) -> SphereFunction {
    let grad = f.poly.gradient_dot(&g.poly);
    let radial = &f.poly.euler() * &g.poly.euler();
    SphereFunction { poly: normalize(&(&grad - &radial)) }
}

/// `∫ x^α` against the normalized round measure on `S^{m-1}`:
/// `Π(α_i-1)!! / (m(m+2)⋯(m+|α|-2))`, zero when some `α_i` is odd.
pub fn integrate_monomial(m: usize, alpha: &[u32]) -> BigRational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return BigRational::from_integer(BigInt::from(0));
    }
    let double_fact = |k: u32| (1..k).step_by(2).fold(BigInt::one(), |acc, j| acc * j);
    let num = alpha.iter().fold(BigInt::one(), |acc, &a| acc * double_fact(a));
    let total: u32 = alpha.iter().sum();
    let den = (0..total / 2).fold(BigInt::one(), |acc, j| acc * (m + 2 * j as usize));
    BigRational::new(num, den)
}

/// Integral of an arbitrary polynomial's restriction, monomial by monomial,
/// without reducing first.
pub fn integrate_polynomial(p: &MultiPoly) -> GaussianRational {
    p.terms().fold(GaussianRational::zero(), |acc, (e, c)| acc + c.scale(&integrate_monomial(p.dim(), e)))
}

/// Normalized integral over the sphere (total mass 1).
pub fn sphere_integrate(f: &SphereFunction) -> GaussianRational {
    integrate_polynomial(&f.poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(dim: usize, i: usize) -> MultiPoly {
        MultiPoly::var(dim, i)
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from(n)
    }

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    /// `(m/2)_{|α|/2}^{-1} Π Γ((α_i+1)/2)/Γ(1/2)` with
    /// `Γ(k+½)/Γ(½) = (2k-1)!!/2^k`, evaluated by a different route.
    fn gamma_oracle(m: usize, alpha: &[u32]) -> BigRational {
        if alpha.iter().any(|a| a % 2 == 1) {
            return BigRational::from_integer(0.into());
        }
        let half_gamma = |k: u32| -> BigRational {
            (0..k).fold(BigRational::one(), |acc, j| acc * BigRational::new(BigInt::from(2 * j + 1), BigInt::from(2)))
        };
        let num = alpha.iter().fold(BigRational::one(), |acc, &a| acc * half_gamma(a / 2));
        let total: u32 = alpha.iter().sum();
        let poch =
            (0..total / 2).fold(BigRational::one(), |acc, j| acc * BigRational::new(BigInt::from(m as u32 + 2 * j), BigInt::from(2)));
        num / poch
    }

    #[test]
    fn normal_forms() {
        let r2 = MultiPoly::radius_squared(4);
        assert_eq!(reduce_mod_sphere(&r2).unwrap().normal_form(), &MultiPoly::one(4));
        let x1sq = reduce_mod_sphere(&x(2, 0).pow(2)).unwrap();
        assert_eq!(x1sq.normal_form(), &(&MultiPoly::one(2) - &x(2, 1).pow(2)));
        let x1cube = reduce_mod_sphere(&x(2, 0).pow(3)).unwrap();
        assert_eq!(x1cube.normal_form(), &(&x(2, 0) - &(&x(2, 0) * &x(2, 1).pow(2))));
        assert!(matches!(reduce_mod_sphere(&x(1, 0)), Err(Error::ReducibleQuadric(1))));
    }

    #[test]
    fn normal_form_has_low_x1_degree() {
        let p = (&(&x(3, 0) + &x(3, 1)) + &x(3, 2)).pow(6);
        let f = reduce_mod_sphere(&p).unwrap();
        assert!(f.normal_form().terms().all(|(e, _)| e[0] <= 1));
    }

    #[test]
    fn ideal_multiples_vanish() {
        let r2m1 = &MultiPoly::radius_squared(3) - &MultiPoly::one(3);
        let p = &(&x(3, 0).pow(3) + &x(3, 1)) * &r2m1;
        assert!(reduce_mod_sphere(&p).unwrap().is_zero());
    }

    #[test]
    fn laplacian_examples() {
        let z1 = reduce_mod_sphere(&(&x(4, 0) + &x(4, 1).scale(&GaussianRational::i()))).unwrap();
        assert_eq!(sphere_laplacian(&z1), z1.scale(&g(-3)));
        assert!(sphere_laplacian(&SphereFunction::constant(4, g(5)).unwrap()).is_zero());
        // x1² = (x1² - ½|x|²) + ½|x|² on S¹: only the harmonic part moves, by -4
        let x1sq = reduce_mod_sphere(&x(2, 0).pow(2)).unwrap();
        let harmonic = reduce_mod_sphere(&(&x(2, 0).pow(2) - &MultiPoly::radius_squared(2).scale(&q(1, 2)))).unwrap();
        assert_eq!(sphere_laplacian(&x1sq), harmonic.scale(&g(-4)));
        let direct = reduce_mod_sphere(&(&MultiPoly::constant(2, g(2)) - &x(2, 0).pow(2).scale(&g(4)))).unwrap();
        assert_eq!(sphere_laplacian(&x1sq), direct);
    }

    #[test]
    fn kappa_examples() {
        let i = GaussianRational::i();
        let z1 = reduce_mod_sphere(&(&x(4, 0) + &x(4, 1).scale(&i))).unwrap();
        let z2 = reduce_mod_sphere(&(&x(4, 2) + &x(4, 3).scale(&i))).unwrap();
        assert_eq!(sphere_kappa(&z1, &z1), -&(&z1 * &z1));
        assert_eq!(sphere_kappa(&z1, &z2), -&(&z1 * &z2));
        assert!(sphere_kappa(&SphereFunction::constant(4, g(1)).unwrap(), &z1).is_zero());
    }

    #[test]
    fn integral_examples() {
        assert_eq!(integrate_monomial(5, &[2, 0, 0, 0, 0]), BigRational::new(1.into(), 5.into()));
        assert_eq!(integrate_monomial(4, &[4, 0, 0, 0]), BigRational::new(1.into(), 8.into()));
        assert_eq!(integrate_monomial(4, &[2, 2, 0, 0]), BigRational::new(1.into(), 24.into()));
        assert_eq!(integrate_monomial(4, &[3, 1, 0, 0]), BigRational::from_integer(0.into()));
        assert_eq!(integrate_monomial(3, &[0, 0, 0]), BigRational::one());
    }

    #[test]
    fn integrals_match_gamma_formula() {
        for m in 2..=6usize {
            let mut alpha = vec![0u32; m];
            for a in 0..=6u32 {
                for b in 0..=4u32 {
                    alpha[0] = a;
                    alpha[m - 1] = b;
                    assert_eq!(integrate_monomial(m, &alpha), gamma_oracle(m, &alpha), "m={m} {alpha:?}");
                }
            }
        }
    }

    #[test]
    fn integral_ignores_ideal() {
        let p = &(&x(3, 0).pow(2) * &x(3, 1).pow(2)) + &x(3, 2).pow(4);
        let r2m1 = &MultiPoly::radius_squared(3) - &MultiPoly::one(3);
        assert!(integrate_polynomial(&(&p * &r2m1)).is_zero());
        assert_eq!(integrate_polynomial(&p), sphere_integrate(&reduce_mod_sphere(&p).unwrap()));
    }
}
