use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::lattice::{dual_lattice, Lattice};
use crate::arith::{ExactScalar, PiScalar};
use crate::error::{Error, Result};

/// The flat torus `ℝ^n/Γ` together with its dual lattice, whose vectors index
/// the characters `e_k(x) = exp(2πi⟨k, x⟩)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Torus {
    lattice: Lattice,
    dual: Lattice,
}

impl Torus {
    pub fn new(lattice: Lattice) -> Result<Arc<Self>> {
        let dual = dual_lattice(&lattice)?;
        Ok(Arc::new(Self { lattice, dual }))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dual(&self) -> &Lattice {
        &self.dual
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

/// A finite Fourier sum `Σ c_k e_k` with `k` in integer coordinates of the
/// dual basis and `c_k` a Π-polynomial.
#[derive(Clone, Debug)]
pub struct TrigPoly {
    torus: Arc<Torus>,
    terms: BTreeMap<Vec<i64>, PiScalar>,
}

impl PartialEq for TrigPoly {
    fn eq(&self, other: &Self) -> bool {
        same_torus(&self.torus, &other.torus) && self.terms == other.terms
    }
}

impl Eq for TrigPoly {}

fn same_torus(a: &Arc<Torus>, b: &Arc<Torus>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn accumulate(terms: &mut BTreeMap<Vec<i64>, PiScalar>, k: Vec<i64>, c: PiScalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

fn minus_pi2_times(q: BigRational) -> PiScalar {
    PiScalar::pi2_multiple(-q)
}

impl TrigPoly {
    pub fn zero(torus: &Arc<Torus>) -> Self {
        Self { torus: Arc::clone(torus), terms: BTreeMap::new() }
    }

    pub fn constant(torus: &Arc<Torus>, c: PiScalar) -> Self {
        Self::from_terms(torus, [(vec![0; torus.rank()], c)])
    }

    /// The character `e_k`.
    pub fn character(torus: &Arc<Torus>, k: &[i64]) -> Self {
        Self::from_terms(torus, [(k.to_vec(), PiScalar::one())])
    }

    pub fn from_terms(torus: &Arc<Torus>, terms: impl IntoIterator<Item = (Vec<i64>, PiScalar)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            assert_eq!(k.len(), torus.rank(), "frequency length must match the torus rank");
            accumulate(&mut map, k, c);
        }
        Self { torus: Arc::clone(torus), terms: map }
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &PiScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &[i64]) -> PiScalar {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Frequency with the largest squared norm, ties broken by coordinates.
    pub fn leading(&self) -> Option<(&Vec<i64>, &PiScalar)> {
        let dual = self.torus.dual();
        self.terms.iter().max_by(|(a, _), (b, _)| dual.norm_squared(a).cmp(&dual.norm_squared(b)).then_with(|| a.cmp(b)))
    }

    pub fn scale(&self, c: &PiScalar) -> Self {
        Self::from_terms(&self.torus, self.terms.iter().map(|(k, x)| (k.clone(), x * c)))
    }

    /// `conj(Σ c_k e_k) = Σ conj(c_k) e_{-k}`.
    pub fn conj(&self) -> Self {
        Self::from_terms(&self.torus, self.terms.iter().map(|(k, c)| (k.iter().map(|x| -x).collect(), c.conj())))
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(&self.torus, PiScalar::one()), |acc, _| &acc * self)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_torus(&self.torus, &other.torus) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    fn combine(&self, other: &Self, op: impl Fn(&[i64], &PiScalar, &[i64], &PiScalar) -> Option<(Vec<i64>, PiScalar)>) -> Self {
        let mut terms = BTreeMap::new();
        for (k, a) in &self.terms {
            for (l, b) in &other.terms {
                if let Some((key, c)) = op(k, a, l, b) {
                    accumulate(&mut terms, key, c);
                }
            }
        }
        Self { torus: Arc::clone(&self.torus), terms }
    }
}

fn add_keys(k: &[i64], l: &[i64]) -> Vec<i64> {
    k.iter().zip(l).map(|(a, b)| a + b).collect()
}

/// `Δe_k = -Π‖k‖² e_k`.
pub fn trig_laplacian(f: &TrigPoly) -> TrigPoly {
    let dual = f.torus.dual();
    TrigPoly::from_terms(&f.torus, f.terms.iter().map(|(k, c)| (k.clone(), c * &minus_pi2_times(dual.norm_squared(k)))))
}

/// `κ(e_k, e_l) = -Π⟨k, l⟩ e_{k+l}`, extended bilinearly.
pub fn trig_kappa(f: &TrigPoly, g: &TrigPoly) -> Result<TrigPoly> {
    f.check_same(g)?;
    let dual = f.torus.dual();
    Ok(f.combine(g, |k, a, l, b| {
        let pairing = dual.pairing(k, l);
        (!num_traits::Zero::is_zero(&pairing)).then(|| (add_keys(k, l), &(a * b) * &minus_pi2_times(pairing)))
    }))
}

/// Normalized Haar integral: the coefficient of `e_0`.
pub fn trig_integrate(f: &TrigPoly) -> PiScalar {
    f.coeff(&vec![0; f.torus.rank()])
}

impl<'a> Add<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        self.check_same(rhs).expect("trig polynomials on different tori");
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            accumulate(&mut terms, k.clone(), c.clone());
        }
        TrigPoly { torus: Arc::clone(&self.torus), terms }
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        TrigPoly { torus: Arc::clone(&self.torus), terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect() }
    }
}

impl<'a> Sub<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        self.check_same(rhs).expect("trig polynomials on different tori");
        self.combine(rhs, |k, a, l, b| Some((add_keys(k, l), a * b)))
    }
}

/// Formats as `(c)*e[1,0] + (c')*e[0,0]`.
impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| {
                let key: Vec<String> = k.iter().map(ToString::to_string).collect();
                format!("({c})*e[{}]", key.join(","))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaussianRational;

    fn z2() -> Arc<Torus> {
        Torus::new(Lattice::standard(2)).unwrap()
    }

    fn e(t: &Arc<Torus>, k: &[i64]) -> TrigPoly {
        TrigPoly::character(t, k)
    }

    fn pi(q: i64) -> PiScalar {
        PiScalar::pi2_multiple(BigRational::from_integer(q.into()))
    }

    #[test]
    fn laplacian_examples() {
        let t = z2();
        assert_eq!(trig_laplacian(&e(&t, &[1, 0])), e(&t, &[1, 0]).scale(&pi(-1)));
        assert!(trig_laplacian(&TrigPoly::constant(&t, PiScalar::from(3))).is_zero());
        assert_eq!(trig_laplacian(&e(&t, &[1, 1])), e(&t, &[1, 1]).scale(&pi(-2)));
    }

    #[test]
    fn kappa_examples() {
        let t = z2();
        let f = e(&t, &[1, 0]);
        assert_eq!(trig_kappa(&f, &f).unwrap(), e(&t, &[2, 0]).scale(&pi(-1)));
        assert_eq!(trig_kappa(&f, &f).unwrap(), (&f * &f).scale(&pi(-1)));
        assert!(trig_kappa(&f, &e(&t, &[0, 1])).unwrap().is_zero());
        assert!(trig_kappa(&f, &TrigPoly::constant(&t, PiScalar::from(2))).unwrap().is_zero());
        let other = Torus::new("2,0;0,1".parse().unwrap()).unwrap();
        assert_eq!(trig_kappa(&f, &e(&other, &[1, 0])), Err(Error::LatticeMismatch));
    }

    #[test]
    fn integrals() {
        let t = z2();
        assert_eq!(trig_integrate(&e(&t, &[0, 0])), PiScalar::one());
        assert!(trig_integrate(&e(&t, &[1, 0])).is_zero());
        // cos(2πx₁) = (e_1 + e_{-1})/2
        let cos = (&e(&t, &[1, 0]) + &e(&t, &[-1, 0])).scale(&PiScalar::constant(GaussianRational::ratio(1, 2)));
        assert_eq!(trig_integrate(&cos.pow(2)), PiScalar::constant(GaussianRational::ratio(1, 2)));
    }

    #[test]
    fn conjugation() {
        let t = z2();
        let f = e(&t, &[1, 2]).scale(&PiScalar::constant(GaussianRational::from_ints(1, 1)));
        assert_eq!(f.conj(), e(&t, &[-1, -2]).scale(&PiScalar::constant(GaussianRational::from_ints(1, -1))));
        assert_eq!(f.conj().conj(), f);
    }

    #[test]
    fn display() {
        let t = z2();
        assert_eq!(e(&t, &[1, 0]).to_string(), "(1)*e[1,0]");
        assert_eq!(TrigPoly::zero(&t).to_string(), "0");
    }
}
