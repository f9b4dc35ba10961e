use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{ExactScalar, GaussianRational};

/// Exponent vector, one entry per ambient coordinate.
pub type Exponent = Vec<u32>;

/// Sparse polynomial in `x_1, …, x_m` over the Gaussian rationals.
///
/// Zero coefficients are never stored. Binary operations require both sides
/// to have the same ambient dimension and panic otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    dim: usize,
    terms: BTreeMap<Exponent, GaussianRational>,
}

fn accumulate(terms: &mut BTreeMap<Exponent, GaussianRational>, e: Exponent, c: GaussianRational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl MultiPoly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: GaussianRational) -> Self {
        Self::monomial(vec![0; dim], c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, GaussianRational::one())
    }

    pub fn monomial(exponent: Exponent, c: GaussianRational) -> Self {
        let dim = exponent.len();
        Self::from_terms(dim, [(exponent, c)])
    }

    /// The coordinate `x_{i+1}` (zero-based `i`).
    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i < dim, "variable index {i} out of range for dimension {dim}");
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::monomial(e, GaussianRational::one())
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exponent, GaussianRational)>) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), dim, "exponent length must match the ambient dimension");
            accumulate(&mut map, e, c);
        }
        Self { dim, terms: map }
    }

    /// `x_1² + … + x_m²`.
    pub fn radius_squared(dim: usize) -> Self {
        (0..dim).map(|i| Self::var(dim, i).pow(2)).fold(Self::zero(dim), |a, b| &a + &b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, e: &[u32]) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest exponent in graded order: total degree first, then
    /// lexicographic with `x_1` most significant.
    pub fn leading(&self) -> Option<(&Exponent, &GaussianRational)> {
        self.terms.iter().max_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| a.cmp(b))
        })
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.iter().sum()).or_insert_with(|| Self::zero(self.dim)).terms.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_components().len() <= 1
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    pub fn conj(&self) -> Self {
        Self { dim: self.dim, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect() }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.dim);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `∂/∂x_{i+1}`.
    pub fn partial(&self, i: usize) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
                let mut d = e.clone();
                d[i] -= 1;
                (d, c.scale(&rat(e[i])))
            }),
        )
    }

    /// Ambient Euclidean Laplacian `Σ ∂²/∂x_i²`.
    pub fn laplacian(&self) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            for i in 0..self.dim {
                if e[i] >= 2 {
                    let mut d = e.clone();
                    d[i] -= 2;
                    accumulate(&mut out, d, c.scale(&rat(e[i] * (e[i] - 1))));
                }
            }
        }
        Self { dim: self.dim, terms: out }
    }

    /// Euler operator `Σ x_i ∂/∂x_i`: multiplies each monomial by its degree.
    pub fn euler(&self) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(e, c)| (e.clone(), c.scale(&rat(e.iter().sum())))))
    }

    /// `⟨∇p, ∇q⟩` in the flat ambient metric, extended bilinearly.
    pub fn gradient_dot(&self, other: &Self) -> Self {
        (0..self.dim).fold(Self::zero(self.dim), |acc, i| &acc + &(&self.partial(i) * &other.partial(i)))
    }

    /// Evaluation at a rational point.
    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        self.terms.iter().fold(GaussianRational::zero(), |acc, (e, c)| {
            let v = e.iter().zip(point).fold(c.clone(), |t, (&k, x)| t * x.pow(k));
            acc + v
        })
    }
}

fn rat(n: u32) -> BigRational {
    BigRational::from_integer(n.into())
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            accumulate(&mut terms, e.clone(), c.clone());
        }
        MultiPoly { dim: self.dim, terms }
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            accumulate(&mut terms, e.clone(), -c);
        }
        MultiPoly { dim: self.dim, terms }
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                accumulate(&mut terms, e, ca * cb);
            }
        }
        MultiPoly { dim: self.dim, terms }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { dim: self.dim, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Formats as `x1^2*x3 - (1/2+i)*x2 + 3`, highest graded term first.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Exponent> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            let negative = c.im.is_zero() && c.re.is_negative() || c.re.is_zero() && c.im.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            let sep = match (idx, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            f.write_str(sep)?;
            let coeff = if magnitude.re.is_zero() || magnitude.im.is_zero() { magnitude.to_string() } else { format!("({magnitude})") };
            match (vars.is_empty(), magnitude == GaussianRational::one()) {
                (true, _) => f.write_str(&coeff)?,
                (false, true) => f.write_str(&vars.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(dim: usize, i: usize) -> MultiPoly {
        MultiPoly::var(dim, i)
    }

    #[test]
    fn ring_operations() {
        let a = &x(2, 0) + &x(2, 1);
        let sq = a.pow(2);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&[1, 1]), GaussianRational::from(2));
        assert!((&a - &a).is_zero());
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(MultiPoly::zero(3).degree(), None);
    }

    #[test]
    fn calculus() {
        let p = &x(3, 0).pow(3) * &x(3, 1);
        assert_eq!(p.partial(0), (&x(3, 0).pow(2) * &x(3, 1)).scale(&GaussianRational::from(3)));
        assert_eq!(p.laplacian(), (&x(3, 0) * &x(3, 1)).scale(&GaussianRational::from(6)));
        assert_eq!(p.euler(), p.scale(&GaussianRational::from(4)));
        let r2 = MultiPoly::radius_squared(3);
        assert_eq!(r2.laplacian(), MultiPoly::constant(3, GaussianRational::from(6)));
        assert_eq!(r2.gradient_dot(&r2), r2.scale(&GaussianRational::from(4)));
    }

    #[test]
    fn components_and_leading() {
        let p = &(&x(2, 0).pow(2) + &x(2, 1)) + &MultiPoly::one(2);
        let comps = p.homogeneous_components();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(!p.is_homogeneous());
        assert_eq!(p.leading().unwrap().0, &vec![2, 0]);
    }

    #[test]
    fn display() {
        let p = &(&x(2, 0).pow(2) - &x(2, 1).scale(&GaussianRational::ratio(1, 2)))
            + &MultiPoly::constant(2, GaussianRational::from_ints(1, 1));
        assert_eq!(p.to_string(), "x1^2 - 1/2*x2 + (1+1*i)");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }
}
