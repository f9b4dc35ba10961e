use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::gaussian::GaussianRational;
use super::scalar::ExactScalar;

/// A polynomial in the formal symbol `Π`, standing for `4π²`, with Gaussian
/// rational coefficients.
///
/// Since `π²` is transcendental the formal ring embeds into `ℂ`, so two
/// values are equal exactly when their coefficient lists agree.
/// `coeffs[j]` is the coefficient of `Π^j`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PiScalar {
    coeffs: Vec<GaussianRational>,
}

impl PiScalar {
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The symbol `Π` itself.
    pub fn pi2() -> Self {
        Self::from_coeffs(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    /// `q·Π`.
    pub fn pi2_multiple(q: BigRational) -> Self {
        Self::from_coeffs(vec![GaussianRational::zero(), GaussianRational::real(q)])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> GaussianRational {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    /// `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// When the value is `q·Π` with `q` real, returns `q`.
    pub fn as_real_pi2_multiple(&self) -> Option<BigRational> {
        match self.coeffs.as_slice() {
            [] => Some(BigRational::from_integer(0.into())),
            [c0, c1] if c0.is_zero() && c1.is_real() => Some(c1.re.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn zip_with(&self, rhs: &Self, op: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = GaussianRational::zero();
        let coeffs = (0..len).map(|j| op(self.coeffs.get(j).unwrap_or(&zero), rhs.coeffs.get(j).unwrap_or(&zero))).collect();
        Self::from_coeffs(coeffs)
    }

    fn product(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    /// Polynomial long division; `None` unless the remainder vanishes.
    fn exact_quotient(&self, divisor: &Self) -> Option<Self> {
        let dlead = divisor.coeffs.last()?;
        let dlead_inv = dlead.inv()?;
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return rem.is_empty().then(Self::default);
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + ddeg] * &dlead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::from_coeffs(quot))
    }
}

impl From<GaussianRational> for PiScalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for PiScalar {
    fn from(n: i64) -> Self {
        Self::constant(GaussianRational::from(n))
    }
}

impl Add for PiScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl Sub for PiScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl Mul for PiScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.product(&rhs)
    }
}

impl<'a> Mul<&'a PiScalar> for &'a PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        self.product(rhs)
    }
}

impl<'a> Add<&'a PiScalar> for &'a PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: &PiScalar) -> PiScalar {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Neg for PiScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl ExactScalar for PiScalar {
    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::from(1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn from_rational(q: BigRational) -> Self {
        Self::constant(GaussianRational::real(q))
    }

    fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    fn conj(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(ExactScalar::conj).collect() }
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        self.exact_quotient(rhs)
    }

    /// `Π > 0`, so a real Π-polynomial whose nonzero coefficients share one
    /// sign has that sign. Mixed signs are not decided.
    fn real_sign(&self) -> Option<Ordering> {
        let mut sign = Ordering::Equal;
        for c in &self.coeffs {
            let s = c.real_sign()?;
            if s == Ordering::Equal {
                continue;
            }
            if sign != Ordering::Equal && sign != s {
                return None;
            }
            sign = s;
        }
        Some(sign)
    }
}

/// Formats as `c0 + c1*PI2 + c2*PI2^2`, skipping zero terms; `PI2` ≡ 4π².
impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative_real = c.real_sign() == Some(Ordering::Less);
            let magnitude = if negative_real && !first { -c } else { c.clone() };
            let text = if magnitude.is_real() || magnitude.re == BigRational::from_integer(0.into()) {
                magnitude.to_string()
            } else {
                format!("({magnitude})")
            };
            if !first {
                f.write_str(if negative_real { " - " } else { " + " })?;
            }
            match power {
                0 => write!(f, "{text}")?,
                1 => write!(f, "{text}*PI2")?,
                p => write!(f, "{text}*PI2^{p}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(coeffs: &[i64]) -> PiScalar {
        PiScalar::from_coeffs(coeffs.iter().map(|&c| GaussianRational::from(c)).collect())
    }

    #[test]
    fn display_forms() {
        assert_eq!(pi(&[]).to_string(), "0");
        assert_eq!(pi(&[0, -1]).to_string(), "-1*PI2");
        assert_eq!(pi(&[1, -3, 2]).to_string(), "1 - 3*PI2 + 2*PI2^2");
        let complex = PiScalar::pi2().scale(&GaussianRational::from_ints(1, 2));
        assert_eq!(complex.to_string(), "(1+2*i)*PI2");
    }

    #[test]
    fn exact_division() {
        let a = pi(&[1, 2, 1]);
        let b = pi(&[1, 1]);
        assert_eq!(a.checked_div(&b), Some(b.clone()));
        assert_eq!(pi(&[1, 0, 1]).checked_div(&b), None);
        assert_eq!(pi(&[0, -6]).checked_div(&pi(&[0, 2])), Some(pi(&[-3])));
        assert_eq!(pi(&[3]).checked_div(&pi(&[0, 1])), None);
        assert_eq!(PiScalar::zero().checked_div(&b), Some(PiScalar::zero()));
        assert_eq!(b.checked_div(&PiScalar::zero()), None);
    }

    #[test]
    fn signs() {
        assert_eq!(pi(&[0, -1]).real_sign(), Some(Ordering::Less));
        assert_eq!(pi(&[-1, -2]).real_sign(), Some(Ordering::Less));
        assert_eq!(pi(&[1, -2]).real_sign(), None);
        assert_eq!(pi(&[]).real_sign(), Some(Ordering::Equal));
        assert_eq!(PiScalar::i().real_sign(), None);
    }

    #[test]
    fn pi2_multiples() {
        let q = BigRational::new(3.into(), 2.into());
        assert_eq!(PiScalar::pi2_multiple(q.clone()).as_real_pi2_multiple(), Some(q));
        assert_eq!(pi(&[1, 1]).as_real_pi2_multiple(), None);
    }
}
