use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{inverse_rational, parse_rational, ExactMatrix};
use crate::error::{Error, Result};

/// A full-rank lattice in `ℝ^n` given by the rows of an invertible rational
/// basis matrix. Lattice vectors are addressed by integer coordinates in that
/// basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    basis: ExactMatrix<BigRational>,
    gram: ExactMatrix<BigRational>,
    gram_inverse: ExactMatrix<BigRational>,
}

impl Lattice {
    pub fn new(basis: ExactMatrix<BigRational>) -> Result<Self> {
        if !basis.is_square() || basis.rows() == 0 {
            return Err(Error::Dimension(format!("lattice basis must be square, got {}x{}", basis.rows(), basis.cols())));
        }
        let gram = basis.mul(&basis.transpose())?;
        let gram_inverse = inverse_rational(&gram)?.ok_or(Error::SingularBasis)?;
        Ok(Self { basis, gram, gram_inverse })
    }

    /// `ℤ^n`.
    pub fn standard(n: usize) -> Self {
        Self::new(ExactMatrix::identity(n)).expect("identity is invertible")
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &ExactMatrix<BigRational> {
        &self.basis
    }

    /// `B·Bᵀ`.
    pub fn gram(&self) -> &ExactMatrix<BigRational> {
        &self.gram
    }

    /// Cartesian vector `cᵀB` of integer coordinates `c`.
    pub fn to_cartesian(&self, coords: &[i64]) -> Vec<BigRational> {
        (0..self.rank())
            .map(|j| {
                coords
                    .iter()
                    .enumerate()
                    .fold(BigRational::zero(), |acc, (i, &c)| acc + self.basis.get(i, j) * BigRational::from_integer(c.into()))
            })
            .collect()
    }

    /// `⟨u, v⟩ = uᵀ G v` on integer coordinates.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b != 0 {
                    acc += self.gram.get(i, j) * BigRational::from_integer(BigInt::from(a) * b);
                }
            }
        }
        acc
    }

    pub fn norm_squared(&self, v: &[i64]) -> BigRational {
        self.pairing(v, v)
    }

    /// Per-coordinate bounds `ceil(sqrt(q·(G⁻¹)_ii))` of the box containing
    /// every lattice vector of squared norm at most `q`.
    pub fn box_bounds(&self, q: &BigRational) -> Vec<i64> {
        (0..self.rank())
            .map(|i| {
                let x = q * self.gram_inverse.get(i, i);
                let bound = ceil_sqrt(&x);
                i64::try_from(bound).expect("enumeration box fits in i64")
            })
            .collect()
    }
}

/// Smallest integer `r ≥ 0` with `r² ≥ x`, for rational `x ≥ 0`.
pub fn ceil_sqrt(x: &BigRational) -> BigInt {
    if !x.is_positive() {
        return BigInt::zero();
    }
    let n = x.ceil().to_integer();
    let r = n.sqrt();
    if &r * &r < n {
        r + 1
    } else {
        r
    }
}

/// Parses `"1,0;1/2,1"`: rows separated by `;`, entries by `,`.
impl FromStr for Lattice {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let rows = text.split(';').map(|row| row.split(',').map(parse_rational).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let basis = ExactMatrix::from_rows(rows).map_err(|e| Error::Parse(format!("lattice basis {text:?}: {e}")))?;
        Self::new(basis)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            (0..self.rank()).map(|r| self.basis.row(r).iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect();
        f.write_str(&rows.join(";"))
    }
}

/// The dual lattice `{k : ⟨k, γ⟩ ∈ ℤ for all γ ∈ Γ}`, with basis the inverse
/// transpose of the basis of `Γ`.
pub fn dual_lattice(lattice: &Lattice) -> Result<Lattice> {
    let inv = inverse_rational(&lattice.basis)?.ok_or(Error::SingularBasis)?;
    Lattice::new(inv.transpose())
}

/// All vectors of `lattice` with squared norm exactly `q`, in increasing
/// coordinate order.
pub fn norm_shell(lattice: &Lattice, q: &BigRational) -> Vec<Vec<i64>> {
    if q.is_negative() {
        return Vec::new();
    }
    box_points(&lattice.box_bounds(q)).filter(|c| &lattice.norm_squared(c) == q).collect()
}

fn box_points(bounds: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total: usize = bounds.iter().map(|&b| (2 * b + 1) as usize).product();
    (0..total).map(move |mut idx| {
        let mut v = vec![0i64; bounds.len()];
        for i in (0..bounds.len()).rev() {
            let width = (2 * bounds[i] + 1) as usize;
            v[i] = (idx % width) as i64 - bounds[i];
            idx /= width;
        }
        v
    })
}

/// An eigenvalue `-q·Π` of the flat torus, `Π = 4π²`, with the size of its
/// norm shell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumValue {
    pub q: BigRational,
    pub multiplicity: usize,
}

/// Every squared norm `q ≤ bound` realized by the dual of `lattice`, sorted.
pub fn spectrum_up_to(lattice: &Lattice, bound: &BigRational) -> Result<Vec<SpectrumValue>> {
    if bound.is_negative() {
        return Err(Error::Usage("spectrum bound must be nonnegative".into()));
    }
    let dual = dual_lattice(lattice)?;
    let mut counts: BTreeMap<BigRational, usize> = BTreeMap::new();
    for c in box_points(&dual.box_bounds(bound)) {
        let q = dual.norm_squared(&c);
        if &q <= bound {
            *counts.entry(q).or_default() += 1;
        }
    }
    Ok(counts.into_iter().map(|(q, multiplicity)| SpectrumValue { q, multiplicity }).collect())
}
