use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> ExactMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::Dimension(format!("{rows}x{cols} matrix needs {} entries, got {}", rows * cols, entries.len())));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let entries = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).map(|(r, c)| f(r, c)).collect();
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }
}

impl<T> ExactMatrix<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |r, c| (0..self.cols).fold(T::zero(), |acc, k| &acc + &(self.get(r, k) * rhs.get(k, c)))))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!("{}x{} matrix against length-{} vector", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows).map(|r| self.row(r).iter().zip(v).fold(T::zero(), |acc, (a, b)| &acc + &(a * b))).collect())
    }
}

impl ExactMatrix<BigInt> {
    pub fn to_rational(&self) -> ExactMatrix<BigRational> {
        self.map(|x| BigRational::from_integer(x.clone()))
    }
}

impl<T: fmt::Display> fmt::Display for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|c| format!("{:>width$}", cells[r * self.cols + c])).collect();
            writeln!(f, "[ {} ]", line.join(" "))?;
        }
        Ok(())
    }
}

fn require_square<T: Clone>(m: &ExactMatrix<T>) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::Dimension(format!("determinant of a {}x{} matrix", m.rows(), m.cols())))
    }
}

/// Determinant by one-step fraction-free (Bareiss) elimination.
///
/// Every division in the inner loop is exact, so all intermediates stay in
/// `ℤ`; after step `k` the working entries are `(k+1)`-minors of the input.
pub fn det_bareiss(m: &ExactMatrix<BigInt>) -> Result<BigInt> {
    require_square(m)?;
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Determinant by Gaussian elimination over `ℚ`.
pub fn det_rational(m: &ExactMatrix<BigRational>) -> Result<BigRational> {
    require_square(m)?;
    let n = m.rows();
    let mut a = m.to_rows();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        let (upper, lower) = a.split_at_mut(k + 1);
        for row in lower.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let factor = &row[k] / &pivot;
            for j in k..n {
                let delta = &factor * &upper[k][j];
                row[j] -= delta;
            }
        }
    }
    Ok(det)
}

/// Inverse over `ℚ` by Gauss-Jordan elimination; `None` when singular.
pub fn inverse_rational(m: &ExactMatrix<BigRational>) -> Result<Option<ExactMatrix<BigRational>>> {
    require_square(m)?;
    let n = m.rows();
    let mut a = m.to_rows();
    let mut inv = ExactMatrix::<BigRational>::identity(n).to_rows();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ok(None);
        };
        a.swap(p, c);
        inv.swap(p, c);
        let pivot = a[c][c].recip();
        for x in a[c].iter_mut().chain(inv[c].iter_mut()) {
            *x *= &pivot;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let factor = a[r][c].clone();
            for j in 0..n {
                let da = &factor * &a[c][j];
                a[r][j] -= da;
                let di = &factor * &inv[c][j];
                inv[r][j] -= di;
            }
        }
    }
    ExactMatrix::from_rows(inv).map(Some)
}

/// Basis of the right kernel `{v : M·v = 0}` from the reduced row echelon form.
///
/// Each basis vector has a `1` in one free column and zeros in the others.
/// The list is empty iff `M` is injective.
pub fn kernel_basis(m: &ExactMatrix<BigRational>) -> Vec<Vec<BigRational>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> ExactMatrix<BigInt> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(det_bareiss(&ExactMatrix::identity(3)).unwrap(), BigInt::one());
        assert_eq!(det_bareiss(&int_matrix(&[&[2, 3], &[5, 7]])).unwrap(), BigInt::from(-1));
        assert_eq!(det_bareiss(&int_matrix(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(det_bareiss(&int_matrix(&[&[1, 2], &[2, 4]])).unwrap(), BigInt::zero());
        assert_eq!(det_bareiss(&int_matrix(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]])).unwrap(), BigInt::from(-6));
    }

    #[test]
    fn bareiss_printed_example() {
        let m = int_matrix(&[&[8, 56, 56, 8], &[7, 35, 21, 1], &[6, 26, 26, 6], &[5, 25, 31, 3]]);
        assert_eq!(det_bareiss(&m).unwrap(), BigInt::from(8192));
        assert_eq!(det_bareiss(&m.transpose()).unwrap(), BigInt::from(8192));
    }

    #[test]
    fn non_square_is_rejected() {
        let m = int_matrix(&[&[1, 2, 3]]);
        assert!(matches!(det_bareiss(&m), Err(Error::Dimension(_))));
        assert!(matches!(det_rational(&m.to_rational()), Err(Error::Dimension(_))));
        assert!(ExactMatrix::new(2, 2, vec![BigInt::one()]).is_err());
    }

    #[test]
    fn kernel_small_cases() {
        assert!(kernel_basis(&ExactMatrix::<BigRational>::identity(2)).is_empty());
        let k = kernel_basis(&int_matrix(&[&[1, 1]]).to_rational());
        assert_eq!(k, vec![vec![q(-1, 1), q(1, 1)]]);
        let k = kernel_basis(&int_matrix(&[&[1, 6, 1], &[1, 3, 0]]).to_rational());
        assert_eq!(k.len(), 1);
        // (1, -1/3, 1) up to scale
        let v = &k[0];
        let s = v[0].clone();
        assert_eq!(v.iter().map(|x| x / &s).collect::<Vec<_>>(), vec![q(1, 1), q(-1, 3), q(1, 1)]);
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let z = ExactMatrix::from_fn(2, 3, |_, _| BigRational::zero());
        assert_eq!(kernel_basis(&z).len(), 3);
    }

    #[test]
    fn inverse_round_trip() {
        let m = int_matrix(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).to_rational();
        let inv = inverse_rational(&m).unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(3));
        assert_eq!(inverse_rational(&int_matrix(&[&[1, 2], &[2, 4]]).to_rational()).unwrap(), None);
        let skew = ExactMatrix::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 1)]]).unwrap();
        let inv = inverse_rational(&skew).unwrap().unwrap();
        assert_eq!(inv.transpose().to_rows(), vec![vec![q(1, 1), q(-1, 2)], vec![q(0, 1), q(1, 1)]]);
    }

    #[test]
    fn display_aligns_columns() {
        let m = int_matrix(&[&[1, 10], &[100, 2]]);
        assert_eq!(m.to_string(), "[   1  10 ]\n[ 100   2 ]\n");
    }
}
