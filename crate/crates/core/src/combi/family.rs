use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{binomial, det_bareiss, BinomialTable, ExactMatrix};
use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};

/// Which binomial matrix to build.
///
/// * `A(n)` is square of size `⌊(n+1)/2⌋`, rows `a_0(n) … a_{⌊(n-1)/2⌋}(n)`.
/// * `BSquare(n)` is square of size `⌊n/2⌋+1`, rows `b_0(n) … b_{⌊n/2⌋}(n)`.
/// * `BRect(2h)` is `h × (h+1)`, rows `b_0(2h) … b_{h-1}(2h)`; it carries the
///   one-dimensional kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixFamily {
    A,
    BSquare,
    BRect,
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixFamily::A => "A",
            MatrixFamily::BSquare => "B",
            MatrixFamily::BRect => "Brect",
        })
    }
}

impl FromStr for MatrixFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::BSquare),
            "Brect" | "brect" | "B_rect" => Ok(Self::BRect),
            _ => Err(Error::Parse(format!("unknown matrix family {s:?} (expected A, B or Brect)"))),
        }
    }
}

fn entry_with(choose: impl Fn(usize, i64) -> BigInt, n: usize, row: usize, col: usize, odd: bool) -> BigInt {
    let rest = n - row;
    let shift = i64::from(odd);
    (0..=col)
        .map(|k| {
            let upper = choose(row, 2 * k as i64);
            if upper == BigInt::ZERO {
                return BigInt::ZERO;
            }
            upper * choose(rest, 2 * (col - k) as i64 + shift)
        })
        .sum()
}

/// `a_ℓ(n)_m = Σ_k C(ℓ,2k)·C(n-ℓ, 2(m-k)+1)`.
///
/// Out-of-range columns give zero, which is the zero-padding convention used
/// when rows of different lengths are compared.
pub fn a_entry(n: usize, row: usize, col: usize) -> BigInt {
    assert!(row <= n, "a_entry requires row <= n");
    entry_with(|a, b| binomial(a as u64, b), n, row, col, true)
}

/// `b_ℓ(n)_m = Σ_k C(ℓ,2k)·C(n-ℓ, 2(m-k))`.
pub fn b_entry(n: usize, row: usize, col: usize) -> BigInt {
    assert!(row <= n, "b_entry requires row <= n");
    entry_with(|a, b| binomial(a as u64, b), n, row, col, false)
}

/// The row vector `a_ℓ(n)` zero-padded (or truncated) to `len`.
pub fn a_row(n: usize, row: usize, len: usize) -> Vec<BigInt> {
    row_in(&BinomialTable::new(n), n, row, len, true)
}

/// The row vector `b_ℓ(n)` zero-padded (or truncated) to `len`.
pub fn b_row(n: usize, row: usize, len: usize) -> Vec<BigInt> {
    row_in(&BinomialTable::new(n), n, row, len, false)
}

/// Row `a_ℓ(n)` (`odd`) or `b_ℓ(n)` of length `len`, from a shared table.
pub(crate) fn row_in(table: &BinomialTable, n: usize, row: usize, len: usize, odd: bool) -> Vec<BigInt> {
    (0..len).map(|m| entry_with(|a, b| table.get(a, b).clone(), n, row, m, odd)).collect()
}

/// `(rows, cols)` of `family(n)`.
pub fn dimensions(family: MatrixFamily, n: usize) -> Result<(usize, usize)> {
    if n == 0 {
        return Err(Error::Usage("matrix parameter n must be at least 1".into()));
    }
    match family {
        MatrixFamily::A => Ok((n.div_ceil(2), n.div_ceil(2))),
        MatrixFamily::BSquare => Ok((n / 2 + 1, n / 2 + 1)),
        MatrixFamily::BRect if n.is_multiple_of(2) => Ok((n / 2, n / 2 + 1)),
        MatrixFamily::BRect => Err(Error::Usage(format!("Brect(n) needs even n, got {n}"))),
    }
}

pub fn build_matrix(family: MatrixFamily, n: usize) -> Result<ExactMatrix<BigInt>> {
    let (rows, cols) = dimensions(family, n)?;
    let table = BinomialTable::new(n);
    let odd = family == MatrixFamily::A;
    Ok(ExactMatrix::from_fn(rows, cols, |r, c| entry_with(|a, b| table.get(a, b).clone(), n, r, c, odd)))
}

fn signed_power_of_two(negative: bool, exp: usize) -> BigInt {
    let v = BigInt::one() << exp;
    if negative {
        -v
    } else {
        v
    }
}

/// Closed-form determinant of `A(n)` or `B(n)`.
pub fn predicted_det(family: MatrixFamily, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Usage("matrix parameter n must be at least 1".into()));
    }
    let h = n / 2;
    let odd_sign = (h * (h + 1) / 2) % 2 == 1;
    Ok(match (family, n.is_multiple_of(2)) {
        (MatrixFamily::A, true) => signed_power_of_two((h * (h - 1) / 2) % 2 == 1, h * (h - 1) + 1),
        (MatrixFamily::A, false) => signed_power_of_two(odd_sign, h * h),
        (MatrixFamily::BSquare, true) => signed_power_of_two(odd_sign, h * (h - 1)),
        (MatrixFamily::BSquare, false) => signed_power_of_two(odd_sign, h * h),
        (MatrixFamily::BRect, _) => {
            return Err(Error::Usage("Brect is not square; it has no determinant".into()));
        }
    })
}

/// Compares the Bareiss determinant of `family(n)` against the closed form.
pub fn verify_det(family: MatrixFamily, n: usize) -> Result<VerificationReport> {
    let predicted = predicted_det(family, n)?;
    let computed = det_bareiss(&build_matrix(family, n)?)?;
    let mut report = VerificationReport::new(format!("det {family}({n})"));
    report.push(Check::equal(format!("det/{family}/{n}"), &predicted, &computed));
    Ok(report)
}

/// One of the four worked examples printed alongside the determinant theorem.
#[derive(Clone, Debug)]
pub struct PrintedExample {
    pub family: MatrixFamily,
    pub n: usize,
    /// Rows exactly as printed.
    pub rows: Vec<Vec<i64>>,
    /// Whether the printed matrix is the transpose of the `(ℓ, m)` layout.
    pub transposed: bool,
    pub determinant: i64,
}

/// The printed example matrices, one per determinant formula.
pub fn printed_examples() -> Vec<PrintedExample> {
    vec![
        PrintedExample {
            family: MatrixFamily::A,
            n: 8,
            rows: vec![vec![8, 56, 56, 8], vec![7, 35, 21, 1], vec![6, 26, 26, 6], vec![5, 25, 31, 3]],
            transposed: false,
            determinant: 8192,
        },
        PrintedExample {
            family: MatrixFamily::A,
            n: 7,
            rows: vec![vec![7, 35, 21, 1], vec![6, 20, 6, 0], vec![5, 15, 11, 1], vec![4, 16, 12, 0]],
            transposed: false,
            determinant: 512,
        },
        PrintedExample {
            family: MatrixFamily::BSquare,
            n: 10,
            rows: vec![
                vec![1, 1, 1, 1, 1, 1],
                vec![45, 36, 29, 24, 21, 20],
                vec![210, 126, 98, 98, 106, 110],
                vec![210, 84, 98, 112, 106, 100],
                vec![45, 9, 29, 21, 21, 25],
                vec![1, 0, 1, 0, 1, 0],
            ],
            transposed: true,
            determinant: -1_048_576,
        },
        PrintedExample {
            family: MatrixFamily::BSquare,
            n: 9,
            rows: vec![
                vec![1, 36, 126, 84, 9],
                vec![1, 28, 70, 28, 1],
                vec![1, 22, 56, 42, 7],
                vec![1, 18, 60, 46, 3],
                vec![1, 16, 66, 40, 5],
            ],
            transposed: false,
            determinant: 65_536,
        },
    ]
}

/// Checks a printed example entry-wise against the built matrix (through the
/// transpose when the example is printed that way) and its determinant, both
/// as printed and after transposing.
pub fn verify_printed_example(example: &PrintedExample) -> Result<VerificationReport> {
    let tag = format!("{}({})", example.family, example.n);
    let printed = ExactMatrix::from_rows(example.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())?;
    let built = build_matrix(example.family, example.n)?;
    let oriented = if example.transposed { built.transpose() } else { built };
    let expected = BigInt::from(example.determinant);
    let mut report = VerificationReport::new(format!("printed example {tag}"));
    report.push(Check::new(
        format!("example/{tag}/entries"),
        if example.transposed { "printed = transpose of (l,m) layout" } else { "printed = (l,m) layout" },
        if printed == oriented { "match" } else { "mismatch" },
        printed == oriented,
    ));
    report.push(Check::equal(format!("example/{tag}/det"), &expected, &det_bareiss(&printed)?));
    report.push(Check::equal(format!("example/{tag}/det-transpose"), &expected, &det_bareiss(&printed.transpose())?));
    report.push(Check::equal(format!("example/{tag}/closed-form"), &expected, &predicted_det(example.family, example.n)?));
    Ok(report)
}
