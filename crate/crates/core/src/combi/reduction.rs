use num_bigint::BigInt;
use num_traits::One;

use super::family::{build_matrix, row_in, MatrixFamily};
use crate::arith::{det_bareiss, BinomialTable, ExactMatrix};
use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// `det A(n)` from `det A(1) = 1`, `det A(2) = 2` and the two-step induction
/// `det A(2h) = 2^h det A(2h-1)`, `det A(2h+1) = (-1)^h 2^{h-1} det A(2h)`.
fn det_a_chain(n: usize) -> BigInt {
    let mut det = BigInt::one();
    for j in 2..=n {
        let h = j / 2;
        det = if j % 2 == 0 {
            det * pow2(h)
        } else {
            let v = det * pow2(h - 1);
            if h % 2 == 1 {
                -v
            } else {
                v
            }
        };
    }
    det
}

/// Determinant by the row-reduction chain, with no elimination.
///
/// `B(n)` is reduced to `A(n)`: `det B(2h) = (-1)^h·½·det A(2h)` and
/// `det B(2h-1) = det A(2h-1)`.
pub fn det_via_row_reduction(family: MatrixFamily, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Usage("matrix parameter n must be at least 1".into()));
    }
    match family {
        MatrixFamily::A => Ok(det_a_chain(n)),
        MatrixFamily::BSquare if n % 2 == 1 => Ok(det_a_chain(n)),
        MatrixFamily::BSquare => {
            let half: BigInt = det_a_chain(n) / 2;
            Ok(if (n / 2) % 2 == 1 { -half } else { half })
        }
        MatrixFamily::BRect => Err(Error::Usage("Brect is not square; it has no determinant".into())),
    }
}

/// The matrix with rows `a_0(n+1), a_0(n), 2a_1(n), …, 2a_{⌊n/2⌋-1}(n)`, all of
/// length `⌊n/2⌋+1`; its determinant equals `det A(n+1)`. Needs `n ≥ 2`.
pub fn a_step_matrix(n: usize) -> Result<ExactMatrix<BigInt>> {
    if n < 2 {
        return Err(Error::Usage("the A step matrix needs n >= 2".into()));
    }
    let table = BinomialTable::new(n + 1);
    let len = n / 2 + 1;
    let mut rows = vec![row_in(&table, n + 1, 0, len, true), row_in(&table, n, 0, len, true)];
    for ell in 1..n / 2 {
        rows.push(row_in(&table, n, ell, len, true).into_iter().map(|x| x * 2).collect());
    }
    ExactMatrix::from_rows(rows)
}

/// The telescoped matrix with rows `a_0(n+1)-a_0(n), a_0(n)-a_1(n), …`, all of
/// length `⌊n/2⌋+1`; its determinant equals `det B(n)`.
pub fn b_step_matrix(n: usize) -> Result<ExactMatrix<BigInt>> {
    let table = BinomialTable::new(n + 1);
    let len = n / 2 + 1;
    let a = |m: usize, ell: usize| row_in(&table, m, ell, len, true);
    let diff = |x: Vec<BigInt>, y: Vec<BigInt>| x.into_iter().zip(y).map(|(p, q)| p - q).collect::<Vec<_>>();
    let mut rows = vec![diff(a(n + 1, 0), a(n, 0))];
    for ell in 0..n / 2 {
        rows.push(diff(a(n, ell), a(n, ell + 1)));
    }
    ExactMatrix::from_rows(rows)
}

/// Checks each intermediate determinant of the chain by Bareiss elimination:
/// the two step matrices, both induction ratios and the `B`-to-`A` relation.
pub fn verify_reduction_steps(n: usize) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::Usage("matrix parameter n must be at least 1".into()));
    }
    let det = |f, k| build_matrix(f, k).and_then(|m| det_bareiss(&m));
    let mut report = VerificationReport::new(format!("row reduction n={n}"));
    let a_n = det(MatrixFamily::A, n)?;
    let b_n = det(MatrixFamily::BSquare, n)?;
    if n >= 2 {
        let step = det_bareiss(&a_step_matrix(n)?)?;
        report.push(Check::equal(format!("reduce/{n}/A-step"), &det(MatrixFamily::A, n + 1)?, &step));
    }
    report.push(Check::equal(format!("reduce/{n}/B-step"), &b_n, &det_bareiss(&b_step_matrix(n)?)?));
    if n >= 2 {
        let h = n / 2;
        let a_prev = det(MatrixFamily::A, n - 1)?;
        let via = if n.is_multiple_of(2) {
            a_prev * pow2(h)
        } else {
            let v = a_prev * pow2(h - 1);
            if h % 2 == 1 {
                -v
            } else {
                v
            }
        };
        report.push(Check::equal(format!("reduce/{n}/A-induction"), &a_n, &via));
    }
    let b_from_a = if n.is_multiple_of(2) {
        let v: BigInt = &a_n / 2;
        if (n / 2) % 2 == 1 {
            -v
        } else {
            v
        }
    } else {
        a_n.clone()
    };
    report.push(Check::equal(format!("reduce/{n}/B-from-A"), &b_n, &b_from_a));
    for family in [MatrixFamily::A, MatrixFamily::BSquare] {
        let chain = det_via_row_reduction(family, n)?;
        let direct = if family == MatrixFamily::A { &a_n } else { &b_n };
        report.push(Check::equal(format!("reduce/{n}/{family}/chain"), direct, &chain));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combi::family::predicted_det;

    #[test]
    fn chain_values() {
        assert_eq!(det_via_row_reduction(MatrixFamily::A, 8).unwrap(), BigInt::from(8192));
        assert_eq!(det_via_row_reduction(MatrixFamily::BSquare, 10).unwrap(), BigInt::from(-1_048_576));
        assert_eq!(det_via_row_reduction(MatrixFamily::A, 3).unwrap(), BigInt::from(-2));
        assert_eq!(det_via_row_reduction(MatrixFamily::A, 1).unwrap(), BigInt::one());
        assert!(det_via_row_reduction(MatrixFamily::BRect, 4).is_err());
    }

    #[test]
    fn chain_matches_closed_form() {
        for n in 1..=60 {
            for f in [MatrixFamily::A, MatrixFamily::BSquare] {
                assert_eq!(det_via_row_reduction(f, n).unwrap(), predicted_det(f, n).unwrap(), "{f}({n})");
            }
        }
    }

    #[test]
    fn step_matrices_are_square() {
        assert!(a_step_matrix(1).is_err());
        for n in 2..10 {
            assert!(a_step_matrix(n).unwrap().is_square());
            assert!(b_step_matrix(n).unwrap().is_square());
        }
    }

    #[test]
    fn steps_verify() {
        for n in 1..=16 {
            let r = verify_reduction_steps(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
