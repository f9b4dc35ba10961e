use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::family::{build_matrix, MatrixFamily};
use crate::arith::{kernel_basis, BinomialTable};
use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};

/// `v_m = (-1)^m C(n,m) / C(2n,2m)` for `m = 0..=n`.
pub fn kernel_vector(n: usize) -> Result<Vec<BigRational>> {
    if n == 0 {
        return Err(Error::Usage("kernel_vector needs n >= 1".into()));
    }
    let table = BinomialTable::new(2 * n);
    Ok((0..=n)
        .map(|m| {
            let v = BigRational::new(table.get(n, m as i64).clone(), table.get(2 * n, 2 * m as i64).clone());
            if m % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect())
}

fn format_vector(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Checks `Brect(2n)·v = 0` and that the kernel is exactly one-dimensional and
/// spanned by `v`.
pub fn verify_kernel(n: usize) -> Result<VerificationReport> {
    let v = kernel_vector(n)?;
    let m = build_matrix(MatrixFamily::BRect, 2 * n)?.to_rational();
    let product = m.mul_vec(&v)?;
    let mut report = VerificationReport::new(format!("kernel Brect({})", 2 * n));
    let residual_zero = product.iter().all(Zero::is_zero);
    report.push(Check::new(
        format!("kernel/{n}/annihilates"),
        "0",
        if residual_zero { "0".to_string() } else { format_vector(&product) },
        residual_zero,
    ));
    let basis = kernel_basis(&m);
    report.push(Check::equal(format!("kernel/{n}/dimension"), &1usize, &basis.len()));
    if let [b] = basis.as_slice() {
        // v_0 = 1, so the basis vector rescaled to b_0 = 1 must equal v
        let scaled: Option<Vec<BigRational>> = (!b[0].is_zero()).then(|| b.iter().map(|x| x / &b[0]).collect());
        let same = scaled.as_deref() == Some(v.as_slice());
        report.push(Check::new(
            format!("kernel/{n}/spanned-by-v"),
            format_vector(&v),
            scaled.as_deref().map_or_else(|| format_vector(b), format_vector),
            same,
        ));
    }
    Ok(report)
}

/// Sum of `(-1)^m C(n,m) Σ_k C(2m,2k) C(2n-2m, ℓ-2k)`, the integer form of
/// the kernel identity after clearing denominators. Zero for `ℓ < n`.
pub fn cleared_kernel_sum(n: usize, ell: usize) -> BigInt {
    let table = BinomialTable::new(2 * n);
    (0..=n)
        .map(|m| {
            let inner: BigInt = (0..=m).map(|k| table.get(2 * m, 2 * k as i64) * table.get(2 * n - 2 * m, ell as i64 - 2 * k as i64)).sum();
            let term = table.get(n, m as i64) * inner;
            if m % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_kernel_vectors() {
        assert_eq!(kernel_vector(1).unwrap(), vec![q(1, 1), q(-1, 1)]);
        assert_eq!(kernel_vector(2).unwrap(), vec![q(1, 1), q(-1, 3), q(1, 1)]);
        for n in 1..20 {
            assert_eq!(kernel_vector(n).unwrap()[0], q(1, 1));
        }
        assert!(kernel_vector(0).is_err());
    }

    #[test]
    fn verify_small() {
        for n in [1, 2, 10] {
            let r = verify_kernel(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn cleared_identity_vanishes_below_n() {
        for n in 1..15 {
            for ell in 0..n {
                assert!(cleared_kernel_sum(n, ell).is_zero(), "n={n} l={ell}");
            }
        }
    }
}
