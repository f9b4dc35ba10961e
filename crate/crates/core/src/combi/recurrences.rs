use num_bigint::BigInt;

use super::family::row_in;
use crate::arith::BinomialTable;
use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};

type Row = Vec<BigInt>;

fn fmt_row(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn add(a: &[BigInt], b: &[BigInt]) -> Row {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Row {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(c: i64, a: &[BigInt]) -> Row {
    let c = BigInt::from(c);
    a.iter().map(|x| &c * x).collect()
}

/// Row vectors of one table, all zero-padded to a common length.
struct Rows {
    table: BinomialTable,
    len: usize,
}

impl Rows {
    fn a(&self, n: usize, ell: usize) -> Row {
        row_in(&self.table, n, ell, self.len, true)
    }

    fn b(&self, n: usize, ell: usize) -> Row {
        row_in(&self.table, n, ell, self.len, false)
    }
}

fn push(report: &mut VerificationReport, id: String, lhs: Row, rhs: Row) {
    let pass = lhs == rhs;
    report.push(Check::new(id, fmt_row(&lhs), fmt_row(&rhs), pass));
}

/// The row relations among `a_ℓ(n)` and `b_ℓ(n)`:
///
/// * `a_0(n) = a_ℓ(n) + a_{n-ℓ}(n)`
/// * `a_{ℓ+1}(n+1) = 2(-1)^ℓ Σ_{j≤ℓ} (-1)^j a_j(n) + (-a_0(n) | a_0(n+1))`
///   by parity of `ℓ`
/// * `a_1(n+1) = a_0(n)`
/// * `a_0(2n)` as a signed combination of the rows of `A(2n-1)`
/// * `b_ℓ(n) = a_ℓ(n+1) - a_ℓ(n)`
///
/// Rows of different lengths are compared after zero-padding.
pub fn verify_recurrences(n: usize) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::Usage("recurrences need n >= 1".into()));
    }
    let rows = Rows { table: BinomialTable::new(2 * n + 1), len: n + 2 };
    let mut report = VerificationReport::new(format!("recurrences n={n}"));

    let a0 = rows.a(n, 0);
    let a0_next = rows.a(n + 1, 0);
    for ell in 0..=n {
        push(&mut report, format!("recur/{n}/symmetry/{ell}"), a0.clone(), add(&rows.a(n, ell), &rows.a(n, n - ell)));
    }

    let mut alternating = vec![BigInt::ZERO; rows.len];
    for ell in 0..=n {
        let term = rows.a(n, ell);
        alternating = if ell % 2 == 0 { add(&alternating, &term) } else { sub(&alternating, &term) };
        let sign = if ell % 2 == 0 { 2 } else { -2 };
        let tail = if ell % 2 == 0 { scale(-1, &a0) } else { a0_next.clone() };
        let rhs = add(&scale(sign, &alternating), &tail);
        push(&mut report, format!("recur/{n}/shift/{ell}"), rows.a(n + 1, ell + 1), rhs);
    }

    push(&mut report, format!("recur/{n}/first-row"), rows.a(n + 1, 1), a0.clone());

    let prev = 2 * n - 1;
    let sign = if n % 2 == 1 { 4 } else { -4 };
    let mut rhs = scale(sign, &rows.a(prev, n - 1));
    for j in 0..n.saturating_sub(1) {
        let term = scale(if j % 2 == 0 { 4 } else { -4 }, &rows.a(prev, j));
        rhs = add(&rhs, &term);
    }
    if n % 2 == 1 {
        rhs = sub(&rhs, &scale(2, &rows.a(prev, 0)));
    }
    push(&mut report, format!("recur/{n}/even-top-row"), rows.a(2 * n, 0), rhs);

    for ell in 0..=n {
        push(&mut report, format!("recur/{n}/b-difference/{ell}"), rows.b(n, ell), sub(&rows.a(n + 1, ell), &rows.a(n, ell)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_n_pass() {
        for n in 1..=12 {
            let r = verify_recurrences(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn degenerate_padding_case() {
        let r = verify_recurrences(1).unwrap();
        let c = r.checks.iter().find(|c| c.id == "recur/1/symmetry/0").unwrap();
        assert!(c.pass);
    }

    #[test]
    fn zero_rejected() {
        assert!(verify_recurrences(0).is_err());
    }
}
