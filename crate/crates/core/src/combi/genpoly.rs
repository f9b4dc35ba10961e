use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::family::{a_entry, b_entry, build_matrix, MatrixFamily};
use super::intpoly::IntPoly;
use crate::arith::{binomial, det_rational, ExactMatrix};
use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};

/// Generating polynomials of the rows of the binomial matrices.
///
/// * `P` and `Alpha`: `4 Σ_m a_ℓ(n)_m t^{2m+1}`. They are the same series;
///   `P` is compared against the product form, `Alpha` against the sum form.
/// * `Beta`: `4 Σ_m b_ℓ(n)_m t^{2m}`, where `n` is the exponent, so rows of
///   `Brect(2h)` use `n = 2h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    P,
    Alpha,
    Beta,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::P => "P",
            GenKind::Alpha => "alpha",
            GenKind::Beta => "beta",
        })
    }
}

impl FromStr for GenKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(Self::P),
            "alpha" => Ok(Self::Alpha),
            "beta" => Ok(Self::Beta),
            _ => Err(Error::Parse(format!("unknown polynomial kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPolyPair {
    pub definition: IntPoly,
    pub closed_form: IntPoly,
    pub equal: bool,
}

fn plus(e: usize) -> IntPoly {
    IntPoly::one_plus(1).pow(e as u32)
}

fn minus(e: usize) -> IntPoly {
    IntPoly::one_plus(-1).pow(e as u32)
}

/// `4·Σ entry·t^…` as the definition, against the `(1±t)` closed form.
pub fn gen_poly(kind: GenKind, ell: usize, n: usize) -> Result<GenPolyPair> {
    if ell > n {
        return Err(Error::Usage(format!("row index {ell} exceeds n = {n}")));
    }
    let four = BigInt::from(4);
    let mut coeffs = vec![BigInt::zero(); n + 2];
    for m in 0..=n / 2 {
        match kind {
            GenKind::P | GenKind::Alpha => coeffs[2 * m + 1] = &four * a_entry(n, ell, m),
            GenKind::Beta => coeffs[2 * m] = &four * b_entry(n, ell, m),
        }
    }
    let definition = IntPoly::from_coeffs(coeffs);
    let rest = n - ell;
    let closed_form = match kind {
        GenKind::P => &(&plus(ell) + &minus(ell)) * &(&plus(rest) - &minus(rest)),
        GenKind::Alpha => &(&(&plus(n) - &minus(n)) - &(&plus(ell) * &minus(rest))) + &(&plus(rest) * &minus(ell)),
        GenKind::Beta => &(&(&plus(n) + &minus(n)) + &(&plus(ell) * &minus(rest))) + &(&plus(rest) * &minus(ell)),
    };
    let equal = definition == closed_form;
    Ok(GenPolyPair { definition, closed_form, equal })
}

/// Checks every row `0..=n` of every kind.
pub fn verify_gen_polys(n: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("generating polynomials n={n}"));
    for kind in [GenKind::P, GenKind::Alpha, GenKind::Beta] {
        for ell in 0..=n {
            let pair = gen_poly(kind, ell, n)?;
            report.push(Check::new(format!("genpoly/{kind}/{n}/{ell}"), &pair.closed_form, &pair.definition, pair.equal));
        }
    }
    Ok(report)
}

/// `n!/(n-k)!`.
pub fn falling(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (n - k + 1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Which clause of the derivative lemma applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeRule {
    /// `k < ℓ`: `N!/(N-k)!·2^{N-k}`.
    BelowRow,
    /// `k = ℓ`: `(N!/(N-k)! + (-1)^k k!)·2^{N-k}`.
    OnRow,
    /// `ℓ = 0, k < N`: `N!/(N-k)!·2^{N-k+1}`.
    RowZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeCase {
    pub computed: BigInt,
    pub rule: Option<DerivativeRule>,
    pub predicted: Option<BigInt>,
}

impl DerivativeCase {
    /// `None` when no clause applies.
    pub fn matches(&self) -> Option<bool> {
        self.predicted.as_ref().map(|p| p == &self.computed)
    }
}

/// Admissible rows: `0..=⌊(n-1)/2⌋` for alpha, `0..n/2` for beta with even `n`.
pub fn derivative_rows(kind: GenKind, n: usize) -> Result<std::ops::Range<usize>> {
    match kind {
        GenKind::Alpha | GenKind::P if n >= 1 => Ok(0..n.div_ceil(2)),
        GenKind::Beta if n >= 2 && n.is_multiple_of(2) => Ok(0..n / 2),
        _ => Err(Error::Usage(format!("no derivative rows for {kind} with n = {n}"))),
    }
}

/// The `k`-th derivative at `t = 1` of the closed form of `kind` row `ℓ`,
/// against the lemma's prediction.
pub fn derivative_case(kind: GenKind, n: usize, ell: usize, k: usize) -> Result<DerivativeCase> {
    if !derivative_rows(kind, n)?.contains(&ell) {
        return Err(Error::Usage(format!("row {ell} outside the admissible range for {kind}({n})")));
    }
    let closed = gen_poly(kind, ell, n)?.closed_form;
    let computed = closed.nth_derivative(k).eval(&BigInt::one());
    let pow2 = |e: usize| BigInt::one() << e;
    let (rule, predicted) = if ell == 0 && k < n {
        (Some(DerivativeRule::RowZero), Some(falling(n, k) * pow2(n - k + 1)))
    } else if k < ell {
        (Some(DerivativeRule::BelowRow), Some(falling(n, k) * pow2(n - k)))
    } else if k == ell && k < n {
        let sign_fact = if k.is_multiple_of(2) { falling(k, k) } else { -falling(k, k) };
        (Some(DerivativeRule::OnRow), Some((falling(n, k) + sign_fact) * pow2(n - k)))
    } else {
        (None, None)
    };
    Ok(DerivativeCase { computed, rule, predicted })
}

pub fn alpha_derivative_case(n: usize, ell: usize, k: usize) -> Result<DerivativeCase> {
    derivative_case(GenKind::Alpha, n, ell, k)
}

/// Every in-guard `(ℓ, k)` with `k ≤ n` for one kind and `n`.
pub fn verify_derivative_cases(kind: GenKind, n: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("derivative cases {kind}({n})"));
    for ell in derivative_rows(kind, n)? {
        for k in 0..=n {
            let case = derivative_case(kind, n, ell, k)?;
            if let Some(p) = &case.predicted {
                report.push(Check::equal(format!("deriv/{kind}/{n}/{ell}/{k}"), p, &case.computed));
            }
        }
    }
    Ok(report)
}

/// The vectors `X^k = (N-k)!/(N!·2^{N-k}) · (d^k/dt^k row_ℓ(1))_ℓ`, one per
/// admissible `k`. `kind` is `Alpha` (rows of `A(n)`) or `Beta` (rows of
/// `Brect(n)`, `n` even).
pub fn witnesses(kind: GenKind, n: usize) -> Result<Vec<Vec<BigRational>>> {
    let rows = derivative_rows(kind, n)?;
    rows.clone()
        .map(|k| {
            let scale = BigRational::new(BigInt::one(), falling(n, k) << (n - k));
            rows.clone()
                .map(|ell| {
                    let d = derivative_case(kind, n, ell, k)?.computed;
                    Ok(BigRational::from_integer(d) * &scale)
                })
                .collect()
        })
        .collect()
}

pub fn surjectivity_witnesses(n: usize) -> Result<Vec<Vec<BigRational>>> {
    if n < 2 {
        return Err(Error::Usage("surjectivity witnesses need n >= 2".into()));
    }
    witnesses(GenKind::Alpha, n)
}

/// Checks the witness structure, that each `X^k` is `M·w` for the explicit
/// preimage `w_m = c·4·(2m+1)_k` (`(2m)_k` for beta), and that the witnesses are
/// linearly independent.
pub fn verify_surjectivity(kind: GenKind, n: usize) -> Result<VerificationReport> {
    let xs = witnesses(kind, n)?;
    let matrix = match kind {
        GenKind::Beta => build_matrix(MatrixFamily::BRect, n)?,
        _ => build_matrix(MatrixFamily::A, n)?,
    }
    .to_rational();
    let q = |v: BigInt| BigRational::from_integer(v);
    let one = BigRational::one();
    let mut report = VerificationReport::new(format!("surjectivity witnesses {kind}({n})"));
    for (k, x) in xs.iter().enumerate() {
        let id = |what: &str| format!("surj/{kind}/{n}/X{k}/{what}");
        for (ell, c) in x.iter().enumerate().skip(k + 1) {
            report.push(Check::equal(id(&format!("e{ell}")), &one, c));
        }
        let sign = if k % 2 == 0 { one.clone() } else { -one.clone() };
        let expected_k = if k == 0 { q(2.into()) } else { &one + sign / q(binomial(n as u64, k as i64)) };
        report.push(Check::equal(id("diagonal"), &expected_k, &x[k]));
        if k >= 1 {
            report.push(Check::equal(id("e0"), &q(2.into()), &x[0]));
        }
        if let Some(next) = xs.get(k + 1) {
            let diff: Vec<BigRational> = x.iter().zip(next).map(|(a, b)| a - b).collect();
            let sign = if k % 2 == 0 { one.clone() } else { -one.clone() };
            let expected = sign / q(binomial(n as u64, k as i64 + 1));
            report.push(Check::equal(id("step"), &expected, &diff[k + 1]));
            let tail_zero = diff[k + 2..].iter().all(Zero::is_zero);
            report.push(Check::holds(id("step-tail"), "X^k - X^{k+1} vanishes past k+1", tail_zero));
        }
        let c = BigRational::new(BigInt::one(), falling(n, k) << (n - k));
        let shift = usize::from(kind != GenKind::Beta);
        let preimage: Vec<BigRational> = (0..matrix.cols()).map(|m| &c * q(BigInt::from(4) * falling(2 * m + shift, k))).collect();
        let image = matrix.mul_vec(&preimage)?;
        report.push(Check::holds(id("in-range"), "X^k = M * w", &image == x));
    }
    let det = det_rational(&ExactMatrix::from_rows(xs)?)?;
    report.push(Check::new(format!("surj/{kind}/{n}/independent"), "det != 0", &det, !det.is_zero()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_generating_polynomials() {
        let pair = gen_poly(GenKind::P, 0, 1).unwrap();
        assert!(pair.equal);
        assert_eq!(pair.definition, p(&[0, 4]));
        let pair = gen_poly(GenKind::Alpha, 0, 2).unwrap();
        assert!(pair.equal);
        assert_eq!(pair.definition, p(&[0, 8]));
        let pair = gen_poly(GenKind::Beta, 0, 2).unwrap();
        assert!(pair.equal);
        assert_eq!(pair.definition, p(&[4, 0, 4]));
    }

    #[test]
    fn all_kinds_agree_small_n() {
        for n in 0..12 {
            assert!(verify_gen_polys(n).unwrap().passed(), "n={n}");
        }
        assert!(gen_poly(GenKind::P, 3, 2).is_err());
    }

    #[test]
    fn derivative_examples() {
        let c = alpha_derivative_case(3, 1, 0).unwrap();
        assert_eq!((c.computed.clone(), c.rule), (BigInt::from(8), Some(DerivativeRule::BelowRow)));
        assert_eq!(c.matches(), Some(true));
        let c = alpha_derivative_case(3, 1, 1).unwrap();
        assert_eq!((c.computed.clone(), c.rule), (BigInt::from(8), Some(DerivativeRule::OnRow)));
        assert_eq!(c.matches(), Some(true));
        let c = alpha_derivative_case(2, 0, 1).unwrap();
        assert_eq!((c.computed.clone(), c.rule), (BigInt::from(8), Some(DerivativeRule::RowZero)));
        assert_eq!(c.matches(), Some(true));
        assert_eq!(alpha_derivative_case(3, 1, 2).unwrap().predicted, None);
        assert!(alpha_derivative_case(3, 2, 0).is_err());
    }

    #[test]
    fn derivative_cases_up_to_12() {
        for n in 1..=12 {
            assert!(verify_derivative_cases(GenKind::Alpha, n).unwrap().passed());
            if n % 2 == 0 {
                assert!(verify_derivative_cases(GenKind::Beta, n).unwrap().passed());
            }
        }
    }

    #[test]
    fn witness_shape_n3() {
        let xs = surjectivity_witnesses(3).unwrap();
        assert_eq!(xs[1], vec![q(2, 1), q(2, 3)]);
        assert_eq!(xs[0][0], q(2, 1));
        assert_eq!(xs[0][1], q(1, 1));
        assert!(surjectivity_witnesses(1).is_err());
    }

    #[test]
    fn witnesses_verify() {
        for n in 2..=14 {
            let r = verify_surjectivity(GenKind::Alpha, n).unwrap();
            assert!(r.passed(), "{r}");
            if n % 2 == 0 {
                let r = verify_surjectivity(GenKind::Beta, n).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }
}
