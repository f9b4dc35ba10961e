use std::cmp::Ordering;

use num_rational::BigRational;

use super::algebra::{proportionality, FlatTorus, FunctionAlgebra};
use crate::arith::{ExactScalar, PiScalar};
use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};
use crate::torus::{norm_shell, Lattice};

/// Outcome of testing a single function. `lambda` and `mu` are the
/// candidates read off the leading term; the residuals
/// `Δf - λf` and `κ(f, f) - μf²` are zero iff `is_eigen`.
#[derive(Clone, Debug)]
pub struct EigenResult<A: FunctionAlgebra> {
    pub is_eigen: bool,
    pub lambda: A::Scalar,
    pub mu: A::Scalar,
    pub laplace_residual: A::Elem,
    pub kappa_residual: A::Elem,
}

/// Candidate `c` with `num ≈ c·den`, read off the leading term of `den`.
fn leading_ratio<A: FunctionAlgebra>(alg: &A, num: &A::Elem, den: &A::Elem) -> A::Scalar {
    alg.leading_pair(num, den).and_then(|(top, lead)| top.checked_div(&lead)).unwrap_or_else(A::Scalar::zero)
}

pub fn check_eigenfunction<A: FunctionAlgebra>(alg: &A, f: &A::Elem) -> Result<EigenResult<A>> {
    alg.admit(f)?;
    if alg.is_zero(f) {
        return Err(Error::ZeroFunction);
    }
    let lap = alg.laplacian(f);
    let lambda = leading_ratio(alg, &lap, f);
    let laplace_residual = alg.sub(&lap, &alg.scale(f, &lambda));

    let sq = alg.mul(f, f);
    let kappa = alg.kappa(f, f);
    let mu = leading_ratio(alg, &kappa, &sq);
    let kappa_residual = alg.sub(&kappa, &alg.scale(&sq, &mu));

    Ok(EigenResult {
        is_eigen: alg.is_zero(&laplace_residual) && alg.is_zero(&kappa_residual),
        lambda,
        mu,
        laplace_residual,
        kappa_residual,
    })
}

/// The common `(λ, μ)` of a family, if the family passed.
#[derive(Clone, Debug)]
pub struct FamilyResult<S> {
    pub lambda: S,
    pub mu: S,
    pub report: VerificationReport,
}

impl<S> FamilyResult<S> {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Checks `Δφ_i = λφ_i` for every member and `κ(φ_i, φ_j) = μφ_iφ_j` for every
/// ordered pair, with `(λ, μ)` read off the first member.
pub fn check_eigenfamily<A: FunctionAlgebra>(alg: &A, family: &[A::Elem]) -> Result<FamilyResult<A::Scalar>> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    for f in family {
        alg.admit(f)?;
        if alg.is_zero(f) {
            return Err(Error::ZeroFunction);
        }
    }
    let lambda = leading_ratio(alg, &alg.laplacian(first), first);
    let mu = leading_ratio(alg, &alg.kappa(first, first), &alg.mul(first, first));
    let mut report = VerificationReport::new(format!("eigenfamily of {} on {}", family.len(), alg.describe()));

    for (i, f) in family.iter().enumerate() {
        let residual = alg.sub(&alg.laplacian(f), &alg.scale(f, &lambda));
        report.push(Check::new(
            format!("member/{i}/laplacian"),
            format!("lambda={lambda}"),
            residual_text(alg, &residual),
            alg.is_zero(&residual),
        ));
    }
    for (i, f) in family.iter().enumerate() {
        for (j, g) in family.iter().enumerate() {
            let residual = alg.sub(&alg.kappa(f, g), &alg.scale(&alg.mul(f, g), &mu));
            report.push(Check::new(
                format!("pair/{i}/{j}/kappa"),
                format!("mu={mu}"),
                residual_text(alg, &residual),
                alg.is_zero(&residual),
            ));
        }
    }
    Ok(FamilyResult { lambda, mu, report })
}

fn residual_text<A: FunctionAlgebra>(alg: &A, residual: &A::Elem) -> String {
    if alg.is_zero(residual) {
        "residual 0".into()
    } else {
        format!("residual {residual}")
    }
}

/// `d²μ + d(λ - μ)`, the Laplace eigenvalue of `f^d`.
pub fn power_eigenvalue<S: ExactScalar>(d: u32, lambda: &S, mu: &S) -> S {
    let d = S::from_int(i64::from(d));
    d.clone() * d.clone() * mu.clone() + d * (lambda.clone() - mu.clone())
}

/// Verifies `Δ(f^d) = (d²μ + d(λ-μ)) f^d` and `κ(f^d, f^d) = d²μ f^{2d}` for
/// `1 ≤ d ≤ d_max`.
pub fn check_power_closure<A: FunctionAlgebra>(alg: &A, f: &A::Elem, d_max: u32) -> Result<VerificationReport> {
    let base = check_eigenfunction(alg, f)?;
    let mut report = VerificationReport::new(format!("power closure on {}", alg.describe()));
    report.push(Check::holds("eigenfunction", format!("(lambda, mu) = ({}, {})", base.lambda, base.mu), base.is_eigen));
    let mut power = alg.one();
    for d in 1..=d_max {
        power = alg.mul(&power, f);
        let expected = power_eigenvalue(d, &base.lambda, &base.mu);
        let computed = proportionality(alg, &alg.laplacian(&power), &power);
        report.push(Check::new(
            format!("d={d}/laplacian"),
            &expected,
            computed.as_ref().map_or_else(|| "not an eigenfunction".into(), ToString::to_string),
            computed.as_ref() == Some(&expected),
        ));
        let dd = A::Scalar::from_int(i64::from(d * d));
        let expected_mu = dd * base.mu.clone();
        let computed_mu = proportionality(alg, &alg.kappa(&power, &power), &alg.mul(&power, &power));
        report.push(Check::new(
            format!("d={d}/kappa"),
            &expected_mu,
            computed_mu.as_ref().map_or_else(|| "not proportional".into(), ToString::to_string),
            computed_mu.as_ref() == Some(&expected_mu),
        ));
    }
    Ok(report)
}

/// `λ ≤ μ < 0`, or `None` when either sign cannot be decided exactly (a
/// non-real scalar, or a Π-polynomial with mixed coefficient signs).
pub fn check_lambda_mu_order<A: FunctionAlgebra>(result: &EigenResult<A>) -> Option<bool> {
    lambda_mu_order(&result.lambda, &result.mu)
}

pub fn lambda_mu_order<S: ExactScalar>(lambda: &S, mu: &S) -> Option<bool> {
    let gap = (lambda.clone() - mu.clone()).real_sign()?;
    let mu_sign = mu.real_sign()?;
    Some(gap != Ordering::Greater && mu_sign == Ordering::Less)
}

/// For each `d ≤ d_max` tests whether `d²μ + d(λ-μ) = -qΠ` for a squared norm
/// `q` realized by the dual lattice.
pub fn check_spectrum_condition(lambda: &PiScalar, mu: &PiScalar, lattice: &Lattice, d_max: u32) -> Result<VerificationReport> {
    let torus = FlatTorus(crate::torus::Torus::new(lattice.clone())?);
    let mut report = VerificationReport::new(format!("spectral condition for ({lambda}, {mu}) on {}", torus.describe()));
    for d in 1..=d_max {
        let value = power_eigenvalue(d, lambda, mu);
        let q: Option<BigRational> = (-value.clone()).as_real_pi2_multiple();
        let witness = q.as_ref().and_then(|q| norm_shell(torus.0.dual(), q).into_iter().next());
        let computed = match (&q, &witness) {
            (Some(q), Some(k)) => format!("q={q} realized by {k:?}"),
            (Some(q), None) => format!("q={q} not a squared dual norm"),
            (None, _) => format!("{value} is not a real multiple of PI2"),
        };
        report.push(Check::new(format!("d={d}"), format!("{value} in spectrum"), computed, witness.is_some()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaussianRational;
    use crate::poly::{complex_coordinate, reduce_mod_sphere, SphereFunction};
    use crate::torus::{Torus, TrigPoly};
    use crate::verify::Sphere;

    fn z(n: usize, j: usize) -> SphereFunction {
        reduce_mod_sphere(&complex_coordinate(n, j)).unwrap()
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from(n)
    }

    fn pi(q: i64) -> PiScalar {
        PiScalar::pi2_multiple(BigRational::from_integer(q.into()))
    }

    fn z2() -> FlatTorus {
        FlatTorus(Torus::new(Lattice::standard(2)).unwrap())
    }

    #[test]
    fn coordinate_on_s3() {
        let r = check_eigenfunction(&Sphere::new(4).unwrap(), &z(2, 0)).unwrap();
        assert!(r.is_eigen);
        assert_eq!((r.lambda.clone(), r.mu.clone()), (g(-3), g(-1)));
        assert_eq!(check_lambda_mu_order(&r), Some(true));
    }

    #[test]
    fn character_on_z2() {
        let t = z2();
        let r = check_eigenfunction(&t, &TrigPoly::character(&t.0, &[1, 0])).unwrap();
        assert!(r.is_eigen);
        assert_eq!((r.lambda.clone(), r.mu.clone()), (pi(-1), pi(-1)));
        assert_eq!(check_lambda_mu_order(&r), Some(true));
    }

    #[test]
    fn affine_shift_is_not_eigen() {
        let s3 = Sphere::new(4).unwrap();
        let f = &z(2, 0) + &s3.one();
        let r = check_eigenfunction(&s3, &f).unwrap();
        assert!(!r.is_eigen);
        assert!(!r.laplace_residual.is_zero());
    }

    #[test]
    fn zero_is_rejected() {
        let s3 = Sphere::new(4).unwrap();
        assert!(matches!(check_eigenfunction(&s3, &s3.zero()), Err(Error::ZeroFunction)));
        assert!(matches!(check_eigenfamily(&s3, &[]), Err(Error::EmptyFamily)));
    }

    #[test]
    fn families() {
        let s3 = Sphere::new(4).unwrap();
        let fam = check_eigenfamily(&s3, &[z(2, 0), z(2, 1)]).unwrap();
        assert!(fam.passed(), "{}", fam.report);
        assert_eq!((fam.lambda, fam.mu), (g(-3), g(-1)));
        assert!(check_eigenfamily(&s3, &[z(2, 0)]).unwrap().passed());

        let t = z2();
        let pair = [TrigPoly::character(&t.0, &[1, 0]), TrigPoly::character(&t.0, &[0, 1])];
        let fam = check_eigenfamily(&t, &pair).unwrap();
        assert!(!fam.passed());
        let failing: Vec<_> = fam.report.failures().map(|c| c.id.clone()).collect();
        assert_eq!(failing, vec!["pair/0/1/kappa", "pair/1/0/kappa"]);
    }

    #[test]
    fn power_eigenvalues() {
        assert_eq!(power_eigenvalue(1, &g(-3), &g(-1)), g(-3));
        assert_eq!(power_eigenvalue(2, &g(-3), &g(-1)), g(-8));
        assert_eq!(power_eigenvalue(3, &pi(-1), &pi(-1)), pi(-9));
    }

    #[test]
    fn power_closure() {
        let s3 = Sphere::new(4).unwrap();
        let r = check_power_closure(&s3, &z(2, 0), 4).unwrap();
        assert!(r.passed(), "{r}");
        // harmonic degree-d rule on R^4
        for d in 1..=4u32 {
            let di = i64::from(d);
            assert_eq!(power_eigenvalue(d, &g(-3), &g(-1)), g(-di * (di + 2)));
        }
        let t = z2();
        let r = check_power_closure(&t, &TrigPoly::character(&t.0, &[1, 0]), 5).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks.iter().any(|c| c.id == "d=5/laplacian" && c.computed == pi(-25).to_string()));
    }

    #[test]
    fn order() {
        assert_eq!(lambda_mu_order(&g(-3), &g(-1)), Some(true));
        assert_eq!(lambda_mu_order(&pi(-1), &pi(-1)), Some(true));
        assert_eq!(lambda_mu_order(&g(-1), &g(-3)), Some(false));
        assert_eq!(lambda_mu_order(&g(-1), &GaussianRational::from_ints(0, 1)), None);
    }

    #[test]
    fn spectrum_condition() {
        let z2 = Lattice::standard(2);
        assert!(check_spectrum_condition(&pi(-1), &pi(-1), &z2, 10).unwrap().passed());
        assert!(check_spectrum_condition(&pi(-2), &pi(-2), &z2, 5).unwrap().passed());
        let bad = check_spectrum_condition(&pi(-3), &pi(-3), &z2, 3).unwrap();
        assert_eq!(bad.failures().next().unwrap().id, "d=1");
    }
}
