//! The complete verification programme with fixed parameters, one report per
//! criterion. This is what `eigenkit full-suite` runs.

use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{det_bareiss, ExactScalar, GaussianRational, PiScalar};
use crate::combi::{
    build_matrix, det_via_row_reduction, printed_examples, verify_derivative_cases, verify_det, verify_gen_polys, verify_kernel,
    verify_printed_example, verify_recurrences, GenKind, MatrixFamily,
};
use crate::error::{Error, Result};
use crate::poly::{make_example, reduce_mod_sphere, s7_polynomial, MultiPoly, SphereExample};
use crate::report::{Check, VerificationReport};
use crate::torus::{classify_shell, norm_shell, smallest_nonzero_shell, Lattice, Torus, TrigPoly, DEFAULT_SAMPLES};
use crate::verify::{
    check_cone_correspondence, check_cone_lemma, check_eigenfamily, check_eigenfunction, check_l2_family, check_l2_powers,
    check_lambda_mu_order, check_power_closure, check_spectrum_condition, cone_parameters, conical_pairs, exponent_tuples,
    harmonic_polynomials, isotropic_polynomials, structural_properties, verify_cone_parameters, FlatTorus, FunctionAlgebra, Sphere,
};

/// Seed used when neither `--seed` nor `EIGENKIT_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Eigenvalue cited in the literature for the `S^7` cubic family.
pub const S7_CITED_LAMBDA: i64 = -15;
pub const S7_CITED_MU: i64 = -9;

/// Titles of the criteria, in order.
pub const CRITERIA: [&str; 11] = [
    "determinant identities",
    "kernel relation",
    "row-reduction fast path",
    "generating polynomials and recurrences",
    "sphere examples",
    "L2 power relations",
    "family relations",
    "flat-torus classification",
    "spectral necessary condition",
    "cone correspondence",
    "structural properties",
];

fn merge(name: &str, parts: Vec<(String, VerificationReport)>) -> VerificationReport {
    let mut out = VerificationReport::new(name);
    for (prefix, r) in parts {
        out.absorb(&prefix, r);
    }
    out
}

fn sweep<F>(name: &str, ns: impl IntoParallelIterator<Item = usize>, f: F) -> Result<VerificationReport>
where
    F: Fn(usize) -> Result<VerificationReport> + Sync + Send,
{
    let parts: Vec<VerificationReport> = ns.into_par_iter().map(f).collect::<Result<_>>()?;
    let mut out = VerificationReport::new(name);
    for r in parts {
        out.checks.extend(r.checks);
    }
    Ok(out)
}

/// Closed-form determinants of `A(n)` and `B(n)` for `n ≤ max_n`, plus the
/// printed example matrices.
pub fn determinant_identities(max_n: usize) -> Result<VerificationReport> {
    let mut out = VerificationReport::new(CRITERIA[0]);
    for family in [MatrixFamily::A, MatrixFamily::BSquare] {
        out.checks.extend(sweep("", 1..=max_n, |n| verify_det(family, n))?.checks);
    }
    for ex in printed_examples() {
        out.checks.extend(verify_printed_example(&ex)?.checks);
    }
    Ok(out)
}

pub fn kernel_relation(max_n: usize) -> Result<VerificationReport> {
    sweep(CRITERIA[1], 1..=max_n, verify_kernel)
}

/// The determinant obtained through the chain of row reductions agrees with
/// Bareiss elimination.
pub fn row_reduction(max_n: usize) -> Result<VerificationReport> {
    let mut out = VerificationReport::new(CRITERIA[2]);
    for family in [MatrixFamily::A, MatrixFamily::BSquare] {
        out.checks.extend(
            sweep("", 1..=max_n, |n| {
                let mut r = VerificationReport::new("");
                let fast = det_via_row_reduction(family, n)?;
                let slow = det_bareiss(&build_matrix(family, n)?)?;
                r.push(Check::equal(format!("chain/{family}/{n}"), &slow, &fast));
                Ok(r)
            })?
            .checks,
        );
    }
    Ok(out)
}

pub fn generating_polynomials(max_n: usize, max_deriv_n: usize) -> Result<VerificationReport> {
    let mut out = VerificationReport::new(CRITERIA[3]);
    out.checks.extend(sweep("", 1..=max_n, verify_gen_polys)?.checks);
    out.checks.extend(sweep("", 1..=max_n, verify_recurrences)?.checks);
    out.checks.extend(sweep("", 1..=max_deriv_n, |n| verify_derivative_cases(GenKind::Alpha, n))?.checks);
    Ok(out)
}

/// Laplace eigenvalue `-d(d+m-2)` of the restriction of a homogeneous
/// harmonic polynomial of degree `d` in `m` variables.
pub fn harmonic_rule(p: &MultiPoly) -> Option<i64> {
    if !p.is_homogeneous() || !p.laplacian().is_zero() {
        return None;
    }
    let d = i64::from(p.degree()?);
    Some(-d * (d + p.dim() as i64 - 2))
}

/// Verifies a built-in sphere family: the eigenfamily relations, the
/// harmonic-rule eigenvalue, the cited values, power closure up to
/// `power_max` and `λ ≤ μ < 0`.
pub fn sphere_example_report(example: &SphereExample, power_max: u32) -> Result<VerificationReport> {
    let family = make_example(example)?;
    let sphere = Sphere::new(family[0].dim())?;
    let (ambient, cited): (Vec<MultiPoly>, (i64, i64)) = match example {
        SphereExample::Coordinates(n) => {
            let n = *n;
            ((0..n).map(|j| crate::poly::complex_coordinate(n, j)).collect(), (-(2 * n as i64 - 1), -1))
        }
        SphereExample::S7 { a, b, c, d } => (vec![s7_polynomial(a, b, c, d)], (S7_CITED_LAMBDA, S7_CITED_MU)),
    };
    let fam = check_eigenfamily(&sphere, &family)?;
    let mut report = VerificationReport::new(format!("{example:?} on {}", sphere.describe()));
    let (lambda, mu) = (fam.lambda.clone(), fam.mu.clone());
    let passed = fam.passed();
    report.absorb("family", fam.report);

    let rule = ambient.iter().map(harmonic_rule).collect::<Option<Vec<_>>>();
    let rule_value = rule.as_ref().and_then(|r| r.first().copied().filter(|v| r.iter().all(|x| x == v)));
    report.push(Check::new(
        "lambda/harmonic-rule",
        rule_value.map_or_else(|| "members not harmonic of one degree".into(), |v| v.to_string()),
        &lambda,
        rule_value.map(GaussianRational::from) == Some(lambda.clone()),
    ));
    let (cited_l, cited_m) = (GaussianRational::from(cited.0), GaussianRational::from(cited.1));
    report.push(Check::equal("mu/cited", &cited_m, &mu));
    match example {
        SphereExample::Coordinates(_) => report.push(Check::equal("lambda/cited", &cited_l, &lambda)),
        SphereExample::S7 { .. } => {
            let rule_l = rule_value.map(GaussianRational::from);
            report.push(Check::new(
                "lambda/cited-discrepancy",
                format!("cited {cited_l}; harmonic rule {}", rule_l.as_ref().map_or("none".into(), ToString::to_string)),
                format!("computed {lambda}: the cited value is not of the form -k(k+6) and disagrees with the residual-free pair"),
                passed && rule_l.as_ref() == Some(&lambda) && lambda != cited_l,
            ));
        }
    }
    if power_max > 0 {
        report.absorb("powers", check_power_closure(&sphere, &family[0], power_max)?);
    }
    let order = check_eigenfunction(&sphere, &family[0])?;
    report.push(match check_lambda_mu_order(&order) {
        Some(ok) => Check::holds("order", "lambda <= mu < 0", ok),
        None => Check::new("order", "lambda <= mu < 0", "inapplicable: non-real scalars", true),
    });
    Ok(report)
}

fn random_rational(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// Seeded nonzero rational parameter tuples `(a, b, c, d)` for the `S^7` family.
pub fn s7_parameters(seed: u64, count: usize) -> Vec<SphereExample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let [a, b, c, d] = [0; 4].map(|_| random_rational(&mut rng));
        if [&a, &b, &c, &d].iter().any(|x| !x.is_zero()) {
            out.push(SphereExample::S7 { a, b, c, d });
        }
    }
    out
}

pub fn sphere_examples(seed: u64) -> Result<VerificationReport> {
    let mut parts = Vec::new();
    for n in 2..=6 {
        parts.push((format!("coordinates({n})"), sphere_example_report(&SphereExample::Coordinates(n), 6)?));
    }
    let s7: Vec<VerificationReport> = s7_parameters(seed, 20).par_iter().map(|ex| sphere_example_report(ex, 1)).collect::<Result<_>>()?;
    parts.extend(s7.into_iter().enumerate().map(|(i, r)| (format!("s7/{i}"), r)));
    Ok(merge(CRITERIA[4], parts))
}

fn z1_on_s3() -> Result<(Sphere, crate::poly::SphereFunction)> {
    Ok((Sphere::new(4)?, reduce_mod_sphere(&crate::poly::complex_coordinate(2, 0))?))
}

fn e10_on_z2() -> Result<(FlatTorus, TrigPoly)> {
    let torus = FlatTorus(Torus::new(Lattice::standard(2))?);
    let e = TrigPoly::character(&torus.0, &[1, 0]);
    Ok((torus, e))
}

pub fn l2_powers(max_degree: u32) -> Result<VerificationReport> {
    let (s3, z) = z1_on_s3()?;
    let (t, e) = e10_on_z2()?;
    let mut out = merge(
        CRITERIA[5],
        vec![("S3/z1".into(), check_l2_powers(&s3, &z, max_degree)?), ("Z2/e(1,0)".into(), check_l2_powers(&t, &e, max_degree)?)],
    );
    let x = |i| crate::poly::SphereFunction::coordinate(4, i).expect("m = 4");
    let (x1, x2) = (x(0), x(1));
    let num = s3.integrate(&(&(&x1 * &x1) * &(&x2 * &x2)));
    let den = s3.integrate(&x1.pow(4));
    let ratio = num.checked_div(&den);
    out.push(Check::new(
        "spot/x1^2x2^2-over-x1^4",
        "1/3",
        ratio.map_or("undefined".into(), |r| r.to_string()),
        num.checked_div(&den) == Some(GaussianRational::ratio(1, 3)),
    ));
    Ok(out)
}

pub fn family_relations(max_total: u32) -> Result<VerificationReport> {
    let s3 = Sphere::new(4)?;
    let fam = make_example(&SphereExample::Coordinates(2))?;
    let r = check_l2_family(&s3, &fam, &exponent_tuples(2, max_total))?;
    Ok(merge(CRITERIA[6], vec![("S3/{z1,z2}".into(), r)]))
}

/// Classification of one shell, plus the requirement that exactly the
/// one-dimensional spans survive.
pub fn classification_report(lattice: &Lattice, q: &BigRational, seed: u64, samples: usize) -> Result<VerificationReport> {
    let c = classify_shell(lattice, q, seed, samples)?;
    let mut report = c.report.clone();
    let shown: Vec<String> = c.spans.iter().map(|s| format!("{s:?}")).collect();
    report.push(Check::new(
        format!("shell/{q}/spans"),
        format!("{} one-dimensional spans", c.shell.len()),
        format!("{} spans: {}", c.spans.len(), shown.join(" ")),
        c.spans.len() == c.shell.len() && c.spans.iter().all(|s| s.len() == 1),
    ));
    Ok(report)
}

pub fn torus_classification(seed: u64) -> Result<VerificationReport> {
    let z2 = Lattice::standard(2);
    let skew: Lattice = "1,0;1/2,1".parse()?;
    let q_skew = smallest_nonzero_shell(&skew)?;
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());
    Ok(merge(
        CRITERIA[7],
        vec![
            ("Z2".into(), classification_report(&z2, &one, seed, DEFAULT_SAMPLES)?),
            ("Z2".into(), classification_report(&z2, &two, seed, DEFAULT_SAMPLES)?),
            (format!("skew[{skew}]"), classification_report(&skew, &q_skew, seed, DEFAULT_SAMPLES)?),
        ],
    ))
}

pub fn spectral_condition(d_max: u32) -> Result<VerificationReport> {
    let z2 = Lattice::standard(2);
    let pi = |q: i64| PiScalar::pi2_multiple(BigRational::from_integer(q.into()));
    Ok(merge(
        CRITERIA[8],
        vec![
            ("(-PI2,-PI2)".into(), check_spectrum_condition(&pi(-1), &pi(-1), &z2, d_max)?),
            ("(-2PI2,-2PI2)".into(), check_spectrum_condition(&pi(-2), &pi(-2), &z2, d_max)?),
        ],
    ))
}

/// Cone lemma on seeded harmonic polynomials of degree ≤ `max_degree` in
/// `2..=max_dim` variables, the correspondence on seeded isotropic powers,
/// seeded conical round trips and the sphere family parameters.
pub fn cone_correspondence(seed: u64, max_dim: usize, max_degree: u32) -> Result<VerificationReport> {
    let harmonic = harmonic_polynomials(seed, max_dim, max_degree, 2);
    let lemma: Vec<VerificationReport> = harmonic.par_iter().filter(|p| !p.is_zero()).map(check_cone_lemma).collect::<Result<_>>()?;
    let isotropic = isotropic_polynomials(seed, max_dim, max_degree, 1);
    let corr: Vec<VerificationReport> = isotropic.par_iter().map(check_cone_correspondence).collect::<Result<_>>()?;
    let mut parts: Vec<(String, VerificationReport)> = Vec::new();
    for (i, (p, r)) in harmonic.iter().zip(lemma).enumerate() {
        let mut r = r;
        r.push(Check::holds("harmonic", "Delta P = 0", p.laplacian().is_zero()));
        parts.push((format!("lemma/{i}"), r));
    }
    parts.extend(corr.into_iter().enumerate().map(|(i, r)| (format!("correspondence/{i}"), r)));
    for (i, (l, u, m)) in conical_pairs(seed, 50).into_iter().enumerate() {
        parts.push((format!("pair/{i}"), verify_cone_parameters(&l, &u, m)));
    }
    let mut family = VerificationReport::new("sphere family");
    for n in 2..=6usize {
        let l = BigRational::from_integer((-(2 * n as i64 - 1)).into());
        let u = BigRational::from_integer((-1).into());
        let p = cone_parameters(&l, &u, 2 * n - 1);
        let got = (p.s.clone(), p.d.clone());
        let one = Some(BigRational::from_integer(1.into()));
        family.push(Check::new(format!("n={n}"), "s=1, d=1", format!("s={}, d={}", show(&got.0), show(&got.1)), got == (one.clone(), one)));
    }
    parts.push(("family".into(), family));
    Ok(merge(CRITERIA[9], parts))
}

fn show(x: &Option<BigRational>) -> String {
    x.as_ref().map_or_else(|| "none".into(), ToString::to_string)
}

/// `λ ≤ μ < 0` over the example corpus: the sphere families and the
/// characters of the first shells of `ℤ²` and the skew lattice.
pub fn lambda_mu_corpus(seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("lambda <= mu < 0 over the example corpus");
    let mut examples: Vec<SphereExample> = (2..=6).map(SphereExample::Coordinates).collect();
    examples.extend(s7_parameters(seed, 20));
    for (i, ex) in examples.iter().enumerate() {
        let f = &make_example(ex)?[0];
        let r = check_eigenfunction(&Sphere::new(f.dim())?, f)?;
        if r.is_eigen {
            let ok = check_lambda_mu_order(&r);
            report.push(Check::new(format!("sphere/{i}"), "lambda <= mu < 0", format!("({}, {})", r.lambda, r.mu), ok == Some(true)));
        }
    }
    for basis in ["1,0;0,1", "1,0;1/2,1"] {
        let lattice: Lattice = basis.parse()?;
        let torus = FlatTorus(Torus::new(lattice)?);
        for q in 1..=5 {
            let q = BigRational::from_integer(q.into());
            for k in norm_shell(torus.0.dual(), &q) {
                let r = check_eigenfunction(&torus, &TrigPoly::character(&torus.0, &k))?;
                let ok = r.is_eigen && check_lambda_mu_order(&r) == Some(true);
                report.push(Check::new(format!("torus[{basis}]/{k:?}"), "lambda <= mu < 0", format!("({}, {})", r.lambda, r.mu), ok));
            }
        }
    }
    Ok(report)
}

pub fn structural(seed: u64, cases: usize) -> Result<VerificationReport> {
    let z2 = Torus::new(Lattice::standard(2))?;
    let skew = Torus::new("1,0;1/2,1".parse()?)?;
    Ok(merge(
        CRITERIA[10],
        vec![
            ("Z2".into(), structural_properties(seed, cases, &z2)),
            ("skew".into(), structural_properties_torus_only(seed, cases, &skew)),
            ("corpus".into(), lambda_mu_corpus(seed)?),
        ],
    ))
}

fn structural_properties_torus_only(seed: u64, cases: usize, torus: &Arc<Torus>) -> VerificationReport {
    let flat = FlatTorus(Arc::clone(torus));
    crate::verify::structural_suite(&flat, &crate::verify::torus_cases(seed ^ 0x9e37, cases, torus))
}

/// Runs criterion `k` (1-based).
pub fn run_criterion(k: usize, seed: u64) -> Result<VerificationReport> {
    match k {
        1 => determinant_identities(160),
        2 => kernel_relation(80),
        3 => row_reduction(40),
        4 => generating_polynomials(60, 20),
        5 => sphere_examples(seed),
        6 => l2_powers(10),
        7 => family_relations(6),
        8 => torus_classification(seed),
        9 => spectral_condition(10),
        10 => cone_correspondence(seed, 6, 4),
        11 => structural(seed, 200),
        _ => Err(Error::Usage(format!("criteria are numbered 1..=11, got {k}"))),
    }
}

pub fn full_suite(seed: u64) -> Result<Vec<VerificationReport>> {
    (1..=CRITERIA.len()).map(|k| run_criterion(k, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps() {
        assert!(determinant_identities(12).unwrap().passed());
        assert!(kernel_relation(6).unwrap().passed());
        assert!(row_reduction(8).unwrap().passed());
        assert!(generating_polynomials(6, 6).unwrap().passed());
    }

    #[test]
    fn harmonic_rule_values() {
        assert_eq!(harmonic_rule(&crate::poly::complex_coordinate(2, 0)), Some(-3));
        assert_eq!(harmonic_rule(&MultiPoly::var(3, 0).pow(2)), None);
        let g = GaussianRational::from;
        assert_eq!(harmonic_rule(&s7_polynomial(&g(1), &g(0), &g(0), &g(0))), Some(-27));
    }

    #[test]
    fn coordinates_example() {
        let r = sphere_example_report(&SphereExample::Coordinates(2), 3).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn s7_example_reports_the_discrepancy() {
        let g = GaussianRational::from;
        let r = sphere_example_report(&SphereExample::S7 { a: g(1), b: g(0), c: g(0), d: g(0) }, 0).unwrap();
        assert!(r.passed(), "{r}");
        let note = r.checks.iter().find(|c| c.id == "lambda/cited-discrepancy").unwrap();
        assert!(note.computed.starts_with("computed -27"));
    }

    #[test]
    fn small_cone_run() {
        let r = cone_correspondence(1, 4, 3).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(12, 0).is_err());
    }
}
