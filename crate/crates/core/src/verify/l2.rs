use rayon::prelude::*;

use super::algebra::FunctionAlgebra;
use super::eigen::check_eigenfamily;
use crate::arith::{binomial, ExactScalar};
use crate::error::Result;
use crate::report::{Check, VerificationReport};

fn scalar_int<S: ExactScalar>(n: num_bigint::BigInt) -> S {
    S::from_rational(num_rational::BigRational::from_integer(n))
}

/// `[1, f, f², …, f^max]`.
fn powers<A: FunctionAlgebra>(alg: &A, f: &A::Elem, max: u32) -> Vec<A::Elem> {
    let mut out = vec![alg.one()];
    for _ in 0..max {
        let next = alg.mul(out.last().expect("nonempty"), f);
        out.push(next);
    }
    out
}

/// L² relations between the real and imaginary parts `f = f₁ + i f₂` of an
/// eigenfunction, over all monomials `f₁^a f₂^b` of total degree at most
/// `max_degree`:
///
/// - `∫ f₁^a f₂^b = 0` when `a`, `b` are not both even;
/// - `C(2a+2b, 2a) ∫ f₁^{2a} f₂^{2b} = C(a+b, a) ∫ f₁^{2a+2b}`;
/// - `∫ f₁f₂ = 0` and `∫ f₁² = ∫ f₂²`;
/// - `∫ Re(f^a) Im(f^b) = 0`, and `∫ Re(f^a) Re(f^b) = ∫ Im(f^a) Im(f^b) = 0`
///   for `a ≠ b`, with `1 ≤ a, b` and `a + b ≤ max_degree`.
pub fn check_l2_powers<A: FunctionAlgebra>(alg: &A, f: &A::Elem, max_degree: u32) -> Result<VerificationReport> {
    let family = check_eigenfamily(alg, std::slice::from_ref(f))?;
    let mut report = VerificationReport::new(format!("L2 powers of {f} on {}", alg.describe()));
    report.push(Check::holds("eigenfunction", format!("(lambda, mu) = ({}, {})", family.lambda, family.mu), family.passed()));

    let (f1, f2) = (alg.re(f), alg.im(f));
    let p1 = powers(alg, &f1, max_degree);
    let p2 = powers(alg, &f2, max_degree);
    let pairs: Vec<(u32, u32)> = (0..=max_degree).flat_map(|t| (0..=t).map(move |b| (t - b, b))).collect();
    let integrals: Vec<A::Scalar> = pairs.par_iter().map(|&(a, b)| alg.integrate(&alg.mul(&p1[a as usize], &p2[b as usize]))).collect();
    let integral = |a: u32, b: u32| -> &A::Scalar {
        let t = a + b;
        &integrals[(t * (t + 1) / 2 + b) as usize]
    };

    for &(a, b) in &pairs {
        if a % 2 == 1 || b % 2 == 1 {
            let v = integral(a, b);
            report.push(Check::new(format!("vanish/a={a}/b={b}"), "0", v, v.is_zero()));
        }
    }
    for &(a, b) in pairs.iter().filter(|(a, b)| 2 * (a + b) <= max_degree) {
        let lhs = scalar_int::<A::Scalar>(binomial(u64::from(2 * a + 2 * b), i64::from(2 * a))) * integral(2 * a, 2 * b).clone();
        let rhs = scalar_int::<A::Scalar>(binomial(u64::from(a + b), i64::from(a))) * integral(2 * a + 2 * b, 0).clone();
        report.push(Check::equal(format!("ratio/a={a}/b={b}"), &rhs, &lhs));
    }
    if max_degree >= 2 {
        let cross = integral(1, 1);
        report.push(Check::new("orth/f1f2", "0", cross, cross.is_zero()));
        report.push(Check::equal("orth/norms", integral(2, 0), integral(0, 2)));
    }

    let fp = powers(alg, f, max_degree);
    let parts: Vec<(A::Elem, A::Elem)> = fp.iter().map(|p| (alg.re(p), alg.im(p))).collect();
    let re_im_pairs: Vec<(u32, u32)> = (1..max_degree).flat_map(|a| (1..=max_degree - a).map(move |b| (a, b))).collect();
    let re_im: Vec<Vec<Check>> = re_im_pairs
        .par_iter()
        .map(|&(a, b)| {
            let (ra, ia) = &parts[a as usize];
            let (rb, ib) = &parts[b as usize];
            let mut out = Vec::new();
            let v = alg.integrate(&alg.mul(ra, ib));
            out.push(Check::new(format!("re-im/a={a}/b={b}/re*im"), "0", &v, v.is_zero()));
            if a != b {
                let v = alg.integrate(&alg.mul(ra, rb));
                out.push(Check::new(format!("re-im/a={a}/b={b}/re*re"), "0", &v, v.is_zero()));
                let v = alg.integrate(&alg.mul(ia, ib));
                out.push(Check::new(format!("re-im/a={a}/b={b}/im*im"), "0", &v, v.is_zero()));
            }
            out
        })
        .collect();
    report.checks.extend(re_im.into_iter().flatten());
    Ok(report)
}

/// Exponent tuples `[(a_1, b_1), …, (a_n, b_n)]` with `Σ(a_j + b_j) ≤ max`, in
/// lexicographic order.
pub fn exponent_tuples(members: usize, max: u32) -> Vec<Vec<(u32, u32)>> {
    fn extend(slots: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            extend(slots - 1, budget - e, prefix, out);
            prefix.pop();
        }
    }
    let mut flat = Vec::new();
    extend(2 * members, max, &mut Vec::new(), &mut flat);
    flat.into_iter().map(|v| v.chunks(2).map(|c| (c[0], c[1])).collect()).collect()
}

fn tuple_text(t: &[(u32, u32)]) -> String {
    let parts: Vec<String> = t.iter().map(|(a, b)| format!("{a},{b}")).collect();
    parts.join(";")
}

/// For each tuple checks
/// `∫ Π g_j^{a_j} h_j^{b_j} = (-1)^{Σb_j} ∫ Π g_j^{b_j} h_j^{a_j}` where
/// `φ_j = g_j + i h_j`, and that the integral vanishes when `Σ(a_j + b_j)` is
/// odd.
pub fn check_l2_family<A: FunctionAlgebra>(alg: &A, family: &[A::Elem], tuples: &[Vec<(u32, u32)>]) -> Result<VerificationReport> {
    let fam = check_eigenfamily(alg, family)?;
    let mut report = VerificationReport::new(format!("L2 family relations of {} members on {}", family.len(), alg.describe()));
    report.push(Check::holds("eigenfamily", format!("(lambda, mu) = ({}, {})", fam.lambda, fam.mu), fam.passed()));

    let max = tuples.iter().flat_map(|t| t.iter().map(|&(a, b)| a.max(b))).max().unwrap_or(0);
    let g: Vec<Vec<A::Elem>> = family.iter().map(|f| powers(alg, &alg.re(f), max)).collect();
    let h: Vec<Vec<A::Elem>> = family.iter().map(|f| powers(alg, &alg.im(f), max)).collect();
    let monomial_integral = |t: &[(u32, u32)], swap: bool| {
        let prod = t.iter().enumerate().fold(alg.one(), |acc, (j, &(a, b))| {
            let (a, b) = if swap { (b, a) } else { (a, b) };
            alg.mul(&alg.mul(&acc, &g[j][a as usize]), &h[j][b as usize])
        });
        alg.integrate(&prod)
    };

    let checks: Vec<Vec<Check>> = tuples
        .par_iter()
        .map(|t| {
            assert_eq!(t.len(), family.len(), "one exponent pair per member");
            let id = tuple_text(t);
            let lhs = monomial_integral(t, false);
            let sign_odd = t.iter().map(|&(_, b)| b).sum::<u32>() % 2 == 1;
            let swapped = monomial_integral(t, true);
            let rhs = if sign_odd { -swapped } else { swapped };
            let mut out = vec![Check::equal(format!("swap/{id}"), &rhs, &lhs)];
            if t.iter().map(|&(a, b)| a + b).sum::<u32>() % 2 == 1 {
                out.push(Check::new(format!("odd/{id}"), "0", &lhs, lhs.is_zero()));
            }
            out
        })
        .collect();
    report.checks.extend(checks.into_iter().flatten());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{GaussianRational, PiScalar};
    use crate::poly::{complex_coordinate, reduce_mod_sphere};
    use crate::torus::{Lattice, Torus, TrigPoly};
    use crate::verify::{FlatTorus, Sphere};

    #[test]
    fn powers_on_s3() {
        let s3 = Sphere::new(4).unwrap();
        let z = reduce_mod_sphere(&complex_coordinate(2, 0)).unwrap();
        let r = check_l2_powers(&s3, &z, 6).unwrap();
        assert!(r.passed(), "{r}");
        let ratio = r.checks.iter().find(|c| c.id == "ratio/a=1/b=1").unwrap();
        // 6·∫x₁²x₂² = 6/24 and 2·∫x₁⁴ = 2/8
        assert_eq!(ratio.computed, GaussianRational::ratio(1, 4).to_string());
    }

    #[test]
    fn powers_on_z2() {
        let t = FlatTorus(Torus::new(Lattice::standard(2)).unwrap());
        let e = TrigPoly::character(&t.0, &[1, 0]);
        let r = check_l2_powers(&t, &e, 4).unwrap();
        assert!(r.passed(), "{r}");
        let ratio = r.checks.iter().find(|c| c.id == "ratio/a=1/b=1").unwrap();
        // 6·∫cos²sin² = 6/8 and 2·∫cos⁴ = 2·3/8
        assert_eq!(ratio.computed, PiScalar::constant(GaussianRational::ratio(3, 4)).to_string());
    }

    #[test]
    fn non_eigen_input_is_reported() {
        let s3 = Sphere::new(4).unwrap();
        let f = &reduce_mod_sphere(&complex_coordinate(2, 0)).unwrap() + &s3.one();
        let r = check_l2_powers(&s3, &f, 2).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn tuple_enumeration() {
        let t = exponent_tuples(2, 6);
        assert_eq!(t.len(), 210);
        assert_eq!(t[0], vec![(0, 0), (0, 0)]);
        assert_eq!(exponent_tuples(1, 1), vec![vec![(0, 0)], vec![(0, 1)], vec![(1, 0)]]);
    }

    #[test]
    fn family_on_s3() {
        let s3 = Sphere::new(4).unwrap();
        let fam: Vec<_> = (0..2).map(|j| reduce_mod_sphere(&complex_coordinate(2, j)).unwrap()).collect();
        let r = check_l2_family(&s3, &fam, &exponent_tuples(2, 4)).unwrap();
        assert!(r.passed(), "{r}");
        let same_norm = r.checks.iter().find(|c| c.id == "swap/2,0;0,0").unwrap();
        assert_eq!(same_norm.computed, GaussianRational::ratio(1, 4).to_string());
    }
}
