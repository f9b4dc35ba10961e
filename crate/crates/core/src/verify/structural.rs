use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::algebra::{FlatTorus, FunctionAlgebra, Sphere};
use crate::arith::{ExactScalar, GaussianRational, PiScalar};
use crate::poly::{reduce_mod_sphere, MultiPoly, SphereFunction};
use crate::report::{Check, VerificationReport};
use crate::torus::{Torus, TrigPoly};

/// Runs, for each seeded case `(f, g)`:
///
/// - the product rule `Δ(fg) = Δf·g + 2κ(f, g) + f·Δg`;
/// - integration by parts `∫κ(f, g) = -∫f·Δg`;
/// - `∫Δf = 0`.
pub fn structural_suite<A: FunctionAlgebra>(alg: &A, cases: &[(A::Elem, A::Elem)]) -> VerificationReport {
    let mut report = VerificationReport::new(format!("structural identities on {}", alg.describe()));
    let checks: Vec<[Check; 3]> = cases
        .par_iter()
        .enumerate()
        .map(|(i, (f, g))| {
            let lf = alg.laplacian(f);
            let lg = alg.laplacian(g);
            let kappa = alg.kappa(f, g);
            let lhs = alg.laplacian(&alg.mul(f, g));
            let two = A::Scalar::from_int(2);
            let rhs = alg.add(&alg.add(&alg.mul(&lf, g), &alg.scale(&kappa, &two)), &alg.mul(f, &lg));
            let by_parts = -alg.integrate(&alg.mul(f, &lg));
            let total = alg.integrate(&lf);
            [
                Check::equal(format!("product-rule/{i}"), &rhs, &lhs),
                Check::equal(format!("by-parts/{i}"), &by_parts, &alg.integrate(&kappa)),
                Check::new(format!("integral-of-laplacian/{i}"), "0", &total, total.is_zero()),
            ]
        })
        .collect();
    report.checks.extend(checks.into_iter().flatten());
    report
}

fn small_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    let re = GaussianRational::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    if rng.gen_bool(0.3) {
        re + GaussianRational::from_ints(0, rng.gen_range(-2..=2))
    } else {
        re
    }
}

/// A random polynomial of degree at most `max_degree` in `m` variables,
/// restricted to the sphere.
pub fn random_sphere_function(rng: &mut ChaCha8Rng, m: usize, max_degree: u32) -> SphereFunction {
    let terms = rng.gen_range(1..=4);
    let p = (0..terms).fold(MultiPoly::zero(m), |acc, _| {
        let mut e = vec![0u32; m];
        for _ in 0..rng.gen_range(0..=max_degree) {
            e[rng.gen_range(0..m)] += 1;
        }
        &acc + &MultiPoly::monomial(e, small_gaussian(rng))
    });
    reduce_mod_sphere(&p).expect("m >= 2")
}

/// A random Fourier sum with frequencies in `[-r, r]^n` and coefficients
/// `a + bΠ`.
pub fn random_trig_poly(rng: &mut ChaCha8Rng, torus: &Arc<Torus>, radius: i64) -> TrigPoly {
    let terms = rng.gen_range(1..=4);
    TrigPoly::from_terms(
        torus,
        (0..terms).map(|_| {
            let k: Vec<i64> = (0..torus.rank()).map(|_| rng.gen_range(-radius..=radius)).collect();
            let pi_part = if rng.gen_bool(0.25) { small_gaussian(rng) } else { GaussianRational::zero() };
            (k, PiScalar::from_coeffs(vec![small_gaussian(rng), pi_part]))
        }),
    )
}

/// `count` seeded sphere cases with `2 ≤ m ≤ max_dim` and degree at most
/// `max_degree`, grouped by dimension.
pub fn sphere_cases(seed: u64, count: usize, max_dim: usize, max_degree: u32) -> Vec<(Sphere, Vec<(SphereFunction, SphereFunction)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut groups: Vec<(Sphere, Vec<_>)> = (2..=max_dim).map(|m| (Sphere { m }, Vec::new())).collect();
    for _ in 0..count {
        let m = rng.gen_range(2..=max_dim);
        let f = random_sphere_function(&mut rng, m, max_degree);
        let g = random_sphere_function(&mut rng, m, max_degree);
        groups[m - 2].1.push((f, g));
    }
    groups.retain(|(_, cases)| !cases.is_empty());
    groups
}

/// `count` seeded cases on `torus`.
pub fn torus_cases(seed: u64, count: usize, torus: &Arc<Torus>) -> Vec<(TrigPoly, TrigPoly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (random_trig_poly(&mut rng, torus, 3), random_trig_poly(&mut rng, torus, 3))).collect()
}

/// Structural suites on spheres (`m ≤ 6`, degree ≤ 3) and on `torus`, with
/// `count` cases per carrier.
pub fn structural_properties(seed: u64, count: usize, torus: &Arc<Torus>) -> VerificationReport {
    let mut report = VerificationReport::new(format!("structural identities, {count} cases per carrier"));
    for (sphere, cases) in sphere_cases(seed, count, 6, 3) {
        report.absorb(&sphere.describe(), structural_suite(&sphere, &cases));
    }
    let flat = FlatTorus(Arc::clone(torus));
    report.absorb("torus", structural_suite(&flat, &torus_cases(seed, count, torus)));
    report
}
