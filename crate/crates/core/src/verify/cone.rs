use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::Sphere;
use super::eigen::check_eigenfunction;
use crate::arith::GaussianRational;
use crate::error::{Error, Result};
use crate::poly::{reduce_mod_sphere, sphere_kappa, sphere_laplacian, MultiPoly, SphereFunction};
use crate::report::{Check, VerificationReport};

/// `a + b√k` with `k` squarefree; `k = 1` is folded into `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: BigRational,
    pub b: BigRational,
    pub k: BigInt,
}

impl QuadSurd {
    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), k: BigInt::one() }
    }

    /// `√n` for `n ≥ 0`, with square factors pulled out.
    pub fn sqrt(n: u64) -> Self {
        let (mut outside, mut inside) = (1u64, n);
        let mut p = 2u64;
        while p * p <= inside {
            while inside % (p * p) == 0 {
                inside /= p * p;
                outside *= p;
            }
            p += 1;
        }
        let c = BigRational::from_integer(outside.into());
        if n == 0 {
            Self::rational(BigRational::zero())
        } else if inside == 1 {
            Self::rational(c)
        } else {
            Self { a: BigRational::zero(), b: c, k: inside.into() }
        }
    }

    fn normalized(self) -> Self {
        if self.k.is_one() {
            Self::rational(self.a + self.b)
        } else if self.b.is_zero() {
            Self::rational(self.a)
        } else {
            self
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { a: &self.a * c, b: &self.b * c, k: self.k.clone() }.normalized()
    }

    pub fn add_rational(&self, c: &BigRational) -> Self {
        Self { a: &self.a + c, b: self.b.clone(), k: self.k.clone() }
    }

    /// `(a + b√k)² = a² + b²k + 2ab√k`.
    pub fn square(&self) -> Self {
        let k = BigRational::from_integer(self.k.clone());
        Self { a: &self.a * &self.a + &self.b * &self.b * k, b: BigRational::from_integer(2.into()) * &self.a * &self.b, k: self.k.clone() }
            .normalized()
    }

    /// Product of surds over the same radicand (or rational factors).
    pub fn mul(&self, other: &Self) -> Self {
        match (self.as_rational(), other.as_rational()) {
            (Some(c), _) => other.scale(c),
            (_, Some(c)) => self.scale(c),
            _ => {
                assert_eq!(self.k, other.k, "surds over different radicands");
                let k = BigRational::from_integer(self.k.clone());
                Self { a: &self.a * &other.a + &self.b * &other.b * k, b: &self.a * &other.b + &self.b * &other.a, k: self.k.clone() }
                    .normalized()
            }
        }
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt({})", self.b, self.k),
            (false, false) => write!(f, "{} + {}*sqrt({})", self.a, self.b, self.k),
        }
    }
}

/// Cone data of a pair `(λ, μ)` over an `m`-dimensional manifold: the slope
/// parameter `s` and the homogeneity degree `d` with
/// `(λ, μ) = (-d(m+d-1)/s, -d²/s)`. The `printed_*` fields hold the
/// alternative closed forms `s' = -μ(m-1)/(λ-μ)²`, `d' = μ√(m-1)/(λ-μ)`
/// for side-by-side comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeParams {
    pub m: usize,
    pub lambda: BigRational,
    pub mu: BigRational,
    pub conical: bool,
    pub s: Option<BigRational>,
    pub d: Option<BigRational>,
    pub printed_s: Option<BigRational>,
    pub printed_d: Option<QuadSurd>,
}

/// `(-d(m+d-1)/s, -d²/s)`.
pub fn cone_round_trip(m: usize, s: &BigRational, d: &BigRational) -> (BigRational, BigRational) {
    let m = BigRational::from_integer(m.into());
    let lambda = -(d * (m + d - BigRational::one())) / s;
    let mu = -(d * d) / s;
    (lambda, mu)
}

impl ConeParams {
    pub fn round_trip(&self) -> Option<(BigRational, BigRational)> {
        Some(cone_round_trip(self.m, self.s.as_ref()?, self.d.as_ref()?))
    }

    /// The round trip evaluated on the printed forms.
    pub fn printed_round_trip(&self) -> Option<(QuadSurd, QuadSurd)> {
        let s = self.printed_s.as_ref()?;
        let d = self.printed_d.as_ref()?;
        let inv_s = BigRational::one() / s;
        let m1 = BigRational::from_integer((self.m - 1).into());
        // -d(m+d-1)/s = -(d(m-1) + d²)/s
        let d_m1 = d.scale(&m1);
        let d2 = d.square();
        let sum = d_m1.add_rational(d2.as_rational().expect("d' is a rational multiple of a square root"));
        Some((sum.scale(&-inv_s.clone()), d2.scale(&-inv_s)))
    }
}

/// Conical iff `λ ≠ μ` and `-μ/(μ-λ)² > 0`; then `d = μ(m-1)/(λ-μ)` and
/// `s = -d²/μ`.
pub fn cone_parameters(lambda: &BigRational, mu: &BigRational, m: usize) -> ConeParams {
    let conical = lambda != mu && mu.is_negative();
    let mut out = ConeParams { m, lambda: lambda.clone(), mu: mu.clone(), conical, s: None, d: None, printed_s: None, printed_d: None };
    if conical && m >= 1 {
        let gap = lambda - mu;
        let m1 = BigRational::from_integer((m - 1).into());
        let d = mu * &m1 / &gap;
        out.s = Some(-(&d * &d) / mu);
        out.d = Some(d);
        out.printed_s = Some(-(mu * &m1) / (&gap * &gap));
        out.printed_d = Some(QuadSurd::sqrt((m - 1) as u64).scale(&(mu / &gap)));
    }
    out
}

/// Reports `(s, d)` and the round trip, with the printed forms alongside.
pub fn verify_cone_parameters(lambda: &BigRational, mu: &BigRational, m: usize) -> VerificationReport {
    let p = cone_parameters(lambda, mu, m);
    let mut report = VerificationReport::new(format!("cone parameters of ({lambda}, {mu}), m={m}"));
    let Some((l, u)) = p.round_trip() else {
        report.push(Check::new("conical", "lambda != mu and mu < 0", "not conical", false));
        return report;
    };
    let printed = match (p.printed_s.as_ref(), p.printed_d.as_ref(), p.printed_round_trip()) {
        (Some(s), Some(d), Some((pl, pu))) => format!(" [printed forms: s={s}, d={d}, round trip ({pl}, {pu})]"),
        _ => String::new(),
    };
    let (s, d) = (p.s.as_ref().expect("conical"), p.d.as_ref().expect("conical"));
    report.push(Check::new(
        "round-trip",
        format!("({lambda}, {mu})"),
        format!("s={s}, d={d} -> ({l}, {u}){printed}"),
        &l == lambda && &u == mu,
    ));
    report
}

/// Tangential Laplacian `Δ - E² - (m-2)E` of an arbitrary extension `p`,
/// from `Δ = ∂_r² + (m-1)/r ∂_r + r⁻²Δ_S` at `r = 1`.
fn tangential_laplacian(p: &MultiPoly) -> Result<SphereFunction> {
    let m = GaussianRational::from(p.dim() as i64 - 2);
    let e = p.euler();
    reduce_mod_sphere(&(&(&p.laplacian() - &e.euler()) - &e.scale(&m)))
}

/// Checks the cone formulas for `C_1(S^{m-1}) = ℝ^m ∖ 0` on a homogeneous
/// polynomial `P` of degree `d`, against `Q ∈ {P, P̄}`:
///
/// - `(ΔP)|_S = Δ_S(P|_S) + d(m+d-2) P|_S`;
/// - `⟨∇P, ∇Q⟩|_S = κ_S(P|_S, Q|_S) + d² (PQ)|_S`;
///
/// plus independent evaluations of `Δ_S` and `κ_S` through the radial
/// decomposition of the ambient Laplacian.
pub fn check_cone_lemma(p: &MultiPoly) -> Result<VerificationReport> {
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let d = i64::from(p.degree().ok_or(Error::ZeroFunction)?);
    let m = p.dim() as i64;
    let f = reduce_mod_sphere(p)?;
    let mut report = VerificationReport::new(format!("cone lemma for degree {d} in R^{m}"));

    let ambient = reduce_mod_sphere(&p.laplacian())?;
    let lap_s = sphere_laplacian(&f);
    let rhs = &lap_s + &f.scale(&GaussianRational::from(d * (m + d - 2)));
    report.push(Check::equal("laplacian", &rhs, &ambient));
    report.push(Check::equal("laplacian/tangential", &tangential_laplacian(p)?, &lap_s));

    for (name, q) in [("self", p.clone()), ("conj", p.conj())] {
        let g = reduce_mod_sphere(&q)?;
        let ambient = reduce_mod_sphere(&p.gradient_dot(&q))?;
        let kappa = sphere_kappa(&f, &g);
        let rhs = &kappa + &(&f * &g).scale(&GaussianRational::from(d * d));
        report.push(Check::equal(format!("kappa/{name}"), &rhs, &ambient));
        // 2κ(f, g) = Δ(fg) - fΔg - gΔf
        let product_route = &(&tangential_laplacian(&(p * &q))? - &(&f * &tangential_laplacian(&q)?)) - &(&g * &tangential_laplacian(p)?);
        report.push(Check::equal(format!("kappa/{name}/product-route"), &product_route, &kappa.scale(&GaussianRational::from(2))));
    }
    Ok(report)
}

/// For a homogeneous `P` of degree `d ≥ 1` with `ΔP = 0` and `⟨∇P, ∇P⟩ = 0`
/// (a `(0, 0)`-eigenfunction on the cone), checks that `P|_S` is a
/// `(-d(m+d-2), -d²)`-eigenfunction and that the cone parameters of that pair
/// over `S^{m-1}` are `(s, d) = (1, d)`.
pub fn check_cone_correspondence(p: &MultiPoly) -> Result<VerificationReport> {
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let d = i64::from(p.degree().ok_or(Error::ZeroFunction)?);
    let m = p.dim();
    let mut report = VerificationReport::new(format!("cone correspondence for degree {d} in R^{m}"));
    report.push(Check::holds("harmonic", "Delta P = 0", p.laplacian().is_zero()));
    report.push(Check::holds("isotropic", "<grad P, grad P> = 0", p.gradient_dot(p).is_zero()));

    let sphere = Sphere::new(m)?;
    let r = check_eigenfunction(&sphere, &reduce_mod_sphere(p)?)?;
    let mi = m as i64;
    let expected = (GaussianRational::from(-d * (mi + d - 2)), GaussianRational::from(-d * d));
    report.push(Check::new(
        "restriction",
        format!("({}, {})", expected.0, expected.1),
        format!("({}, {}) eigen={}", r.lambda, r.mu, r.is_eigen),
        r.is_eigen && (r.lambda.clone(), r.mu.clone()) == expected,
    ));
    if let (Some(l), Some(u)) = (real_rational(&r.lambda), real_rational(&r.mu)) {
        let params = cone_parameters(&l, &u, m - 1);
        if params.conical {
            let want = (BigRational::one(), BigRational::from_integer(d.into()));
            let got = (params.s.clone().expect("conical"), params.d.clone().expect("conical"));
            report.push(Check::new("parameters", format!("s={}, d={}", want.0, want.1), format!("s={}, d={}", got.0, got.1), got == want));
        }
    }
    Ok(report)
}

fn real_rational(z: &GaussianRational) -> Option<BigRational> {
    z.is_real().then(|| z.re.clone())
}

/// Harmonic part `Σ_j c_j |x|^{2j} Δ^j P` of a homogeneous `P` of degree `d`,
/// `c_j = (-1)^j / Π_{i=1..j} 2i(2d+m-2-2i)`.
pub fn harmonic_projection(p: &MultiPoly) -> MultiPoly {
    let d = i64::from(p.degree().unwrap_or(0));
    let m = p.dim() as i64;
    let r2 = MultiPoly::radius_squared(p.dim());
    let mut term = p.clone();
    let mut radial = MultiPoly::one(p.dim());
    let mut coeff = BigRational::one();
    let mut out = p.clone();
    for j in 1..=d / 2 {
        term = term.laplacian();
        radial = &radial * &r2;
        coeff = -coeff / BigRational::from_integer((2 * j * (2 * d + m - 2 - 2 * j)).into());
        out = &out + &(&radial * &term).scale(&GaussianRational::real(coeff.clone()));
    }
    out
}

fn small_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    let re = rng.gen_range(-3..=3);
    let im = if rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 };
    if re == 0 && im == 0 {
        GaussianRational::from(1)
    } else {
        GaussianRational::from_ints(re, im)
    }
}

fn random_homogeneous(rng: &mut ChaCha8Rng, m: usize, d: u32) -> MultiPoly {
    let terms = rng.gen_range(1..=4);
    (0..terms).fold(MultiPoly::zero(m), |acc, _| {
        let mut e = vec![0u32; m];
        for _ in 0..d {
            e[rng.gen_range(0..m)] += 1;
        }
        &acc + &MultiPoly::monomial(e, small_gaussian(rng))
    })
}

/// `(a·x)^d` with `a = w + i w'` for a random vector `w` placed on random
/// coordinates and `w'` the same values on disjoint coordinates, so that
/// `a·a = 0`. Such powers are harmonic and isotropic.
fn isotropic_power(rng: &mut ChaCha8Rng, m: usize, d: u32) -> MultiPoly {
    let mut slots: Vec<usize> = (0..m).collect();
    for i in (1..slots.len()).rev() {
        slots.swap(i, rng.gen_range(0..=i));
    }
    let half = rng.gen_range(1..=m / 2);
    let linear = (0..half).fold(MultiPoly::zero(m), |acc, j| {
        let w = GaussianRational::from(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let x = MultiPoly::var(m, slots[j]).scale(&w);
        let y = MultiPoly::var(m, slots[half + j]).scale(&(w * GaussianRational::from_ints(0, 1)));
        &(&acc + &x) + &y
    });
    linear.pow(d)
}

/// Seeded harmonic polynomials: for each `2 ≤ m ≤ max_dim` and
/// `0 ≤ d ≤ max_degree`, `per_shape` harmonic projections of random
/// homogeneous polynomials (skipping any that vanish).
pub fn harmonic_polynomials(seed: u64, max_dim: usize, max_degree: u32, per_shape: usize) -> Vec<MultiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for m in 2..=max_dim {
        for d in 0..=max_degree {
            for _ in 0..per_shape {
                let h = harmonic_projection(&random_homogeneous(&mut rng, m, d));
                if !h.is_zero() {
                    out.push(h);
                }
            }
        }
    }
    out
}

/// Seeded isotropic powers `(a·x)^d` for `2 ≤ m ≤ max_dim`, `1 ≤ d ≤ max_degree`.
pub fn isotropic_polynomials(seed: u64, max_dim: usize, max_degree: u32, per_shape: usize) -> Vec<MultiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for m in 2..=max_dim {
        for d in 1..=max_degree {
            for _ in 0..per_shape {
                out.push(isotropic_power(&mut rng, m, d));
            }
        }
    }
    out
}

/// Seeded conical pairs `(λ, μ)` with `μ < 0`, `λ ≠ μ` and small rational
/// parts, paired with `2 ≤ m ≤ 8`.
pub fn conical_pairs(seed: u64, count: usize) -> Vec<(BigRational, BigRational, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rat = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| BigRational::new(rng.gen_range(lo..=hi).into(), rng.gen_range(1..=7i64).into());
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mu = rat(&mut rng, -40, -1);
        let lambda = rat(&mut rng, -60, 20);
        if lambda != mu {
            out.push((lambda, mu, rng.gen_range(2..=8)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::complex_coordinate;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sphere_pair() {
        let p = cone_parameters(&q(-3), &q(-1), 3);
        assert!(p.conical);
        assert_eq!((p.s.clone().unwrap(), p.d.clone().unwrap()), (q(1), q(1)));
        assert_eq!(p.round_trip(), Some((q(-3), q(-1))));
        // printed forms give s = 1/2 and d = √2/2, which do not round-trip
        assert_eq!(p.printed_s, Some(BigRational::new(1.into(), 2.into())));
        assert_eq!(p.printed_d.as_ref().unwrap().to_string(), "1/2*sqrt(2)");
        let (pl, pu) = p.printed_round_trip().unwrap();
        assert_ne!((pl.as_rational(), pu.as_rational()), (Some(&q(-3)), Some(&q(-1))));
        assert!(verify_cone_parameters(&q(-3), &q(-1), 3).passed());
    }

    #[test]
    fn sphere_family() {
        for n in 2..=6i64 {
            let p = cone_parameters(&q(-(2 * n - 1)), &q(-1), (2 * n - 1) as usize);
            assert_eq!((p.s.unwrap(), p.d.unwrap()), (q(1), q(1)), "n={n}");
        }
    }

    #[test]
    fn non_conical() {
        let p = cone_parameters(&q(-1), &q(-1), 3);
        assert!(!p.conical);
        assert_eq!(p.round_trip(), None);
        assert!(!cone_parameters(&q(-1), &q(2), 3).conical);
        assert!(!verify_cone_parameters(&q(-1), &q(-1), 3).passed());
    }

    #[test]
    fn seeded_round_trips() {
        for (l, u, m) in conical_pairs(7, 50) {
            assert_eq!(cone_parameters(&l, &u, m).round_trip(), Some((l, u)));
        }
    }

    #[test]
    fn surds() {
        assert_eq!(QuadSurd::sqrt(8).to_string(), "2*sqrt(2)");
        assert_eq!(QuadSurd::sqrt(9).to_string(), "3");
        assert_eq!(QuadSurd::sqrt(2).square().to_string(), "2");
        let x = QuadSurd::sqrt(3).add_rational(&q(1));
        assert_eq!(x.square().to_string(), "4 + 2*sqrt(3)");
        assert_eq!(x.mul(&x), x.square());
    }

    #[test]
    fn lemma_examples() {
        let z1 = complex_coordinate(2, 0);
        assert!(check_cone_lemma(&z1).unwrap().passed());
        let x1sq = MultiPoly::var(2, 0).pow(2);
        assert!(check_cone_lemma(&x1sq).unwrap().passed());
        let z1z2 = &z1 * &complex_coordinate(2, 1);
        assert!(check_cone_lemma(&z1z2).unwrap().passed());
        let c = check_cone_correspondence(&z1z2).unwrap();
        assert!(c.passed(), "{c}");
        assert!(c.checks.iter().any(|x| x.id == "restriction" && x.expected == "(-8, -4)"));
        let mixed = &x1sq + &MultiPoly::var(2, 0);
        assert_eq!(check_cone_lemma(&mixed).unwrap_err(), Error::NotHomogeneous);
    }

    #[test]
    fn generated_polynomials_are_harmonic() {
        for h in harmonic_polynomials(3, 5, 4, 2) {
            assert!(h.is_homogeneous() && h.laplacian().is_zero(), "{h}");
        }
        for p in isotropic_polynomials(3, 5, 3, 2) {
            assert!(p.laplacian().is_zero() && p.gradient_dot(&p).is_zero(), "{p}");
            assert!(check_cone_correspondence(&p).unwrap().passed());
        }
    }
}
