use std::sync::Arc;

use eigenkit::arith::{binomial, det_bareiss, det_rational, kernel_basis, BigInt, BigRational, ExactMatrix, GaussianRational, PiScalar};
use eigenkit::poly::{reduce_mod_sphere, sphere_kappa, MultiPoly};
use eigenkit::torus::{dual_lattice, norm_shell, Lattice, Torus, TrigPoly};
use eigenkit::verify::{
    check_eigenfamily, check_eigenfunction, check_power_closure, cone_parameters, power_eigenvalue, random_sphere_function,
    random_trig_poly, structural_suite, FlatTorus, FunctionAlgebra, Sphere,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn int_matrix(max: usize) -> impl Strategy<Value = ExactMatrix<BigInt>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(-9i64..=9, n * n)
            .prop_map(move |v| ExactMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
        .prop_map(|(a, b, c, d)| GaussianRational::ratio(a, b) + GaussianRational::ratio(c, d) * GaussianRational::from_ints(0, 1))
}

fn pi_scalar() -> impl Strategy<Value = PiScalar> {
    prop::collection::vec(gaussian(), 0..4).prop_map(PiScalar::from_coeffs)
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn skew_lattice() -> impl Strategy<Value = Lattice> {
    prop::collection::vec(rational(), 4).prop_filter_map("singular", |v| Lattice::new(ExactMatrix::new(2, 2, v).unwrap()).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bareiss_matches_rational_elimination(m in int_matrix(8)) {
        prop_assert_eq!(BigRational::from_integer(det_bareiss(&m).unwrap()), det_rational(&m.to_rational()).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=6).prop_flat_map(|n| {
        let sq = move || prop::collection::vec(-9i64..=9, n * n).prop_map(move |v| ExactMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap());
        (sq(), sq())
    })) {
        prop_assert_eq!(det_bareiss(&a.mul(&b).unwrap()).unwrap(), det_bareiss(&a).unwrap() * det_bareiss(&b).unwrap());
    }

    #[test]
    fn pascal_rule(n in 1u64..=64, k in 0i64..=64) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }

    #[test]
    fn pi_scalars_distribute(x in pi_scalar(), y in pi_scalar(), z in pi_scalar()) {
        prop_assert_eq!((x.clone() + y.clone()) * z.clone(), x * z.clone() + y * z);
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in 1usize..=5, cols in 1usize..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        // low-rank products make nontrivial kernels common
        let inner = rng.gen_range(1..=cols);
        let a = ExactMatrix::from_fn(rows, inner, |_, _| BigRational::from_integer(rng.gen_range(-3i64..=3).into()));
        let b = ExactMatrix::from_fn(inner, cols, |_, _| BigRational::from_integer(rng.gen_range(-3i64..=3).into()));
        let m = a.mul(&b).unwrap();
        for v in kernel_basis(&m) {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn dual_lattice_is_an_involution(l in skew_lattice()) {
        prop_assert_eq!(dual_lattice(&dual_lattice(&l).unwrap()).unwrap(), l);
    }

    #[test]
    fn cone_parameters_round_trip(l in rational(), u in rational(), m in 2usize..=8) {
        prop_assume!(l != u && u < BigRational::zero());
        let p = cone_parameters(&l, &u, m);
        prop_assert_eq!(p.round_trip(), Some((l, u)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sphere_structural_identities(seed in any::<u64>(), m in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_sphere_function(&mut rng, m, 3);
        let g = random_sphere_function(&mut rng, m, 3);
        let r = structural_suite(&Sphere { m }, &[(f, g)]);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn sphere_kappa_is_symmetric_and_bilinear(seed in any::<u64>(), m in 2usize..=5, c in gaussian()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [f, g, h] = [0; 3].map(|_| random_sphere_function(&mut rng, m, 3));
        let s = Sphere { m };
        prop_assert_eq!(sphere_kappa(&f, &g), sphere_kappa(&g, &f));
        let lhs = sphere_kappa(&s.add(&f.scale(&c), &h), &g);
        let rhs = s.add(&sphere_kappa(&f, &g).scale(&c), &sphere_kappa(&h, &g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sphere_reduction_is_a_ring_homomorphism(seed in any::<u64>(), m in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [f, g] = [0; 2].map(|_| random_sphere_function(&mut rng, m, 3));
        let (p, q) = (f.normal_form().clone(), g.normal_form().clone());
        prop_assert_eq!(&reduce_mod_sphere(f.normal_form()).unwrap(), &f);
        // adding a multiple of |x|^2 - 1 changes nothing
        let shifted = &p + &(&(&MultiPoly::radius_squared(m) - &MultiPoly::one(m)) * &q);
        prop_assert_eq!(&reduce_mod_sphere(&shifted).unwrap(), &f);
        prop_assert_eq!(reduce_mod_sphere(&(&p * &q)).unwrap(), Sphere { m }.mul(&f, &g));
        prop_assert_eq!(reduce_mod_sphere(&(&p + &q)).unwrap(), Sphere { m }.add(&f, &g));
    }

    #[test]
    fn torus_structural_identities(seed in any::<u64>(), l in skew_lattice()) {
        let torus = Torus::new(l).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_trig_poly(&mut rng, &torus, 3);
        let g = random_trig_poly(&mut rng, &torus, 3);
        let r = structural_suite(&FlatTorus(Arc::clone(&torus)), &[(f, g)]);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn shell_generators_are_eigenfunctions_and_pairs_are_not_families(l in skew_lattice(), q in 1i64..=6) {
        let torus = FlatTorus(Torus::new(l).unwrap());
        let q = BigRational::from_integer(q.into());
        let shell = norm_shell(torus.0.dual(), &q);
        let eigen = PiScalar::pi2_multiple(-q);
        let chars: Vec<TrigPoly> = shell.iter().map(|k| TrigPoly::character(&torus.0, k)).collect();
        for e in &chars {
            let r = check_eigenfunction(&torus, e).unwrap();
            prop_assert!(r.is_eigen && r.lambda == eigen && r.mu == eigen);
        }
        for i in 0..chars.len() {
            for j in i + 1..chars.len() {
                let fam = check_eigenfamily(&torus, &[chars[i].clone(), chars[j].clone()]).unwrap();
                prop_assert!(!fam.passed());
            }
        }
    }

    #[test]
    fn powers_of_eigenfunctions(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let torus = FlatTorus(Torus::new(Lattice::standard(2)).unwrap());
        let k = [rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2)];
        let e = TrigPoly::character(&torus.0, &k);
        let base = check_eigenfunction(&torus, &e).unwrap();
        prop_assert!(check_power_closure(&torus, &e, 6).unwrap().passed());
        for d in 1..=6u32 {
            let r = check_eigenfunction(&torus, &torus.pow(&e, d)).unwrap();
            prop_assert_eq!(r.lambda, power_eigenvalue(d, &base.lambda, &base.mu));
        }
    }
}
