use num_traits::{One, Zero};
use proptest::prelude::*;

use borel_core::borel::{diagonalizing_borel, limit_exponents, min_exponent, orbit_limit};
use borel_core::idempotents::check_laws;
use borel_core::instance::{generate_instance, GenerationMode, Sampler};
use borel_core::invariants::{invariant_f, quotient_map, InvariantVector};
use borel_core::moment::{
    equivariance_holds, in_zero_fiber_rss, moment, solve_subdiagonal_s, surjectivity_witness, TargetPoint, WitnessMode,
};
use borel_core::scalar::{Monomial, Poly, Var};
use borel_core::symbolic::{expand_f, XYMonomial};
use borel_core::{borel_act, BorelMatrix, LaurentPoly, Matrix, MultiRational, Quadruple, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(p, q)| Rational::new(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn laurent(min_exp: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((min_exp..min_exp + 4, rational()), 0..4).prop_map(LaurentPoly::from_terms)
}

fn xy_monomial() -> impl Strategy<Value = XYMonomial> {
    (prop::collection::vec(0u32..3, 3), prop::collection::vec(0u32..3, 3))
        .prop_map(|(x, y)| XYMonomial::new(x, y).unwrap())
}

fn small_poly() -> impl Strategy<Value = Poly> {
    let var = prop_oneof![Just(Var::R(1, 1)), Just(Var::R(1, 2)), Just(Var::R(2, 2)), Just(Var::X(1))];
    prop::collection::vec((rational(), prop::collection::vec((var, 0u32..3), 0..3)), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (c, powers)| acc + Poly::term(c, Monomial::from_powers(powers)))
    })
}

fn fiber(n: usize, seed: u64) -> Quadruple<Rational> {
    generate_instance(n, seed, GenerationMode::Fiber, 20).unwrap()
}

fn free(n: usize, seed: u64) -> Quadruple<Rational> {
    generate_instance(n, seed, GenerationMode::Free, 20).unwrap()
}

fn point_value(v: Var) -> Option<Rational> {
    Some(match v {
        Var::R(1, 1) => Rational::new(3, 2),
        Var::R(1, 2) => Rational::from(-2),
        Var::R(2, 2) => Rational::new(-1, 5),
        _ => Rational::from(7),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if let Some(inv) = a.recip() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), a);
    }

    #[test]
    fn laurent_limit_is_multiplicative(p in laurent(0), q in laurent(0)) {
        let product = &p * &q;
        prop_assert_eq!(product.limit_at_zero().unwrap(), p.limit_at_zero().unwrap() * q.limit_at_zero().unwrap());
    }

    #[test]
    fn laurent_ring_laws(p in laurent(-2), q in laurent(-2), r in laurent(-2)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(q.clone() + r.clone()), &p * &q + &p * &r);
    }

    #[test]
    fn negative_leading_exponent_has_no_limit(c in nonzero_rational(), k in 1i64..4, p in laurent(0)) {
        let f = LaurentPoly::monomial(c, -k) + p;
        prop_assert!(f.limit_at_zero().is_err());
    }

    #[test]
    fn multirational_equality_ignores_common_factors(p in small_poly(), q in small_poly(), h in small_poly()) {
        prop_assume!(!q.is_zero() && !h.is_zero());
        let plain = MultiRational::new(p.clone(), q.clone()).unwrap();
        let scaled = MultiRational::new(&p * &h, &q * &h).unwrap();
        prop_assert_eq!(plain, scaled);
    }

    #[test]
    fn multirational_evaluation_is_a_homomorphism(a in small_poly(), b in small_poly(), c in small_poly(), d in small_poly()) {
        let x = MultiRational::new(a, b);
        let y = MultiRational::new(c, d);
        if let (Ok(x), Ok(y)) = (x, y) {
            if let (Some(vx), Some(vy)) = (x.evaluate(&point_value), y.evaluate(&point_value)) {
                prop_assert_eq!((x.clone() * y.clone()).evaluate(&point_value), Some(&vx * &vy));
                prop_assert_eq!((x + y).evaluate(&point_value), Some(&vx + &vy));
            }
        }
    }

    #[test]
    fn term_order_is_total(a in xy_monomial(), b in xy_monomial(), c in xy_monomial()) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a == b, a.cmp(&b).is_eq());
        if a < b && b < c {
            prop_assert!(a < c);
        }
    }

    #[test]
    fn term_order_is_multiplicative(a in xy_monomial(), b in xy_monomial(), c in xy_monomial()) {
        if a > b {
            prop_assert!(a.mul(&c) > b.mul(&c));
        }
    }

    #[test]
    fn term_order_is_artinian(a in xy_monomial()) {
        if !a.is_one() {
            prop_assert!(a > XYMonomial::one(3));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn borel_action_is_a_group_action(n in 1usize..=4, seed in any::<u64>()) {
        let q = free(n, seed);
        let mut sampler = Sampler::new(seed ^ 1, 20);
        let b1 = sampler.borel_group_element(n);
        let b2 = sampler.borel_group_element(n);
        let b12 = BorelMatrix::new(b1.matrix() * b2.matrix()).unwrap();
        prop_assert_eq!(borel_act(&b12, &q).unwrap(), borel_act(&b1, &borel_act(&b2, &q).unwrap()).unwrap());
        prop_assert_eq!(borel_act(&BorelMatrix::identity(n), &q).unwrap(), q);
    }

    #[test]
    fn action_preserves_the_diagonal_of_r(n in 1usize..=5, seed in any::<u64>()) {
        let q = free(n, seed);
        let b = Sampler::new(seed ^ 2, 20).borel_group_element(n);
        prop_assert_eq!(borel_act(&b, &q).unwrap().r().diag(), q.r().diag());
    }

    #[test]
    fn action_preserves_the_fiber(n in 1usize..=5, seed in any::<u64>()) {
        let q = fiber(n, seed);
        let b = Sampler::new(seed ^ 3, 20).borel_group_element(n);
        prop_assert!(in_zero_fiber_rss(&borel_act(&b, &q).unwrap()));
    }

    #[test]
    fn moment_is_equivariant(n in 1usize..=5, seed in any::<u64>()) {
        let q = free(n, seed);
        let b = Sampler::new(seed ^ 4, 20).borel_group_element(n);
        prop_assert!(equivariance_holds(&b, &q).unwrap());
    }

    #[test]
    fn idempotent_laws(n in 1usize..=5, seed in any::<u64>()) {
        let mut sampler = Sampler::new(seed, 20);
        let r = sampler.rss_borel(n).unwrap();
        let conj = sampler.borel_group_element(n);
        let scale = sampler.nonzero_rational();
        let s = sampler.dual_borel(n);
        let laws = check_laws(&r, &conj, &scale, &s).unwrap();
        prop_assert!(laws.all_pass(), "{:?}", laws.failures().collect::<Vec<_>>());
    }

    #[test]
    fn diagonalizer_diagonal_is_prescribed(n in 1usize..=5, seed in any::<u64>()) {
        let mut sampler = Sampler::new(seed, 20);
        let r = sampler.rss_borel(n).unwrap();
        let d = sampler.nonzero_vector(n);
        let diag = diagonalizing_borel(&r, Some(&d)).unwrap();
        prop_assert_eq!(diag.b.diag(), d);
        prop_assert_eq!(diag.b.matrix() * diag.b_inv.matrix(), Matrix::identity(n));
    }

    #[test]
    fn elimination_clears_the_off_diagonal(n in 1usize..=5, seed in any::<u64>()) {
        let q = free(n, seed);
        let s = solve_subdiagonal_s(q.r(), q.i(), q.j(), &q.s().diag()).unwrap();
        let solved = q.with_s(s).unwrap();
        let mu = moment(&solved);
        prop_assert!((0..n).all(|a| (0..a).all(|b| mu.get(a, b).is_zero())));
        for iota in 0..n {
            prop_assert_eq!(mu.get(iota, iota), &invariant_f(&solved, iota).unwrap());
        }
    }

    #[test]
    fn vanishing_vector_forces_diagonal_s(n in 1usize..=5, seed in any::<u64>(), kill_i in any::<bool>()) {
        let q = free(n, seed);
        let zero = vec![Rational::zero(); n];
        let (i, j) = if kill_i { (zero.as_slice(), q.j()) } else { (q.i(), zero.as_slice()) };
        let s = solve_subdiagonal_s(q.r(), i, j, &q.s().diag()).unwrap();
        prop_assert!(s.is_diagonal());
    }

    #[test]
    fn invariants_are_borel_invariant(n in 1usize..=4, seed in any::<u64>()) {
        let q = free(n, seed);
        let b = Sampler::new(seed ^ 5, 20).borel_group_element(n);
        let before = InvariantVector::of(&q).unwrap();
        prop_assert_eq!(InvariantVector::of(&borel_act(&b, &q).unwrap()).unwrap(), before.clone());
        prop_assert!(before.is_consistent());
        for a in 0..n {
            for c in a + 1..n {
                prop_assert_eq!(before.k_antisymmetric(c, a).unwrap(), -before.k(a, c).unwrap().clone());
            }
        }
    }

    #[test]
    fn orbit_limits_have_nonnegative_exponents(n in 1usize..=5, seed in any::<u64>()) {
        let q = fiber(n, seed);
        let result = orbit_limit(&q).unwrap();
        let lambda = limit_exponents(result.diagonalized.i(), result.diagonalized.j()).unwrap();
        let acted = lambda.act(&result.diagonalized).unwrap();
        prop_assert!(min_exponent(&acted).is_none_or(|e| e >= 0));
        prop_assert_eq!(quotient_map(&result.limit).unwrap(), quotient_map(&q).unwrap());
    }

    #[test]
    fn witnesses_round_trip(n in 1usize..=5, seed in any::<u64>()) {
        let mut sampler = Sampler::new(seed, 20);
        let t = TargetPoint::new(sampler.distinct_vector(n).unwrap(), sampler.vector(n)).unwrap();
        for mode in [WitnessMode::Canonical, WitnessMode::Generic { seed, max_coeff: 20 }] {
            let w = surjectivity_witness(&t, mode).unwrap();
            prop_assert!(in_zero_fiber_rss(&w));
            prop_assert_eq!(quotient_map(&w).unwrap(), t.clone());
        }
    }

    #[test]
    fn symbolic_expansion_agrees_numerically(n in 1usize..=4, seed in any::<u64>()) {
        let q = free(n, seed);
        for iota in 1..=n {
            let f = expand_f(n, iota).unwrap();
            prop_assert_eq!(f.evaluate(q.r().matrix(), q.i(), q.j()), Some(invariant_f(&q, iota - 1).unwrap()));
        }
    }

    #[test]
    fn quadruple_json_round_trip(n in 1usize..=4, seed in any::<u64>()) {
        let q = free(n, seed);
        let text = serde_json::to_string(&q).unwrap();
        prop_assert_eq!(serde_json::from_str::<Quadruple<Rational>>(&text).unwrap(), q);
    }
}
