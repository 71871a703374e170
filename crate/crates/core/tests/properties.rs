use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sl3mtc::alcove::{
    affine_fold_traced, alcove_weights, classical_dim, kostant_multiplicity, weight_diagram, weight_multiplicity,
    Weight,
};
use sl3mtc::cyclo::CycloNumber;
use sl3mtc::fusion::{dual, fusion_coeff, fusion_product};
use sl3mtc::modular::qdim;

fn cyclo(conductor: u32) -> impl Strategy<Value = CycloNumber> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 1..5).prop_map(move |terms| {
        terms.into_iter().enumerate().fold(CycloNumber::zero(conductor), |acc, (j, (p, q))| {
            let c = BigRational::new(BigInt::from(p), BigInt::from(q));
            acc + CycloNumber::root_of_unity(conductor, 3 * j as i64 + p).scale(&c)
        })
    })
}

fn level_and_pair() -> impl Strategy<Value = (u32, Weight, Weight)> {
    (1u32..=7).prop_flat_map(|k| {
        let w = (0..=k as i32).prop_flat_map(move |a| (Just(a), 0..=(k as i32 - a))).prop_map(|(a, b)| Weight::new(a, b));
        (Just(k), w.clone(), w)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_commutative_and_associative(a in cyclo(12), b in cyclo(12), c in cyclo(12)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in cyclo(18), b in cyclo(18)) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn inverse_and_embedding(a in cyclo(15)) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inv().unwrap(), CycloNumber::one(15));
        let big = a.embed(45).unwrap();
        prop_assert!((big.to_c64() - a.to_c64()).norm() < 1e-9);
        prop_assert_eq!(big, a);
    }

    #[test]
    fn fusion_is_dimension_additive((k, a, b) in level_and_pair()) {
        let product = fusion_product(a, b, k).unwrap();
        let lhs = (&qdim(a, k).unwrap() * &qdim(b, k).unwrap()).to_c64().re;
        let rhs: f64 = product.iter().map(|&(c, n)| n as f64 * qdim(c, k).unwrap().to_c64().re).sum();
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn fusion_respects_triality_and_duality((k, a, b) in level_and_pair()) {
        let triality = |w: Weight| (w.m1 + 2 * w.m2).rem_euclid(3);
        for (c, n) in fusion_product(a, b, k).unwrap() {
            prop_assert_eq!(triality(c), (triality(a) + triality(b)) % 3);
            prop_assert_eq!(fusion_coeff(dual(a), c, b, k).unwrap(), n);
            prop_assert_eq!(fusion_coeff(dual(a), dual(b), dual(c), k).unwrap(), n);
        }
    }

    #[test]
    fn folding_replays((k, a, b) in level_and_pair(), shift in (-8i32..8, -8i32..8)) {
        let x = Weight::new(a.m1 + b.m1 + shift.0, a.m2 + b.m2 + shift.1);
        let (result, word) = affine_fold_traced(x, k);
        let replayed = word.iter().fold(x, |w, r| r.apply(w, k));
        let parity = if word.len() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(result.sign, parity);
        let again = affine_fold_traced(replayed, k);
        prop_assert!(again.1.is_empty());
        match result.target {
            Some(t) => prop_assert_eq!(t, replayed),
            None => prop_assert_eq!(again.0.target, None),
        }
    }
}

#[test]
fn roots_of_unity() {
    for n in [1u32, 2, 3, 4, 5, 6, 8, 9, 12, 15, 18, 27, 30] {
        let z = CycloNumber::root_of_unity(n, 1);
        assert_eq!(z.pow(n as i64).unwrap(), CycloNumber::one(n));
        let total = (0..n as i64).fold(CycloNumber::zero(n), |acc, j| acc + CycloNumber::root_of_unity(n, j));
        assert_eq!(total.is_zero(), n > 1, "n = {n}");
    }
}

#[test]
fn freudenthal_agrees_with_kostant_at_level_six() {
    for gamma in alcove_weights(6).unwrap().iter() {
        let diagram = weight_diagram(*gamma);
        assert_eq!(diagram.total_dim(), classical_dim(*gamma));
        for &(mu, m) in &diagram.weights {
            assert_eq!(kostant_multiplicity(*gamma, mu), m, "γ = {gamma}, μ = {mu}");
            assert_eq!(weight_multiplicity(*gamma, mu), m);
        }
    }
}
