mod common;

use gorq::{
    groebner, Field, GbOptions, Ideal, MonomialOrder, PolyRing, Polynomial, PrimeField, Rationals,
    Ring,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_gens<K: Field>(ring: &Ring<K>, rng: &mut ChaCha8Rng) -> Vec<Polynomial<K>> {
    let k = rng.gen_range(1..=4);
    (0..k)
        .map(|_| loop {
            let d = rng.gen_range(1..=3);
            let p = common::random_form(ring, d, rng, 0.5);
            if !p.is_zero() {
                break p;
            }
        })
        .collect()
}

fn check_ring<K: Field>(field: K, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let ring = PolyRing::graded(n, field).unwrap();
    let gens = random_gens(&ring, &mut rng);
    let opts = GbOptions::default();
    let gb = groebner(&gens, MonomialOrder::DegRevLex, opts).unwrap();

    // shuffled input gives the same reduced basis
    let mut shuffled = gens.clone();
    shuffled.shuffle(&mut rng);
    let gb2 = groebner(&shuffled, MonomialOrder::DegRevLex, opts).unwrap();
    prop_assert_eq!(gb.basis(), gb2.basis());

    // criteria toggles
    for (p, c) in [(false, false), (true, false), (false, true)] {
        let o = GbOptions { product_criterion: p, chain_criterion: c, ..opts };
        let g = groebner(&gens, MonomialOrder::DegRevLex, o).unwrap();
        prop_assert_eq!(gb.basis(), g.basis());
    }

    // generators reduce to zero; normal forms are linear and idempotent
    for g in &gens {
        prop_assert!(gb.normal_form(g).unwrap().is_zero());
    }
    let d = rng.gen_range(1..=4);
    let a = common::random_form(&ring, d, &mut rng, 0.7);
    let b = common::random_form(&ring, d, &mut rng, 0.7);
    let c = ring.field().random(&mut rng, 9);
    let lhs = gb.normal_form(&a.add(&b.scale(&c)).unwrap()).unwrap();
    let rhs = gb.normal_form(&a).unwrap().add(&gb.normal_form(&b).unwrap().scale(&c)).unwrap();
    prop_assert_eq!(&lhs, &rhs);
    prop_assert_eq!(gb.normal_form(&lhs).unwrap(), lhs.clone());
    for (m, _) in lhs.terms() {
        prop_assert!(gb.is_standard(m));
    }

    // graded pieces against row reduction of monomial multiples
    for d in 0..=5 {
        let total = gorq::monomials_of_degree(n, d).len();
        prop_assert_eq!(total - gb.count_standard(d), common::ideal_dim(&ring, &gens, d), "degree {}", d);
    }

    // minimal generator counts against the oracle
    let ideal = Ideal::new(&ring, gens.clone()).unwrap();
    let nu = gorq::minimal_generator_counts(&ideal, 6).unwrap();
    for d in 1..=4 {
        prop_assert_eq!(nu.get(&d).copied().unwrap_or(0), common::nu(&ring, &gens, d), "nu_{}", d);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduced_basis_properties_rationals(seed in any::<u64>()) {
        check_ring(Rationals, seed)?;
    }

    #[test]
    fn reduced_basis_properties_prime(seed in any::<u64>()) {
        check_ring(PrimeField::new(32003).unwrap(), seed)?;
    }

    #[test]
    fn reduced_basis_properties_gf2(seed in any::<u64>()) {
        check_ring(PrimeField::new(2).unwrap(), seed)?;
    }
}

#[test]
fn lex_and_block_orders_are_reduced() {
    let ring = PolyRing::graded(3, Rationals).unwrap();
    let gens: Vec<_> = ["x1^2 - x2*x3", "x2^2 - x1*x3", "x3^2 - x1*x2"]
        .iter()
        .map(|s| gorq::parse_poly(&ring, s).unwrap())
        .collect();
    for order in [MonomialOrder::Lex, MonomialOrder::Block(1), MonomialOrder::DegRevLex] {
        let gb = groebner(&gens, order, GbOptions::default()).unwrap();
        for (i, p) in gb.basis().iter().enumerate() {
            assert!(ring.field().is_one(p.leading_coeff().unwrap()));
            for (j, q) in gb.basis().iter().enumerate() {
                if i != j {
                    let lm = q.leading_monomial().unwrap();
                    assert!(p.terms().iter().all(|(m, _)| !lm.divides(m)));
                }
            }
        }
    }
}
