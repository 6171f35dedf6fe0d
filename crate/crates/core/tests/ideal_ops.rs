mod common;

use gorq::ideal_ops::{colon_hilbert_score, divide_exact, Selection};
use gorq::{
    colon_form, colon_form_elimination, colon_form_linear, colon_ideal, general_linear_form,
    hvector, ideal_sum, intersect, minimal_generator_counts, parse_poly, Field, GenericityPolicy,
    HVector, Ideal, PolyRing, Polynomial, PrimeField, Rationals, Ring, RingExt,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn squares<K: Field>(ring: &Ring<K>) -> Ideal<K> {
    let gens = (0..ring.nvars()).map(|i| ring.var(i).pow(2)).collect();
    Ideal::new(ring, gens).unwrap()
}

fn hv(s: &str) -> HVector {
    s.parse().unwrap()
}

#[test]
fn squares_colon_general_linear_form() {
    let ring = PolyRing::graded(6, PrimeField::new(32003).unwrap()).unwrap();
    let ci = squares(&ring);
    let policy = GenericityPolicy::seeded(3).with_selection(Selection::MaxRank);
    let g = general_linear_form(&ring, &policy, colon_hilbert_score(&ci)).unwrap();
    let j = colon_form(&ci, &g.form.to_poly(&ring)).unwrap();
    assert_eq!(hvector(&j).unwrap(), hv("(1,6,15,15,6,1)"));
    let nu = minimal_generator_counts(&j, 10).unwrap();
    assert_eq!(nu.into_iter().collect::<Vec<_>>(), vec![(2, 6), (3, 5)]);
}

#[test]
fn colon_selection_skips_special_samples() {
    // seed 0 draws a form without x1 among its five samples
    let ring = PolyRing::graded(7, Rationals).unwrap();
    let ci = squares(&ring);
    let policy = GenericityPolicy::seeded(0).with_selection(Selection::MaxRank);
    let g = general_linear_form(&ring, &policy, colon_hilbert_score(&ci)).unwrap();
    assert_eq!(g.score, vec![1, 7, 21, 35, 21, 7, 1]);
}

#[test]
fn adding_a_general_linear_form() {
    let ring = PolyRing::graded(6, Rationals).unwrap();
    let l = parse_poly(&ring, "x1 + 2*x2 - 3*x3 + 5*x4 + 7*x5 - 11*x6").unwrap();
    let s = gorq::ideal_ops::add_forms(&squares(&ring), &[l.clone()]).unwrap();
    // six quadrics restricted to a hyperplane: cokernel of a maximal-rank ×L
    assert_eq!(hvector(&s).unwrap(), hv("(1,5,9,5)"));
    let mut gens = squares(&ring).gens().to_vec();
    gens.push(l);
    assert_eq!(common::hilbert(&ring, &gens, 5), vec![1, 5, 9, 5, 0, 0]);
}

#[test]
fn colon_by_nonzerodivisor_is_identity() {
    let ring = PolyRing::graded(3, Rationals).unwrap();
    let i = Ideal::parse(&ring, "x1*x2").unwrap();
    let f = parse_poly(&ring, "x3").unwrap();
    assert!(colon_form(&i, &f).unwrap().same_ideal(&i).unwrap());
    let g = parse_poly(&ring, "x1").unwrap();
    let c = colon_form(&i, &g).unwrap();
    assert!(!c.same_ideal(&i).unwrap());
    assert!(c.contains_ideal(&i).unwrap());
}

#[test]
fn socle_degree_drops_by_one() {
    for r in 4..=7 {
        let ring = PolyRing::graded(r, PrimeField::new(32003).unwrap()).unwrap();
        let ci = squares(&ring);
        let mut rng = ChaCha8Rng::seed_from_u64(r as u64);
        let coeffs: Vec<u32> = (0..r).map(|_| rng.gen_range(1..32003)).collect();
        let l = ring.linear_form(&coeffs);
        let h = hvector(&colon_form(&ci, &l).unwrap()).unwrap();
        assert_eq!(h.socle_degree(), Some(r - 1));
        assert!(h.is_symmetric());
    }
}

#[test]
fn colon_ideal_basics() {
    let ring = PolyRing::graded(3, PrimeField::new(101).unwrap()).unwrap();
    let c = squares(&ring);
    assert!(colon_ideal(&c, &c).unwrap().is_unit().unwrap());
    let f = parse_poly(&ring, "x1*x2 + x2*x3").unwrap();
    let cf = ideal_sum(&c, &Ideal::new(&ring, vec![f.clone()]).unwrap()).unwrap();
    let lhs = colon_ideal(&c, &cf).unwrap();
    let rhs = colon_form(&c, &f).unwrap();
    assert!(lhs.same_ideal(&rhs).unwrap());
    // double link containment
    let back = colon_ideal(&c, &rhs).unwrap();
    assert!(back.contains_ideal(&cf).unwrap());
    assert!(back.same_ideal(&cf).unwrap());
}

#[test]
fn intersection_of_monomial_ideals() {
    let ring = PolyRing::graded(3, Rationals).unwrap();
    let a = Ideal::parse(&ring, "x1^2, x2").unwrap();
    let b = Ideal::parse(&ring, "x1, x2^2").unwrap();
    let m = intersect(&a, &b).unwrap();
    assert!(m.same_ideal(&Ideal::parse(&ring, "x1^2, x1*x2, x2^2").unwrap()).unwrap());
}

#[test]
fn general_form_selection_prefers_generic_hilbert() {
    let ring = PolyRing::graded(7, PrimeField::new(2).unwrap()).unwrap();
    let ci = squares(&ring);
    let pol = GenericityPolicy { num_samples: 8, ..GenericityPolicy::seeded(11) };
    let g = general_linear_form(&ring, &pol, |l| {
        let p = l.to_poly(&ring);
        assert!(ci.contains(&p.mul(&p).unwrap()).unwrap());
        Ok(vec![0])
    })
    .unwrap();
    assert!(!g.warnings.is_empty());
}

fn random_artinian<K: Field>(ring: &Ring<K>, rng: &mut ChaCha8Rng) -> Vec<Polynomial<K>> {
    let n = ring.nvars();
    let mut gens: Vec<Polynomial<K>> = (0..n)
        .map(|i| ring.var(i).pow(rng.gen_range(2..=3)))
        .collect();
    for _ in 0..rng.gen_range(0..=2) {
        let d = rng.gen_range(2..=3);
        gens.push(common::random_form(ring, d, rng, 0.5));
    }
    gens
}

fn colon_agreement<K: Field>(field: K, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=3);
    let ring = PolyRing::graded(n, field).unwrap();
    let gens = random_artinian(&ring, &mut rng);
    let i = Ideal::new(&ring, gens.clone()).unwrap();
    let f = loop {
        let p = common::random_form(&ring, rng.gen_range(1..=2), &mut rng, 0.6);
        if !p.is_zero() {
            break p;
        }
    };
    let lin = colon_form_linear(&i, &f).unwrap();
    let eli = colon_form_elimination(&i, &f).unwrap();
    prop_assert!(lin.same_ideal(&eli).unwrap());
    prop_assert!(lin.contains_ideal(&i).unwrap());
    for d in 0..=6 {
        let total = gorq::monomials_of_degree(n, d).len();
        let got = total - lin.gb().unwrap().count_standard(d);
        prop_assert_eq!(got, common::colon_dim(&ring, &gens, &f, d), "degree {}", d);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn colon_routes_agree_prime(seed in any::<u64>()) {
        colon_agreement(PrimeField::new(7).unwrap(), seed)?;
    }

    #[test]
    fn colon_routes_agree_rationals(seed in any::<u64>()) {
        colon_agreement(Rationals, seed)?;
    }

    #[test]
    fn division_inverts_multiplication(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = PolyRing::graded(3, Rationals).unwrap();
        let a = common::random_form(&ring, 2, &mut rng, 0.6);
        let b = common::random_form(&ring, 1, &mut rng, 0.8);
        prop_assume!(!b.is_zero());
        let p = a.mul(&b).unwrap();
        prop_assert_eq!(divide_exact(&p, &b).unwrap(), a);
    }
}
