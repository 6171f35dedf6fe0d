//! Shared fixtures for the benchmarks.

use gorq::{quadric_ci, CiStyle, Ideal, PolyRing, PrimeField, Rationals, RingExt};

pub fn gf32003() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

/// `(x1^2, ..., xr^2)` over Q.
pub fn squares_q(r: usize) -> Ideal<Rationals> {
    let ring = PolyRing::graded(r, Rationals).unwrap();
    let gens = (0..r).map(|i| ring.var(i).pow(2)).collect();
    Ideal::new(&ring, gens).unwrap()
}

/// Dense random quadric complete intersection over GF(32003).
pub fn random_ci(r: usize, seed: u64) -> Ideal<PrimeField> {
    quadric_ci(&gf32003(), r, CiStyle::Random(seed)).unwrap()
}
