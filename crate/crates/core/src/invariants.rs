//! Hilbert functions, socles, minimal generator degrees and the quadric classification.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{binomial, Field, PolyRing, Polynomial, PrimeField, Ring, RingExt};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::quotient::{leads_are_artinian, Quotient};

/// A Hilbert function `(h_0, ..., h_e)` with trailing zeros removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HVector(Vec<u64>);

impl HVector {
    pub fn new(mut values: Vec<u64>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        HVector(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    /// `h_d`, zero past the end.
    pub fn get(&self, d: usize) -> u64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Last degree with `h_e != 0`; `None` for the zero algebra.
    pub fn socle_degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.0.len();
        (0..n).all(|i| self.0[i] == self.0[n - 1 - i])
    }

    /// Sum of the entries: the vector-space dimension of the algebra.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Coefficientwise product of the generating polynomials.
    pub fn product(&self, other: &HVector) -> HVector {
        if self.is_empty() || other.is_empty() {
            return HVector::default();
        }
        let mut out = vec![0u64; self.len() + other.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HVector::new(out)
    }

    /// Hilbert function of a complete intersection with the given generator degrees
    /// in as many variables.
    pub fn complete_intersection(degrees: &[u32]) -> HVector {
        degrees.iter().fold(HVector(vec![1]), |acc, &d| {
            acc.product(&HVector(vec![1; d as usize]))
        })
    }

    /// Whether `h_{i+1} <= h_i^<i>` for every `i >= 1`.
    pub fn satisfies_macaulay(&self) -> bool {
        (1..self.0.len().saturating_sub(1)).all(|i| self.0[i + 1] <= macaulay_bound(self.0[i], i as u32))
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for HVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Precondition(format!("not an h-vector: {s}")))?;
        if inner.trim().is_empty() {
            return Ok(HVector::default());
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Precondition(format!("not an h-vector: {s}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(HVector::new)
    }
}

/// The `i`-th Macaulay representation bound `h^<i>`.
pub fn macaulay_bound(h: u64, i: u32) -> u64 {
    if i == 0 {
        return if h == 0 { 0 } else { u64::MAX };
    }
    let mut rest = h;
    let mut out = 0u64;
    let mut j = i as i64;
    while rest > 0 && j > 0 {
        // largest k with C(k, j) <= rest
        let mut k = j;
        while binomial(k + 1, j) <= rest {
            k += 1;
        }
        rest -= binomial(k, j);
        out += binomial(k + 1, j + 1);
        j -= 1;
    }
    out
}

/// `dim_k [R/I]_d` for `d = 0..=up_to`, trailing zeros removed.
pub fn hilbert_function<K: Field>(ideal: &Ideal<K>, up_to: u32) -> Result<HVector> {
    let n = ideal.nvars() as i64;
    if ideal.is_zero_ideal() {
        let v = (0..=up_to as i64).map(|d| binomial(n + d - 1, d)).collect();
        return Ok(HVector::new(v));
    }
    let gb = ideal.gb()?;
    let v = (0..=up_to).map(|d| gb.count_standard(d) as u64).collect();
    Ok(HVector::new(v))
}

/// The full Hilbert function of an artinian quotient.
pub fn hvector<K: Field>(ideal: &Ideal<K>) -> Result<HVector> {
    if !is_artinian(ideal)? {
        return Err(Error::NotArtinian);
    }
    let gb = ideal.gb()?;
    let mut v = Vec::new();
    let mut d = 0;
    loop {
        let c = gb.count_standard(d);
        if c == 0 {
            break;
        }
        v.push(c as u64);
        d += 1;
    }
    Ok(HVector::new(v))
}

pub fn is_artinian<K: Field>(ideal: &Ideal<K>) -> Result<bool> {
    if ideal.is_zero_ideal() {
        return Ok(false);
    }
    Ok(leads_are_artinian(ideal.nvars(), ideal.gb()?.leading_monomials()))
}

/// Socle dimension in each degree `0..=e`.
pub fn socle<K: Field>(ideal: &Ideal<K>) -> Result<Vec<usize>> {
    Quotient::new(ideal)?.socle()
}

/// Minimal generator count per degree, for degrees `<= up_to`.
pub fn minimal_generator_counts<K: Field>(ideal: &Ideal<K>, up_to: u32) -> Result<BTreeMap<u32, usize>> {
    let mut out = BTreeMap::new();
    if ideal.is_zero_ideal() {
        return Ok(out);
    }
    let gb = ideal.gb()?;
    if gb.is_unit() {
        out.insert(0, 1);
        return Ok(out);
    }
    for g in gb.minimal_generators().expect("homogeneous ideal") {
        let d = g.degree().expect("nonzero generator");
        if d <= up_to {
            *out.entry(d).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Basis of `[I]_d` as `m - NF(m)` over the nonstandard monomials `m` of degree `d`.
pub fn degree_part_basis<K: Field>(ideal: &Ideal<K>, d: u32) -> Result<Vec<Polynomial<K>>> {
    if ideal.is_zero_ideal() {
        return Ok(Vec::new());
    }
    let gb = ideal.gb()?;
    let ring = ideal.ring();
    let one = ring.field().one();
    let mut out = Vec::new();
    for m in crate::algebra::monomials_of_degree(ring.nvars(), d) {
        if gb.is_standard(&m) {
            continue;
        }
        let p = ring.term(m, one.clone());
        let nf = gb.normal_form(&p)?;
        out.push(p.sub(&nf)?);
    }
    Ok(out)
}

/// Everything read off a homogeneous ideal by [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricClassification {
    pub r: usize,
    pub artinian: bool,
    pub gorenstein: bool,
    pub socle_degree: Option<usize>,
    pub hvec: HVector,
    pub socle: Vec<usize>,
    pub nu_by_degree: BTreeMap<u32, usize>,
    pub presented_by_quadrics: bool,
    pub contains_quadric_rs: bool,
    pub had_linear_forms: bool,
}

impl QuadricClassification {
    /// Number of minimal quadric generators.
    pub fn nu(&self) -> usize {
        self.nu_by_degree.get(&2).copied().unwrap_or(0)
    }

    pub fn h2(&self) -> u64 {
        self.hvec.get(2)
    }

    /// `C(r,2) - h_2`.
    pub fn alpha(&self) -> i64 {
        binomial(self.r as i64, 2) as i64 - self.h2() as i64
    }

    /// One-line summary, e.g. `(1,6,15,20,15,6,1) gorenstein presented_by_quadrics h2=15`.
    pub fn headline(&self) -> String {
        let mut s = self.hvec.to_string();
        if self.gorenstein {
            s.push_str(" gorenstein");
        } else if self.artinian {
            s.push_str(" not_gorenstein");
        } else {
            s.push_str(" not_artinian");
        }
        if self.presented_by_quadrics {
            s.push_str(" presented_by_quadrics");
        } else {
            s.push_str(" not_presented_by_quadrics");
        }
        s.push_str(&format!(" h2={}", self.h2()));
        s
    }
}

/// Attempts at finding a quadric regular sequence inside `I`.
pub const QUADRIC_RS_ATTEMPTS: usize = 5;
/// Over Q, candidate sequences are tested after reduction modulo this prime.
pub const RS_CHECK_PRIME: u64 = 32003;

fn is_quadric_ci<L: Field>(ring: &Ring<L>, qs: Vec<Polynomial<L>>) -> Result<bool> {
    let ci = Ideal::new(ring, qs)?;
    if !is_artinian(&ci)? {
        return Ok(false);
    }
    Ok(hvector(&ci)? == HVector::complete_intersection(&vec![2; ring.nvars()]))
}

/// Whether `[I]_2` contains `r` quadrics forming a regular sequence. Tries the first
/// `r` quadric generators, then seeded random combinations of `[I]_2`.
///
/// Over Q a candidate counts only if its reduction mod [`RS_CHECK_PRIME`] is a complete
/// intersection, which implies it is one over Q. A `false` is therefore not a proof.
pub fn contains_quadric_regular_sequence<K: Field>(ideal: &Ideal<K>, seed: u64) -> Result<bool> {
    let r = ideal.nvars();
    let ring = ideal.ring();
    let basis = degree_part_basis(ideal, 2)?;
    if basis.len() < r {
        return Ok(false);
    }
    let modular = if ring.field().characteristic() == 0 {
        Some(PolyRing::graded(r, PrimeField::new(RS_CHECK_PRIME)?)?)
    } else {
        None
    };
    let test = |qs: Vec<Polynomial<K>>| -> Result<bool> {
        let Some(fp) = &modular else {
            return is_quadric_ci(ring, qs);
        };
        match qs.iter().map(|q| q.reduce_mod(fp)).collect::<Option<Vec<_>>>() {
            Some(reduced) => is_quadric_ci(fp, reduced),
            None => Ok(false),
        }
    };
    let gens: Vec<Polynomial<K>> = ideal
        .gens()
        .iter()
        .filter(|g| g.degree() == Some(2))
        .take(r)
        .cloned()
        .collect();
    if gens.len() == r && test(gens)? {
        return Ok(true);
    }
    let field = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..QUADRIC_RS_ATTEMPTS {
        let mut qs = Vec::with_capacity(r);
        for _ in 0..r {
            let mut q = ring.zero();
            for b in &basis {
                let c = field.random(&mut rng, 20);
                q = q.add(&b.scale(&c))?;
            }
            qs.push(q);
        }
        if test(qs)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Full classification record; `seed` drives the regular-sequence search.
pub fn classify<K: Field>(ideal: &Ideal<K>, seed: u64) -> Result<QuadricClassification> {
    let r = ideal.nvars();
    let artinian = is_artinian(ideal)?;
    let (hvec, socle_dims) = if artinian {
        let q = Quotient::new(ideal)?;
        (HVector::new(q.hilbert()), q.socle()?)
    } else {
        let bound = ideal.max_gen_degree() + 1;
        (hilbert_function(ideal, bound)?, Vec::new())
    };
    let nu_by_degree = minimal_generator_counts(ideal, u32::MAX)?;
    let had_linear_forms = nu_by_degree.get(&1).is_some_and(|&c| c > 0);
    let presented_by_quadrics = !nu_by_degree.is_empty()
        && nu_by_degree.iter().all(|(&d, &c)| d == 2 || c == 0);
    let gorenstein = artinian && socle_dims.iter().sum::<usize>() == 1;
    let contains_quadric_rs = contains_quadric_regular_sequence(ideal, seed)?;
    Ok(QuadricClassification {
        r,
        artinian,
        gorenstein,
        socle_degree: if artinian { hvec.socle_degree() } else { None },
        hvec,
        socle: socle_dims,
        nu_by_degree,
        presented_by_quadrics,
        contains_quadric_rs,
        had_linear_forms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PolyRing, PrimeField, Rationals};

    #[test]
    fn hvector_text() {
        let h: HVector = "(1,6,15,20,15,6,1)".parse().unwrap();
        assert_eq!(h.to_string(), "(1,6,15,20,15,6,1)");
        assert!(h.is_symmetric());
        assert_eq!(h.socle_degree(), Some(6));
        assert_eq!(HVector::complete_intersection(&[2; 6]), h);
        assert_eq!(HVector::new(vec![1, 2, 0, 0]).to_string(), "(1,2)");
        assert!("1,2".parse::<HVector>().is_err());
    }

    #[test]
    fn macaulay() {
        assert_eq!(macaulay_bound(3, 1), 6);
        assert_eq!(macaulay_bound(4, 2), 5);
        assert_eq!(macaulay_bound(5, 2), 7);
        assert!(HVector::new(vec![1, 3, 6, 10]).satisfies_macaulay());
        assert!(!HVector::new(vec![1, 2, 4]).satisfies_macaulay());
    }

    #[test]
    fn zero_ideal_counts_monomials() {
        let r = PolyRing::graded(4, Rationals).unwrap();
        let h = hilbert_function(&Ideal::zero(&r), 3).unwrap();
        assert_eq!(h.values(), &[1, 4, 10, 20]);
    }

    #[test]
    fn artinian_checks() {
        let r = PolyRing::graded(2, Rationals).unwrap();
        assert!(!is_artinian(&Ideal::parse(&r, "x1*x2").unwrap()).unwrap());
        assert!(!is_artinian(&Ideal::parse(&r, "x1^2, x1*x2").unwrap()).unwrap());
        assert!(is_artinian(&Ideal::parse(&r, "x1^2, x2^2").unwrap()).unwrap());
    }

    #[test]
    fn classify_ci() {
        let r = PolyRing::graded(4, PrimeField::new(32003).unwrap()).unwrap();
        let i = Ideal::parse(&r, "x1^2, x2^2, x3^2, x4^2").unwrap();
        let c = classify(&i, 1).unwrap();
        assert!(c.gorenstein && c.presented_by_quadrics && c.contains_quadric_rs);
        assert_eq!(c.socle_degree, Some(4));
        assert_eq!(c.alpha(), 0);
        assert_eq!(c.headline(), "(1,4,6,4,1) gorenstein presented_by_quadrics h2=6");
    }

    #[test]
    fn cubic_generator_is_not_quadric() {
        let r = PolyRing::graded(2, Rationals).unwrap();
        let i = Ideal::parse(&r, "x1^2, x2^3").unwrap();
        let c = classify(&i, 0).unwrap();
        assert!(c.gorenstein);
        assert!(!c.presented_by_quadrics);
        assert!(!c.contains_quadric_rs);
        assert_eq!(c.nu_by_degree, BTreeMap::from([(2, 1), (3, 1)]));
    }
}
