//! Builders for Gorenstein algebras: quadric complete intersections, apolar ideals,
//! tensor products, the group tables and linkage chains.

pub mod recipe;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{monomials_of_degree, Field, PolyRing, Polynomial, Ring, RingExt};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ideal_ops::{
    colon_form, colon_hilbert_score, colon_ideal, general_linear_form, GenericityPolicy, LinearForm, Selection,
};
use crate::invariants::{degree_part_basis, hvector, is_artinian, HVector, QuadricClassification};
use crate::linalg::Matrix;
use crate::quotient::Quotient;

/// Retry budget for randomized regular sequences.
pub const CI_ATTEMPTS: u64 = 10;
/// Retry budget for [`gorenstein_cut`].
pub const CUT_ATTEMPTS: u64 = 5;
/// Coefficient range for random rational coefficients in constructions.
pub const RATIONAL_BOUND: i64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiStyle {
    Monomial,
    Random(u64),
}

impl CiStyle {
    pub fn name(&self) -> &'static str {
        match self {
            CiStyle::Monomial => "monomial",
            CiStyle::Random(_) => "random",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            CiStyle::Monomial => None,
            CiStyle::Random(s) => Some(*s),
        }
    }
}

fn random_form<K: Field>(ring: &Ring<K>, d: u32, rng: &mut ChaCha8Rng) -> Polynomial<K> {
    let f = ring.field();
    let terms = monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .map(|m| (m, f.random(rng, RATIONAL_BOUND)))
        .collect::<Vec<_>>();
    ring.from_terms(terms)
}

fn random_combination<K: Field>(ring: &Ring<K>, basis: &[Polynomial<K>], rng: &mut ChaCha8Rng) -> Result<Polynomial<K>> {
    let f = ring.field();
    let mut acc = ring.zero();
    for b in basis {
        acc = acc.add(&b.scale(&f.random(rng, RATIONAL_BOUND)))?;
    }
    Ok(acc)
}

/// Whether `gens` (one per variable) have the Hilbert function of a complete intersection.
pub fn is_complete_intersection<K: Field>(ring: &Ring<K>, gens: &[Polynomial<K>]) -> Result<bool> {
    if gens.len() != ring.nvars() || gens.iter().any(|g| g.is_zero()) {
        return Ok(false);
    }
    let degrees: Vec<u32> = gens.iter().map(|g| g.degree().expect("nonzero")).collect();
    let ci = Ideal::new(ring, gens.to_vec())?;
    if !is_artinian(&ci)? {
        return Ok(false);
    }
    Ok(hvector(&ci)? == HVector::complete_intersection(&degrees))
}

/// `r` quadrics forming a regular sequence.
pub fn quadric_ci<K: Field>(field: &K, r: usize, style: CiStyle) -> Result<Ideal<K>> {
    let ring = PolyRing::graded(r, field.clone())?;
    match style {
        CiStyle::Monomial => {
            let gens = (0..r).map(|i| ring.var(i).pow(2)).collect();
            Ok(Ideal::new(&ring, gens)?
                .with_meta("construction", format!("ci r={r} style=monomial")))
        }
        CiStyle::Random(seed) => {
            for attempt in 0..CI_ATTEMPTS {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
                let gens: Vec<_> = (0..r).map(|_| random_form(&ring, 2, &mut rng)).collect();
                if is_complete_intersection(&ring, &gens)? {
                    return Ok(Ideal::new(&ring, gens)?
                        .with_meta("construction", format!("ci r={r} style=random"))
                        .with_meta("seed", seed.wrapping_add(attempt)));
                }
            }
            Err(Error::GenericityFailure {
                what: "random quadric complete intersection".into(),
                attempts: CI_ATTEMPTS as usize,
            })
        }
    }
}

/// A homogeneous form in the dual variables `y1..yr`, acted on by contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualForm<K: Field> {
    poly: Polynomial<K>,
}

impl<K: Field> DualForm<K> {
    pub fn new(poly: Polynomial<K>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::Precondition("dual form must be nonzero".into()));
        }
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous(poly.to_string()));
        }
        Ok(DualForm { poly })
    }

    /// Random form of degree `e` with every coefficient drawn from the seeded stream.
    pub fn generic(field: &K, r: usize, e: u32, seed: u64) -> Result<Self> {
        let ring = PolyRing::graded(r, field.clone())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DualForm::new(random_form(&ring, e, &mut rng))
    }

    /// `y1^2 + ... + yr^2`.
    pub fn sum_of_squares(field: &K, r: usize) -> Result<Self> {
        let ring = PolyRing::graded(r, field.clone())?;
        let mut acc = ring.zero();
        for i in 0..r {
            acc = acc.add(&ring.var(i).pow(2))?;
        }
        DualForm::new(acc)
    }

    pub fn poly(&self) -> &Polynomial<K> {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree().expect("nonzero")
    }

    pub fn ring(&self) -> &Ring<K> {
        self.poly.ring()
    }
}

/// Catalecticant matrix in degree `d`: rows are dual monomials of degree `e - d`,
/// columns monomials of degree `d`, entries the coefficient of their product in `F`.
pub fn catalecticant<K: Field>(form: &DualForm<K>, d: u32) -> Matrix<K> {
    let e = form.degree();
    let n = form.ring().nvars();
    let field = form.ring().field();
    let cols = monomials_of_degree(n, d);
    let rows = if d <= e { monomials_of_degree(n, e - d) } else { Vec::new() };
    let mut m = Matrix::zeros(field, rows.len(), cols.len());
    for (i, b) in rows.iter().enumerate() {
        for (j, a) in cols.iter().enumerate() {
            let c = form.poly.coefficient(&a.mul(b));
            if !field.is_zero(&c) {
                m.set(i, j, c);
            }
        }
    }
    m
}

/// `ann(F)` under contraction; `R/ann(F)` is Gorenstein of socle degree `deg F`.
pub fn apolar_ideal<K: Field>(form: &DualForm<K>) -> Result<Ideal<K>> {
    let e = form.degree();
    let ring = form.ring().clone();
    let field = ring.field().clone();
    let mut gens = Vec::new();
    for d in 1..=e {
        let cols = monomials_of_degree(ring.nvars(), d);
        for v in catalecticant(form, d).right_kernel() {
            let terms = cols
                .iter()
                .zip(v)
                .filter(|(_, c)| !field.is_zero(c))
                .map(|(m, c)| (*m, c))
                .collect();
            gens.push(ring.from_terms(terms));
        }
    }
    let one = field.one();
    gens.extend(
        monomials_of_degree(ring.nvars(), e + 1)
            .into_iter()
            .map(|m| ring.term(m, one.clone())),
    );
    Ok(Ideal::new(&ring, gens)?
        .minimalize()?
        .with_meta("construction", format!("apolar {}", form.poly)))
}

/// `I ⊗ J`: `I` on the first block of variables, `J` shifted onto the second.
pub fn tensor_algebras<K: Field>(i: &Ideal<K>, j: &Ideal<K>) -> Result<Ideal<K>> {
    if i.field() != j.field() {
        return Err(Error::FieldMismatch(
            i.field().spec().to_string(),
            j.field().spec().to_string(),
        ));
    }
    let (r1, r2) = (i.nvars(), j.nvars());
    let ring = i.ring().with_nvars(r1 + r2)?;
    let mut gens = Vec::with_capacity(i.gens().len() + j.gens().len());
    for g in i.gens() {
        gens.push(g.shifted_into(&ring, 0)?);
    }
    for g in j.gens() {
        gens.push(g.shifted_into(&ring, r1)?);
    }
    Ok(Ideal::new(&ring, gens)?.with_meta("construction", format!("tensor r1={r1} r2={r2}")))
}

/// `(x^2)` in one variable: the algebra `k[x]/(x^2)`.
pub fn dual_numbers<K: Field>(field: &K) -> Result<Ideal<K>> {
    let ring = PolyRing::graded(1, field.clone())?;
    Ideal::new(&ring, vec![ring.var(0).pow(2)])
}

/// The group `i` algebra in `r` variables: socle degree `r - i`.
pub fn group_table_algebra<K: Field>(field: &K, r: usize, i: usize) -> Result<Ideal<K>> {
    if r < 2 || i + 2 > r {
        return Err(Error::OutOfRange(format!("group {i} needs 0 <= i <= r-2, got r={r}")));
    }
    let acc = if i == 0 {
        quadric_ci(field, r, CiStyle::Monomial)?
    } else {
        let base = apolar_ideal(&DualForm::sum_of_squares(field, i + 2)?)?;
        let x2 = dual_numbers(field)?;
        let mut a = base;
        for _ in 0..(r - i - 2) {
            a = tensor_algebras(&a, &x2)?;
        }
        a
    };
    Ok(acc.with_meta("construction", format!("group r={r} i={i}")))
}

/// `h_2` of the group `i` algebra in `r` variables.
pub fn group_table_h2(r: usize, i: usize) -> i64 {
    use crate::algebra::binomial;
    binomial(r as i64, 2) as i64 - binomial(i as i64 + 2, 2) as i64 + 1
}

/// `I` viewed in `n >= r` variables with `x_{r+1}, ..., x_n` appended as generators.
pub fn embed<K: Field>(i: &Ideal<K>, n: usize) -> Result<Ideal<K>> {
    let r = i.nvars();
    if n < r {
        return Err(Error::OutOfRange(format!("cannot embed {r} variables into {n}")));
    }
    let ring = i.ring().with_nvars(n)?;
    let mut gens = Vec::new();
    for g in i.gens() {
        gens.push(g.shifted_into(&ring, 0)?);
    }
    gens.extend((r..n).map(|k| ring.var(k)));
    Ok(Ideal::new(&ring, gens)?.extend_meta(i.meta()))
}

/// A complete intersection used to link.
#[derive(Debug, Clone)]
pub struct LinkStep<K: Field> {
    pub ci_gens: Vec<Polynomial<K>>,
    pub note: String,
}

impl<K: Field> LinkStep<K> {
    pub fn degrees(&self) -> Vec<u32> {
        self.ci_gens.iter().filter_map(|g| g.degree()).collect()
    }
}

impl<K: Field> fmt::Display for LinkStep<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.degrees().iter().map(|d| d.to_string()).collect();
        write!(f, "link by ({}) {}", d.join(","), self.note)
    }
}

/// `h_J(i) = h_ci(i) - h_I(s - i)` with `s` the socle degree of the complete intersection.
pub fn expected_link_hvector(h_ci: &HVector, h_i: &HVector) -> Result<HVector> {
    let Some(s) = h_ci.socle_degree() else {
        return Err(Error::Linkage("empty complete intersection h-vector".into()));
    };
    if (0..h_i.len().max(h_ci.len())).any(|d| h_i.get(d) > h_ci.get(d)) {
        return Err(Error::Linkage(format!("{h_i} is not bounded by {h_ci}")));
    }
    let mut out = Vec::with_capacity(s + 1);
    for d in 0..=s {
        let v = h_ci.get(d) as i64 - h_i.get(s - d) as i64;
        if v < 0 {
            return Err(Error::Linkage(format!("negative value in degree {d}")));
        }
        out.push(v as u64);
    }
    Ok(HVector::new(out))
}

/// A general complete intersection inside `I` with the given generator degrees.
pub fn general_link_step<K: Field>(i: &Ideal<K>, degrees: &[u32], seed: u64) -> Result<LinkStep<K>> {
    let ring = i.ring();
    if degrees.len() != ring.nvars() {
        return Err(Error::Linkage(format!(
            "need {} generators, got {}",
            ring.nvars(),
            degrees.len()
        )));
    }
    let mut parts = std::collections::BTreeMap::new();
    for &d in degrees {
        if let std::collections::btree_map::Entry::Vacant(e) = parts.entry(d) {
            e.insert(degree_part_basis(i, d)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CI_ATTEMPTS {
        let mut gens = Vec::with_capacity(degrees.len());
        for d in degrees {
            gens.push(random_combination(ring, &parts[d], &mut rng)?);
        }
        if is_complete_intersection(ring, &gens)? {
            let d: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
            return Ok(LinkStep {
                ci_gens: gens,
                note: format!("general type ({}) seed {seed}", d.join(",")),
            });
        }
    }
    Err(Error::GenericityFailure {
        what: "complete intersection inside the ideal".into(),
        attempts: CI_ATTEMPTS as usize,
    })
}

/// `(ci) : I`, checked against the linkage Hilbert function formula.
pub fn link<K: Field>(i: &Ideal<K>, step: &LinkStep<K>) -> Result<Ideal<K>> {
    let ring = i.ring();
    for g in &step.ci_gens {
        if !i.contains(g)? {
            return Err(Error::Linkage(format!("{g} is not in the ideal being linked")));
        }
    }
    if !is_complete_intersection(ring, &step.ci_gens)? {
        return Err(Error::Linkage("generators are not a regular sequence".into()));
    }
    let ci = Ideal::new(ring, step.ci_gens.clone())?;
    let h_ci = hvector(&ci)?;
    let h_i = hvector(i)?;
    let expected = expected_link_hvector(&h_ci, &h_i)?;
    let j = colon_ideal(&ci, i)?;
    let actual = hvector(&j)?;
    if actual != expected {
        return Err(Error::Linkage(format!(
            "residual has {actual}, linkage formula gives {expected}"
        )));
    }
    let mut j = j.extend_meta(i.meta()).with_meta("link", step);
    if actual.is_empty() {
        j = j.with_meta("degenerate", "self-link gives the unit ideal");
    }
    Ok(j)
}

/// Links `I` by a general complete intersection of the given degrees.
pub fn link_general<K: Field>(i: &Ideal<K>, degrees: &[u32], seed: u64) -> Result<Ideal<K>> {
    let step = general_link_step(i, degrees, seed)?;
    link(i, &step)
}

/// Repeatedly embeds into one more variable and links by quadrics, from `start`
/// variables up to `end`.
pub fn double_link_tower<K: Field>(seed_ideal: &Ideal<K>, start: usize, end: usize, seed: u64) -> Result<Vec<Ideal<K>>> {
    let mut out = Vec::new();
    let mut cur = seed_ideal.clone();
    for n in start..=end {
        cur = embed(&cur, n)?;
        cur = link_general(&cur, &vec![2; n], seed.wrapping_add(n as u64))?.minimalize()?;
        out.push(cur.clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HfTarget {
    /// `h_2 = C(r,2) - 1`.
    Alpha1,
    /// `h_2 = C(r,2)`.
    Alpha0,
}

/// Two Gorenstein ideals in `r >= 7` variables with the same `h_2` but different
/// Hilbert functions.
pub fn nonunique_hf_pair<K: Field>(field: &K, r: usize, target: HfTarget, seed: u64) -> Result<(Ideal<K>, Ideal<K>)> {
    if r < 7 {
        return Err(Error::OutOfRange(format!("need r >= 7, got {r}")));
    }
    match target {
        HfTarget::Alpha1 => {
            let (a, b, start) = if r % 2 == 1 {
                (
                    apolar_ideal(&DualForm::sum_of_squares(field, 2)?)?,
                    apolar_ideal(&DualForm::sum_of_squares(field, 3)?)?,
                    4,
                )
            } else {
                (
                    group_table_algebra(field, 3, 0)?,
                    group_table_algebra(field, 4, 1)?,
                    5,
                )
            };
            let ta = double_link_tower(&a, start, r, seed)?;
            let tb = double_link_tower(&b, start, r, seed.wrapping_add(1000))?;
            Ok((
                ta.last().expect("nonempty tower").clone(),
                tb.last().expect("nonempty tower").clone(),
            ))
        }
        HfTarget::Alpha0 => {
            let p = field.characteristic();
            if p != 0 && p <= r as u64 {
                return Err(Error::Precondition(format!(
                    "needs characteristic 0 or p > {r}, got {p}"
                )));
            }
            let ci = quadric_ci(field, r, CiStyle::Monomial)?;
            let ring = ci.ring().clone();
            let policy = GenericityPolicy::seeded(seed).with_selection(Selection::MaxRank);
            let g = general_linear_form(&ring, &policy, colon_hilbert_score(&ci))?;
            let general = colon_form(&ci, &g.form.to_poly(&ring))?
                .with_meta("construction", "squares : general L")
                .with_meta("seed", seed);
            let l5 = LinearForm::sum_of_first(field, r, 5)?;
            let special = colon_form(&ci, &l5.to_poly(&ring))?
                .with_meta("construction", "squares : (x1+...+x5)");
            Ok((general, special))
        }
    }
}

/// `I + (h - 1 general quadrics)` with Hilbert function `(1, r, 1)`.
pub fn gorenstein_cut<K: Field>(i: &Ideal<K>, seed: u64) -> Result<Ideal<K>> {
    let r = i.nvars();
    let q = Quotient::new(i)?;
    if q.socle()?.iter().sum::<usize>() != 1 {
        return Err(Error::Precondition("input is not Gorenstein".into()));
    }
    let nu = crate::invariants::minimal_generator_counts(i, u32::MAX)?;
    if nu.keys().any(|&d| d != 2) {
        return Err(Error::Precondition("input is not presented by quadrics".into()));
    }
    let target = HVector::new(vec![1, r as u64, 1]);
    let h = q.dim(2);
    if h == 1 {
        return if HVector::new(q.hilbert()) == target {
            Ok(i.clone())
        } else {
            Err(Error::Precondition(format!("h2 = 1 but Hilbert function is {:?}", q.hilbert())))
        };
    }
    let ring = i.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..CUT_ATTEMPTS {
        let mut gens = i.gens().to_vec();
        for _ in 0..h - 1 {
            gens.push(random_form(ring, 2, &mut rng));
        }
        let j = Ideal::new(ring, gens)?;
        let qj = Quotient::new(&j)?;
        if HVector::new(qj.hilbert()) == target && qj.socle()?.iter().sum::<usize>() == 1 {
            return Ok(j
                .minimalize()?
                .with_meta("construction", "gorenstein cut")
                .with_meta("seed", seed)
                .with_meta("attempt", attempt));
        }
    }
    Err(Error::GenericityFailure {
        what: "gorenstein cut to (1,r,1)".into(),
        attempts: CUT_ATTEMPTS as usize,
    })
}

/// For socle degree 4: whether `h_2 <= floor((r^2 + 2) / 3)`; `None` otherwise.
pub fn h2_bound_flag(c: &QuadricClassification) -> Option<bool> {
    if c.socle_degree != Some(4) {
        return None;
    }
    let r = c.r as u64;
    Some(c.h2() <= (r * r + 2) / 3)
}
