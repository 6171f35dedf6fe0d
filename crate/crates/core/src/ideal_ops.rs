//! Sums, colons and intersections of homogeneous ideals, plus sampling of general
//! linear forms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial, Ring, RingExt};
use crate::error::{Error, Result};
use crate::groebner::{groebner_polys, GbOptions};
use crate::ideal::Ideal;
use crate::quotient::{leads_are_artinian, Quotient};

/// `I + J`, minimalized.
pub fn ideal_sum<K: Field>(i: &Ideal<K>, j: &Ideal<K>) -> Result<Ideal<K>> {
    i.check_compatible(j)?;
    let mut gens = i.gens().to_vec();
    gens.extend(j.gens().iter().cloned());
    Ideal::new(i.ring(), gens)?.minimalize()
}

/// `I + (f_1, ..., f_k)`, minimalized.
pub fn add_forms<K: Field>(i: &Ideal<K>, forms: &[Polynomial<K>]) -> Result<Ideal<K>> {
    let extra = Ideal::new(i.ring(), forms.to_vec())?;
    ideal_sum(i, &extra)
}

fn check_form<K: Field>(i: &Ideal<K>, f: &Polynomial<K>) -> Result<()> {
    if f.ring().nvars() != i.nvars() {
        return Err(Error::RingMismatch);
    }
    if f.field() != i.field() {
        return Err(Error::FieldMismatch(
            f.field().spec().to_string(),
            i.field().spec().to_string(),
        ));
    }
    if f.is_zero() {
        return Err(Error::Precondition("colon by the zero form".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    Ok(())
}

fn is_artinian_ideal<K: Field>(i: &Ideal<K>) -> Result<bool> {
    if i.is_zero_ideal() {
        return Ok(false);
    }
    let gb = i.gb()?;
    Ok(leads_are_artinian(i.nvars(), gb.leading_monomials()))
}

/// `I : f`. Artinian `I` goes through degreewise linear algebra, everything else
/// through elimination.
pub fn colon_form<K: Field>(i: &Ideal<K>, f: &Polynomial<K>) -> Result<Ideal<K>> {
    check_form(i, f)?;
    if is_artinian_ideal(i)? {
        colon_form_linear(i, f)
    } else {
        colon_form_elimination(i, f)
    }
}

/// Kernel generators of `I : J` in standard-monomial coordinates of `R/I`, together
/// with `I` and everything of degree above the socle degree minus `min deg J`.
fn colon_linear<K: Field>(i: &Ideal<K>, fs: &[Polynomial<K>]) -> Result<Ideal<K>> {
    let q = Quotient::new(i)?;
    let ring = i.ring();
    let Some(top) = q.top() else {
        return Ok(Ideal::unit(ring));
    };
    let a = fs.iter().filter_map(|f| f.degree()).min().unwrap_or(0) as usize;
    let mut gens = i.gens().to_vec();
    // every form of degree > top - a is killed
    let full = (top + 1).saturating_sub(a);
    for d in 0..full {
        let deg_ok: Vec<Polynomial<K>> = fs
            .iter()
            .filter(|f| d + f.degree().unwrap_or(0) as usize <= top)
            .cloned()
            .collect();
        gens.extend(q.common_annihilator(&deg_ok, d)?);
    }
    let one = ring.field().one();
    gens.extend(q.basis(full).iter().map(|m| ring.term(*m, one.clone())));
    Ideal::new(ring, gens)?.minimalize()
}

/// `I : f` for artinian `I` by solving `g f = 0` in each graded piece of `R/I`.
pub fn colon_form_linear<K: Field>(i: &Ideal<K>, f: &Polynomial<K>) -> Result<Ideal<K>> {
    check_form(i, f)?;
    colon_linear(i, std::slice::from_ref(f))
}

/// Ring with one extra variable `t` in front, ordered so that `t` is eliminated.
fn elimination_ring<K: Field>(ring: &Ring<K>) -> Result<Ring<K>> {
    let big = ring.with_nvars(ring.nvars() + 1)?;
    Ok(big.with_order(MonomialOrder::Block(1)))
}

/// Generators of `I ∩ J` via `(t I + (1 - t) J) ∩ R`.
fn intersect_gens<K: Field>(
    ring: &Ring<K>,
    i: &[Polynomial<K>],
    j: &[Polynomial<K>],
) -> Result<Vec<Polynomial<K>>> {
    let big = elimination_ring(ring)?;
    let t = big.var(0);
    let one_minus_t = big.one().sub(&t)?;
    let mut gens = Vec::with_capacity(i.len() + j.len());
    for g in i {
        gens.push(g.shifted_into(&big, 1)?.mul(&t)?);
    }
    for g in j {
        gens.push(g.shifted_into(&big, 1)?.mul(&one_minus_t)?);
    }
    let gb = groebner_polys(&big, &gens, GbOptions::default())?;
    let mut out = Vec::new();
    for p in gb.basis() {
        if p.terms().iter().all(|(m, _)| m.exponent(0) == 0) {
            out.push(unshift(p, ring));
        }
    }
    Ok(out)
}

fn unshift<K: Field>(p: &Polynomial<K>, ring: &Ring<K>) -> Polynomial<K> {
    let n = ring.nvars();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let e: Vec<u32> = (0..n).map(|k| m.exponent(k + 1)).collect();
            (Monomial::from_exponents(&e), c.clone())
        })
        .collect();
    ring.from_terms(terms)
}

/// Exact quotient `p / f`; errors if `f` does not divide `p`.
pub fn divide_exact<K: Field>(p: &Polynomial<K>, f: &Polynomial<K>) -> Result<Polynomial<K>> {
    let fld = p.field().clone();
    let ring = p.ring().clone();
    let f = f.in_ring(&ring)?;
    let (Some(lm), Some(lc)) = (f.leading_monomial().copied(), f.leading_coeff().cloned()) else {
        return Err(Error::DivisionByZero);
    };
    let inv = fld.inv(&lc).ok_or(Error::DivisionByZero)?;
    let mut rest = p.clone();
    let mut quot = Vec::new();
    while let Some(m) = rest.leading_monomial().copied() {
        let Some(q) = m.div(&lm) else {
            return Err(Error::Precondition(format!("{f} does not divide {p}")));
        };
        let c = fld.mul(rest.leading_coeff().expect("nonzero"), &inv);
        let step = f.mul_monomial(&q).scale(&c);
        rest = rest.sub(&step)?;
        quot.push((q, c));
    }
    Ok(ring.from_terms(quot))
}

/// `I : f` through elimination, valid for any homogeneous `I`.
pub fn colon_form_elimination<K: Field>(i: &Ideal<K>, f: &Polynomial<K>) -> Result<Ideal<K>> {
    check_form(i, f)?;
    let ring = i.ring();
    if i.is_zero_ideal() {
        return Ok(Ideal::zero(ring));
    }
    let f = f.in_ring(ring)?;
    let meet = intersect_gens(ring, i.gens(), std::slice::from_ref(&f))?;
    let gens = meet
        .iter()
        .map(|g| divide_exact(g, &f))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)?.minimalize()
}

/// `I : J = ⋂ I : f` over the generators `f` of `J`.
pub fn colon_ideal<K: Field>(i: &Ideal<K>, j: &Ideal<K>) -> Result<Ideal<K>> {
    i.check_compatible(j)?;
    if j.is_zero_ideal() {
        return Err(Error::NoGenerators);
    }
    if is_artinian_ideal(i)? {
        return colon_linear(i, j.gens());
    }
    let mut acc: Option<Ideal<K>> = None;
    for f in j.gens() {
        let c = colon_form_elimination(i, f)?;
        acc = Some(match acc {
            None => c,
            Some(a) => intersect(&a, &c)?,
        });
    }
    Ok(acc.expect("at least one generator"))
}

/// `I ∩ J` through elimination.
pub fn intersect<K: Field>(i: &Ideal<K>, j: &Ideal<K>) -> Result<Ideal<K>> {
    i.check_compatible(j)?;
    let ring = i.ring();
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return Ok(Ideal::zero(ring));
    }
    let gens = intersect_gens(ring, i.gens(), j.gens())?;
    Ideal::new(ring, gens)?.minimalize()
}

/// The form `Σ c_i x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm<K: Field> {
    coeffs: Vec<K::Elem>,
}

impl<K: Field> LinearForm<K> {
    pub fn new(field: &K, coeffs: Vec<K::Elem>) -> Result<Self> {
        if coeffs.iter().all(|c| field.is_zero(c)) {
            return Err(Error::Precondition("linear form with all coefficients zero".into()));
        }
        Ok(LinearForm { coeffs })
    }

    /// `x_1 + ... + x_k` in `n` variables.
    pub fn sum_of_first(field: &K, n: usize, k: usize) -> Result<Self> {
        let coeffs = (0..n)
            .map(|i| if i < k { field.one() } else { field.zero() })
            .collect();
        LinearForm::new(field, coeffs)
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn to_poly(&self, ring: &Ring<K>) -> Polynomial<K> {
        ring.linear_form(&self.coeffs)
    }
}

/// How a "general" choice picks among sampled candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    /// Lexicographically largest score (ranks).
    MaxRank,
    /// Pointwise smallest score (Hilbert functions); first wins on ties.
    GenericHilbert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericityPolicy {
    pub num_samples: usize,
    pub seed: u64,
    pub selection: Selection,
}

impl Default for GenericityPolicy {
    fn default() -> Self {
        GenericityPolicy {
            num_samples: 5,
            seed: 0,
            selection: Selection::GenericHilbert,
        }
    }
}

impl GenericityPolicy {
    pub fn seeded(seed: u64) -> Self {
        GenericityPolicy {
            seed,
            ..Default::default()
        }
    }

    pub fn with_selection(mut self, selection: Selection) -> Self {
        self.selection = selection;
        self
    }
}

/// A sampled general linear form with its provenance.
#[derive(Debug, Clone)]
pub struct GeneralForm<K: Field> {
    pub form: LinearForm<K>,
    pub score: Vec<i64>,
    pub seed: u64,
    pub sample_index: usize,
    pub warnings: Vec<String>,
}

/// Coefficient range for random rational forms.
pub const RATIONAL_FORM_BOUND: i64 = 20;

pub(crate) fn random_linear_form<K: Field>(field: &K, n: usize, rng: &mut ChaCha8Rng) -> LinearForm<K> {
    loop {
        let coeffs: Vec<K::Elem> = (0..n).map(|_| field.random(rng, RATIONAL_FORM_BOUND)).collect();
        if let Ok(l) = LinearForm::new(field, coeffs) {
            return l;
        }
    }
}

/// Small fields where a sampled form may fail to be general.
pub fn small_field_warning<K: Field>(field: &K) -> Option<String> {
    match field.order() {
        Some(q) if q <= 3 => Some(format!(
            "over {} a general linear form may not exist; results are for the sampled forms only",
            field.spec()
        )),
        _ => None,
    }
}

/// Samples `policy.num_samples` nonzero forms and keeps the best under `score`.
pub fn general_linear_form<K: Field, F>(
    ring: &Ring<K>,
    policy: &GenericityPolicy,
    mut score: F,
) -> Result<GeneralForm<K>>
where
    F: FnMut(&LinearForm<K>) -> Result<Vec<i64>>,
{
    if policy.num_samples == 0 {
        return Err(Error::Precondition("num_samples must be at least 1".into()));
    }
    let field = ring.field();
    let n = ring.nvars();
    let mut warnings = Vec::new();
    if let Some(w) = small_field_warning(field) {
        warnings.push(w);
    }
    if let Some(q) = field.order() {
        let distinct = (q as f64).powi(n as i32) - 1.0;
        if distinct < policy.num_samples as f64 {
            warnings.push(format!(
                "only {distinct} nonzero linear forms exist; samples repeat"
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut best: Option<(LinearForm<K>, Vec<i64>, usize)> = None;
    for k in 0..policy.num_samples {
        let l = random_linear_form(field, n, &mut rng);
        let s = score(&l)?;
        let better = match &best {
            None => true,
            Some((_, b, _)) => match policy.selection {
                Selection::MaxRank => s > *b,
                Selection::GenericHilbert => {
                    s.len() <= b.len()
                        && s.iter().zip(b.iter()).all(|(x, y)| x <= y)
                        && s != *b
                }
            },
        };
        if better {
            best = Some((l, s, k));
        }
    }
    let (form, score, sample_index) = best.expect("at least one sample");
    Ok(GeneralForm {
        form,
        score,
        seed: policy.seed,
        sample_index,
        warnings,
    })
}

/// Hilbert function of `R/(I : L)` as a score for [`general_linear_form`]; general forms
/// maximize it, so pair it with [`Selection::MaxRank`].
pub fn colon_hilbert_score<K: Field>(i: &Ideal<K>) -> impl FnMut(&LinearForm<K>) -> Result<Vec<i64>> + '_ {
    move |l| {
        let c = colon_form(i, &l.to_poly(i.ring()))?;
        let q = Quotient::new(&c)?;
        Ok(q.hilbert().into_iter().map(|h| h as i64).collect())
    }
}
