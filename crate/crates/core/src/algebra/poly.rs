//! Polynomial rings `k[x1..xn]` and sparse polynomials in canonical sorted form.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::{Field, PrimeField};
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

/// `k[x1..xn]` together with the monomial order used to sort terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing<K: Field> {
    nvars: usize,
    field: K,
    order: MonomialOrder,
}

/// Shared handle to a ring; every polynomial carries one.
pub type Ring<K> = Arc<PolyRing<K>>;

/// A coefficient paired with its monomial.
pub type Term<K> = (Monomial, <K as Field>::Elem);

impl<K: Field> PolyRing<K> {
    pub fn new(nvars: usize, field: K, order: MonomialOrder) -> Result<Ring<K>> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::BadVariableCount {
                got: nvars,
                max: MAX_VARS,
            });
        }
        Ok(Arc::new(PolyRing {
            nvars,
            field,
            order,
        }))
    }

    /// Degrevlex ring, the default for everything outside elimination.
    pub fn graded(nvars: usize, field: K) -> Result<Ring<K>> {
        Self::new(nvars, field, MonomialOrder::DegRevLex)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring<K> {
        Arc::new(PolyRing {
            nvars: self.nvars,
            field: self.field.clone(),
            order,
        })
    }

    pub fn with_nvars(&self, nvars: usize) -> Result<Ring<K>> {
        Self::new(nvars, self.field.clone(), self.order)
    }
}

/// Constructors taking the shared handle.
pub trait RingExt<K: Field> {
    fn zero(&self) -> Polynomial<K>;
    fn one(&self) -> Polynomial<K>;
    fn constant(&self, c: K::Elem) -> Polynomial<K>;
    fn var(&self, i: usize) -> Polynomial<K>;
    fn term(&self, m: Monomial, c: K::Elem) -> Polynomial<K>;
    fn from_terms(&self, terms: Vec<Term<K>>) -> Polynomial<K>;
    fn linear_form(&self, coeffs: &[K::Elem]) -> Polynomial<K>;
}

impl<K: Field> RingExt<K> for Ring<K> {
    fn zero(&self) -> Polynomial<K> {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    fn one(&self) -> Polynomial<K> {
        self.constant(self.field.one())
    }

    fn constant(&self, c: K::Elem) -> Polynomial<K> {
        self.term(Monomial::one(), c)
    }

    fn var(&self, i: usize) -> Polynomial<K> {
        assert!(i < self.nvars, "variable index out of range");
        self.term(Monomial::var(i), self.field.one())
    }

    fn term(&self, m: Monomial, c: K::Elem) -> Polynomial<K> {
        assert!(m.fits(self.nvars), "monomial uses too many variables");
        let terms = if self.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    /// Sorts, merges equal monomials and drops zeros.
    fn from_terms(&self, mut terms: Vec<Term<K>>) -> Polynomial<K> {
        let order = self.order;
        let f = &self.field;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term<K>> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            assert!(m.fits(self.nvars), "monomial uses too many variables");
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !f.is_zero(c));
        Polynomial {
            ring: self.clone(),
            terms: out,
        }
    }

    fn linear_form(&self, coeffs: &[K::Elem]) -> Polynomial<K> {
        assert_eq!(coeffs.len(), self.nvars);
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(i), c.clone()))
            .collect();
        self.from_terms(terms)
    }
}

/// A polynomial: terms strictly descending in the ring's order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial<K: Field> {
    ring: Ring<K>,
    terms: Vec<Term<K>>,
}

pub(crate) fn same_ring<K: Field>(a: &Ring<K>, b: &Ring<K>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<K: Field> PartialEq for Polynomial<K> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<K: Field> Eq for Polynomial<K> {}

impl<K: Field> Polynomial<K> {
    /// Wraps terms already in canonical order. Callers inside the crate guarantee the invariant.
    pub(crate) fn from_sorted(ring: Ring<K>, terms: Vec<Term<K>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    pub fn field(&self) -> &K {
        &self.ring.field
    }

    pub fn terms(&self) -> &[Term<K>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<K>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&K::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> K::Elem {
        self.terms
            .iter()
            .find(|t| t.0 == *m)
            .map(|t| t.1.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let one = self.field().one();
        Ok(Self::from_sorted(
            self.ring.clone(),
            merge_add(&self.terms, &other.terms, &one, &Monomial::one(), &self.ring),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m1 = self.field().neg(&self.field().one());
        Ok(Self::from_sorted(
            self.ring.clone(),
            merge_add(&self.terms, &other.terms, &m1, &Monomial::one(), &self.ring),
        ))
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        let terms = self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect();
        Self::from_sorted(self.ring.clone(), terms)
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect();
        Self::from_sorted(self.ring.clone(), terms)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        assert!(
            self.terms.is_empty() || self.terms[0].0.mul(m).fits(self.ring.nvars),
            "monomial uses too many variables"
        );
        let terms = self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect();
        Self::from_sorted(self.ring.clone(), terms)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field();
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), f.mul(ca, cb)));
            }
        }
        Ok(self.ring.from_terms(prods))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Image under `x_i -> images[i]`.
    pub fn substitute_linear(&self, images: &[Polynomial<K>]) -> Result<Self> {
        if images.len() != self.ring.nvars {
            return Err(Error::Precondition(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars,
                images.len()
            )));
        }
        for img in images {
            if !same_ring(img.ring(), &self.ring) {
                return Err(Error::RingMismatch);
            }
        }
        // cache powers of each image
        let max_exp: Vec<u32> = (0..self.ring.nvars)
            .map(|i| self.terms.iter().map(|t| t.0.exponent(i)).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Polynomial<K>>> = images
            .iter()
            .zip(&max_exp)
            .map(|(img, &me)| {
                let mut v = vec![self.ring.one()];
                for k in 1..=me as usize {
                    let next = v[k - 1].mul(img).expect("same ring");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc: Vec<Term<K>> = Vec::new();
        for (m, c) in &self.terms {
            let mut p = self.ring.constant(c.clone());
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    p = p.mul(&pw[e])?;
                }
            }
            acc.extend(p.terms);
        }
        Ok(self.ring.from_terms(acc))
    }

    /// The same polynomial viewed in another ring with the same field (re-sorted).
    pub fn in_ring(&self, ring: &Ring<K>) -> Result<Self> {
        if ring.field != self.ring.field {
            return Err(Error::RingMismatch);
        }
        if self.terms.iter().any(|t| !t.0.fits(ring.nvars)) {
            return Err(Error::RingMismatch);
        }
        Ok(ring.from_terms(self.terms.clone()))
    }

    /// Moves every variable index up by `offset`, landing in `ring`.
    pub fn shifted_into(&self, ring: &Ring<K>, offset: usize) -> Result<Self> {
        if ring.field != self.ring.field || self.ring.nvars + offset > ring.nvars {
            return Err(Error::RingMismatch);
        }
        Ok(ring.from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.shifted(offset), c.clone()))
                .collect(),
        ))
    }

    /// Image of a rational polynomial in `ring` over GF(p); `None` if a denominator
    /// vanishes mod p or the coefficients are not rational.
    pub fn reduce_mod(&self, ring: &Ring<PrimeField>) -> Option<Polynomial<PrimeField>> {
        if self.ring.nvars != ring.nvars {
            return None;
        }
        let f = ring.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (num, den) = self.ring.field.as_ratio(c)?;
            let c = f.from_ratio(&num, &den).ok()?;
            if !f.is_zero(&c) {
                terms.push((*m, c));
            }
        }
        Some(ring.from_terms(terms))
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0.degree() == d)
            .cloned()
            .collect();
        Self::from_sorted(self.ring.clone(), terms)
    }
}

/// `a + c * m * b` for canonical term lists, by a single merge.
pub(crate) fn merge_add<K: Field>(
    a: &[Term<K>],
    b: &[Term<K>],
    c: &K::Elem,
    m: &Monomial,
    ring: &PolyRing<K>,
) -> Vec<Term<K>> {
    let f = &ring.field;
    let order = ring.order;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(m);
        match order.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, f.mul(c, &b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let s = f.add(&a[i].1, &f.mul(c, &b[j].1));
                if !f.is_zero(&s) {
                    out.push((bm, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push((t.0.mul(m), f.mul(c, &t.1)));
    }
    out
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = field.signed_repr(c);
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
