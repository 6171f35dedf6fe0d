//! Buchberger's algorithm with the normal selection strategy, the Gebauer–Möller
//! installation of the product and chain criteria, and full interreduction.
//!
//! Inputs are fed in by degree, after all S-pairs of the same degree. For homogeneous
//! input this makes the number of inputs that survive reduction in degree `d` equal to
//! the number of minimal generators of the ideal in degree `d`, which the engine records.

use std::sync::Arc;

use crate::algebra::poly::merge_add;
use crate::algebra::{
    monomials_of_degree, Field, Monomial, MonomialOrder, Polynomial, Ring, RingExt, Term,
};
use crate::error::{Error, Result};

/// Knobs for a Gröbner basis run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbOptions {
    pub product_criterion: bool,
    pub chain_criterion: bool,
    /// Any pair or input of (sugar) degree above this aborts the run.
    pub degree_cap: u32,
    /// Homogeneous input only: stop after degree `t`, giving a `t`-truncated basis.
    pub truncate: Option<u32>,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            product_criterion: true,
            chain_criterion: true,
            degree_cap: 40,
            truncate: None,
        }
    }
}

/// A reduced Gröbner basis: monic elements sorted by ascending leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<K: Field> {
    ring: Ring<K>,
    basis: Vec<Polynomial<K>>,
    leads: Vec<Monomial>,
    masks: Vec<u32>,
    truncated_at: Option<u32>,
    homogeneous: bool,
    min_gens: Vec<Polynomial<K>>,
}

struct Elem<K: Field> {
    terms: Vec<Term<K>>,
    lm: Monomial,
    mask: u32,
    sugar: u32,
    active: bool,
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<'a, K: Field> {
    ring: &'a Ring<K>,
    opts: GbOptions,
    elems: Vec<Elem<K>>,
    pairs: Vec<Pair>,
    unit: bool,
}

fn sugar_of<K: Field>(terms: &[Term<K>]) -> u32 {
    terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
}

impl<'a, K: Field> Engine<'a, K> {
    fn field(&self) -> &K {
        self.ring.field()
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.elems
            .iter()
            .position(|e| e.active && e.mask & !mask == 0 && e.lm.divides(m))
    }

    /// Full reduction against the active elements (all monic).
    fn reduce(&self, mut p: Vec<Term<K>>) -> Vec<Term<K>> {
        let f = self.field();
        let mut rem: Vec<Term<K>> = Vec::new();
        let mut head = 0;
        while head < p.len() {
            let (m, c) = &p[head];
            match self.find_reducer(m) {
                Some(g) => {
                    let e = &self.elems[g];
                    let q = m.div(&e.lm).expect("divides");
                    let factor = f.neg(c);
                    p = merge_add(&p[head..], &e.terms, &factor, &q, self.ring);
                    head = 0;
                }
                None => {
                    rem.push(p[head].clone());
                    head += 1;
                }
            }
        }
        rem
    }

    fn make_monic(&self, mut p: Vec<Term<K>>) -> Vec<Term<K>> {
        let f = self.field();
        if let Some((_, lc)) = p.first() {
            if !f.is_one(lc) {
                let inv = f.inv(lc).expect("nonzero");
                for t in p.iter_mut() {
                    t.1 = f.mul(&t.1, &inv);
                }
            }
        }
        p
    }

    fn spoly(&self, pair: &Pair) -> Vec<Term<K>> {
        let f = self.field();
        let (a, b) = (&self.elems[pair.i], &self.elems[pair.j]);
        let qa = pair.lcm.div(&a.lm).expect("divides");
        let qb = pair.lcm.div(&b.lm).expect("divides");
        let ta: Vec<Term<K>> = a.terms[1..].iter().map(|(m, c)| (m.mul(&qa), c.clone())).collect();
        let m1 = f.neg(&f.one());
        merge_add(&ta, &b.terms[1..], &m1, &qb, self.ring)
    }

    fn insert(&mut self, terms: Vec<Term<K>>, sugar: u32) {
        let lm = terms[0].0;
        if lm.is_one() {
            self.unit = true;
        }
        self.elems.push(Elem {
            mask: lm.support_mask(),
            lm,
            terms,
            sugar,
            active: true,
        });
        let h = self.elems.len() - 1;
        self.update(h);
    }

    /// Gebauer–Möller pair update for the new element `h`.
    fn update(&mut self, h: usize) {
        let hm = self.elems[h].lm;
        let hs = self.elems[h].sugar;
        let chain = self.opts.chain_criterion;
        let product = self.opts.product_criterion;

        let mut cands: Vec<Pair> = Vec::new();
        for (g, e) in self.elems.iter().enumerate() {
            if g == h || !e.active {
                continue;
            }
            let lcm = hm.lcm(&e.lm);
            let sugar = (hs + lcm.degree() - hm.degree()).max(e.sugar + lcm.degree() - e.lm.degree());
            cands.push(Pair { i: g, j: h, lcm, sugar });
        }
        let disjoint = |p: &Pair, elems: &Vec<Elem<K>>| elems[p.i].lm.is_coprime(&hm);

        let accepted: Vec<Pair> = if chain {
            let mut d: Vec<Pair> = Vec::new();
            let mut c = cands;
            while let Some(p) = c.pop() {
                let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
                if disjoint(&p, &self.elems) || !dominated {
                    d.push(p);
                }
            }
            d
        } else {
            cands
        };
        let fresh: Vec<Pair> = if product {
            accepted.into_iter().filter(|p| !disjoint(p, &self.elems)).collect()
        } else {
            accepted
        };

        if chain {
            let elems = &self.elems;
            self.pairs.retain(|p| {
                if !hm.divides(&p.lcm) {
                    return true;
                }
                let l1 = elems[p.i].lm.lcm(&hm);
                let l2 = elems[p.j].lm.lcm(&hm);
                l1 == p.lcm || l2 == p.lcm
            });
        }
        self.pairs.extend(fresh);

        for (g, e) in self.elems.iter_mut().enumerate() {
            if g != h && e.active && hm.divides(&e.lm) {
                e.active = false;
            }
        }
    }

    fn pick_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.ring.order();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = a.sugar < b.sugar
                || (a.sugar == b.sugar && order.cmp(&a.lcm, &b.lcm) == std::cmp::Ordering::Less);
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn min_pair_sugar(&self) -> Option<u32> {
        self.pairs.iter().map(|p| p.sugar).min()
    }
}

/// Runs Buchberger on arbitrary (not necessarily homogeneous) input polynomials.
pub fn groebner_polys<K: Field>(
    ring: &Ring<K>,
    gens: &[Polynomial<K>],
    opts: GbOptions,
) -> Result<GroebnerBasis<K>> {
    let mut inputs: Vec<(u32, usize, Vec<Term<K>>)> = Vec::new();
    for (idx, g) in gens.iter().enumerate() {
        let g = g.in_ring(ring)?;
        if !g.is_zero() {
            inputs.push((sugar_of::<K>(g.terms()), idx, g.into_terms()));
        }
    }
    let homogeneous = gens.iter().all(|g| g.is_homogeneous());
    inputs.sort_by_key(|x| (x.0, x.1));
    let mut inputs = std::collections::VecDeque::from(inputs);

    let mut eng = Engine {
        ring,
        opts,
        elems: Vec::new(),
        pairs: Vec::new(),
        unit: false,
    };
    let truncate = if homogeneous { opts.truncate } else { None };
    let mut min_gens: Vec<Polynomial<K>> = Vec::new();

    while !eng.unit {
        let ps = eng.min_pair_sugar();
        let is = inputs.front().map(|x| x.0);
        let next = match (ps, is) {
            (None, None) => break,
            (Some(p), None) => p,
            (None, Some(i)) => i,
            (Some(p), Some(i)) => p.min(i),
        };
        if let Some(t) = truncate {
            if next > t {
                break;
            }
        }
        if next > opts.degree_cap {
            return Err(Error::DegreeCapExceeded {
                cap: opts.degree_cap,
            });
        }
        let take_pair = match (ps, is) {
            (Some(p), Some(i)) => p <= i,
            (Some(_), None) => true,
            _ => false,
        };
        if take_pair {
            let pair = eng.pick_pair().expect("pair available");
            let s = eng.spoly(&pair);
            let r = eng.reduce(s);
            if !r.is_empty() {
                let r = eng.make_monic(r);
                eng.insert(r, pair.sugar);
            }
        } else {
            let (sugar, idx, terms) = inputs.pop_front().expect("input available");
            let r = eng.reduce(terms);
            if !r.is_empty() {
                min_gens.push(gens[idx].clone());
                let r = eng.make_monic(r);
                eng.insert(r, sugar);
            }
        }
    }

    let truncated_at = match truncate {
        Some(t) if !eng.pairs.is_empty() || !inputs.is_empty() => Some(t),
        _ => None,
    };
    Ok(finish(eng, homogeneous, truncated_at, min_gens))
}

fn finish<K: Field>(
    eng: Engine<'_, K>,
    homogeneous: bool,
    truncated_at: Option<u32>,
    min_gens: Vec<Polynomial<K>>,
) -> GroebnerBasis<K> {
    let ring = eng.ring.clone();
    if eng.unit {
        let one = ring.one();
        return GroebnerBasis {
            leads: vec![Monomial::one()],
            masks: vec![0],
            basis: vec![one],
            ring,
            truncated_at: None,
            homogeneous,
            min_gens,
        };
    }
    let active: Vec<usize> = (0..eng.elems.len()).filter(|&i| eng.elems[i].active).collect();
    let mut reduced: Vec<Vec<Term<K>>> = Vec::with_capacity(active.len());
    for &i in &active {
        let e = &eng.elems[i];
        // tail-reduce against the other active elements
        let tail = e.terms[1..].to_vec();
        let mut out = vec![e.terms[0].clone()];
        out.extend(eng.reduce(tail));
        reduced.push(out);
    }
    let order = ring.order();
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let leads: Vec<Monomial> = reduced.iter().map(|t| t[0].0).collect();
    let masks = leads.iter().map(|m| m.support_mask()).collect();
    let basis = reduced
        .into_iter()
        .map(|t| Polynomial::from_sorted(ring.clone(), t))
        .collect();
    GroebnerBasis {
        ring,
        basis,
        leads,
        masks,
        truncated_at,
        homogeneous,
        min_gens,
    }
}

impl<K: Field> GroebnerBasis<K> {
    pub fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn basis(&self) -> &[Polynomial<K>] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    /// Always true: the engine interreduces before returning.
    pub fn is_reduced(&self) -> bool {
        true
    }

    /// `Some(t)` if only degrees `<= t` are guaranteed.
    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    pub fn is_unit(&self) -> bool {
        self.leads.first().is_some_and(|m| m.is_one())
    }

    /// For homogeneous input: a minimal generating subset of the input generators.
    pub fn minimal_generators(&self) -> Option<&[Polynomial<K>]> {
        self.homogeneous.then_some(self.min_gens.as_slice())
    }

    #[inline]
    pub fn is_standard(&self, m: &Monomial) -> bool {
        let mask = m.support_mask();
        !self
            .leads
            .iter()
            .zip(&self.masks)
            .any(|(l, &lm)| lm & !mask == 0 && l.divides(m))
    }

    fn reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.leads
            .iter()
            .zip(&self.masks)
            .position(|(l, &lm)| lm & !mask == 0 && l.divides(m))
    }

    pub(crate) fn reduce_terms(&self, mut p: Vec<Term<K>>) -> Vec<Term<K>> {
        let f = self.ring.field();
        let mut rem = Vec::new();
        let mut head = 0;
        while head < p.len() {
            let (m, c) = &p[head];
            match self.reducer(m) {
                Some(g) => {
                    let q = m.div(&self.leads[g]).expect("divides");
                    let factor = f.neg(c);
                    p = merge_add(&p[head..], self.basis[g].terms(), &factor, &q, &self.ring);
                    head = 0;
                }
                None => {
                    rem.push(p[head].clone());
                    head += 1;
                }
            }
        }
        rem
    }

    /// Remainder with no term divisible by a leading monomial; returned in the input's ring.
    pub fn normal_form(&self, p: &Polynomial<K>) -> Result<Polynomial<K>> {
        if p.ring().field() != self.ring.field() || p.ring().nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let q = p.in_ring(&self.ring)?;
        let r = self.reduce_terms(q.into_terms());
        Polynomial::from_sorted(self.ring.clone(), r).in_ring(p.ring())
    }

    pub fn contains(&self, p: &Polynomial<K>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Degree-`d` monomials outside the leading-term ideal, descending degrevlex.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.ring.nvars(), d)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect()
    }

    /// Number of degree-`d` standard monomials.
    pub fn count_standard(&self, d: u32) -> usize {
        if self.is_unit() {
            return 0;
        }
        count_outside(self.ring.nvars(), d, &self.leads)
    }
}

/// Counts degree-`d` monomials in `n` variables divisible by none of `gens`.
pub fn count_outside(n: usize, d: u32, gens: &[Monomial]) -> usize {
    // enumerate without materialising the full list
    let masks: Vec<u32> = gens.iter().map(|m| m.support_mask()).collect();
    let mut count = 0usize;
    let mut exps = vec![0u32; n];
    fn rec(
        i: usize,
        left: u32,
        exps: &mut Vec<u32>,
        gens: &[Monomial],
        masks: &[u32],
        count: &mut usize,
    ) {
        let n = exps.len();
        if i + 1 == n {
            exps[i] = left;
            let m = Monomial::from_exponents(exps);
            let mask = m.support_mask();
            if !gens
                .iter()
                .zip(masks)
                .any(|(g, &gm)| gm & !mask == 0 && g.divides(&m))
            {
                *count += 1;
            }
            exps[i] = 0;
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, gens, masks, count);
        }
        exps[i] = 0;
    }
    rec(0, d, &mut exps, gens, &masks, &mut count);
    count
}

/// Reduced Gröbner basis of homogeneous generators under `order`.
pub fn groebner<K: Field>(
    gens: &[Polynomial<K>],
    order: MonomialOrder,
    opts: GbOptions,
) -> Result<GroebnerBasis<K>> {
    let Some(first) = gens.first() else {
        return Err(Error::NoGenerators);
    };
    let ring = first.ring().with_order(order);
    groebner_polys(&ring, gens, opts)
}

/// Shared cached basis handle.
pub type SharedGb<K> = Arc<GroebnerBasis<K>>;
