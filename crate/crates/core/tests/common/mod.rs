//! Brute-force oracles: everything here works on dense coefficient vectors over all
//! monomials of a degree and never touches a Gröbner basis.
#![allow(dead_code)]

use std::collections::HashMap;

use gorq::{monomials_of_degree, Field, Matrix, Monomial, Polynomial, Ring, RingExt};

pub fn monomial_index(n: usize, d: u32) -> (Vec<Monomial>, HashMap<Monomial, usize>) {
    let ms = monomials_of_degree(n, d);
    let idx = ms.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    (ms, idx)
}

fn row_of<K: Field>(p: &Polynomial<K>, idx: &HashMap<Monomial, usize>, width: usize) -> Vec<K::Elem> {
    let f = p.field();
    let mut v = vec![f.zero(); width];
    for (m, c) in p.terms() {
        v[idx[m]] = c.clone();
    }
    v
}

/// Row-reduced spanning set of `[ (gens) ]_d` in monomial coordinates.
pub fn degree_span<K: Field>(ring: &Ring<K>, gens: &[Polynomial<K>], d: u32) -> Vec<Vec<K::Elem>> {
    let n = ring.nvars();
    let (ms, idx) = monomial_index(n, d);
    let mut rows = Vec::new();
    for g in gens {
        let Some(gd) = g.degree() else { continue };
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(n, d - gd) {
            let p = g.mul_monomial(&m);
            let p = p.in_ring(&ring.with_order(gorq::MonomialOrder::DegRevLex)).unwrap();
            rows.push(row_of(&p, &idx, ms.len()));
        }
    }
    if rows.is_empty() {
        return rows;
    }
    Matrix::from_rows(ring.field(), ms.len(), rows).row_basis()
}

pub fn ideal_dim<K: Field>(ring: &Ring<K>, gens: &[Polynomial<K>], d: u32) -> usize {
    degree_span(ring, gens, d).len()
}

pub fn hilbert<K: Field>(ring: &Ring<K>, gens: &[Polynomial<K>], up_to: u32) -> Vec<u64> {
    (0..=up_to)
        .map(|d| (monomials_of_degree(ring.nvars(), d).len() - ideal_dim(ring, gens, d)) as u64)
        .collect()
}

/// `dim [I]_d - dim [R_1 I_{d-1}]_d`.
pub fn nu<K: Field>(ring: &Ring<K>, gens: &[Polynomial<K>], d: u32) -> usize {
    let full = ideal_dim(ring, gens, d);
    if d == 0 {
        return full;
    }
    let lower: Vec<Polynomial<K>> = gens.iter().filter(|g| g.degree().is_some_and(|e| e < d)).cloned().collect();
    full - ideal_dim(ring, &lower, d)
}

/// `dim [I : f]_d`, solving `g f in [I]_{d + deg f}` directly.
pub fn colon_dim<K: Field>(ring: &Ring<K>, gens: &[Polynomial<K>], f: &Polynomial<K>, d: u32) -> usize {
    let n = ring.nvars();
    let a = f.degree().unwrap();
    let (src, _) = monomial_index(n, d);
    let (dst, didx) = monomial_index(n, d + a);
    let span = degree_span(ring, gens, d + a);
    let fld = ring.field();
    let mut rows = span.clone();
    let graded = ring.with_order(gorq::MonomialOrder::DegRevLex);
    let f = f.in_ring(&graded).unwrap();
    for m in &src {
        rows.push(row_of(&f.mul_monomial(m), &didx, dst.len()));
    }
    let total = Matrix::from_rows(fld, dst.len(), rows.clone()).rank();
    // dim{ g : g f in I } = dim R_d - dim((R_d f + I)/I)
    src.len() - (total - span.len())
}

pub fn random_form<K: Field, R: rand::Rng>(ring: &Ring<K>, d: u32, rng: &mut R, density: f64) -> Polynomial<K> {
    let f = ring.field();
    let mut terms = Vec::new();
    for m in monomials_of_degree(ring.nvars(), d) {
        if rng.gen_bool(density) {
            terms.push((m, f.random(rng, 5)));
        }
    }
    ring.from_terms(terms)
}

/// Leading monomials of `[I]_d`: pivots of the row-reduced span with columns in
/// descending degrevlex order.
pub fn initial_degree<K: Field>(ring: &Ring<K>, gens: &[Polynomial<K>], d: u32) -> Vec<Monomial> {
    let f = ring.field();
    let ms = monomials_of_degree(ring.nvars(), d);
    degree_span(ring, gens, d)
        .iter()
        .filter_map(|row| row.iter().position(|c| !f.is_zero(c)).map(|j| ms[j]))
        .collect()
}
