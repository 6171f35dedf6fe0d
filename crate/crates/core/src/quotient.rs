//! Graded pieces of an artinian quotient `R/I` in standard-monomial coordinates.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Field, Monomial, Polynomial, Ring, RingExt};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::Ideal;
use crate::linalg::Matrix;

/// Whether every variable has a pure power among the leading monomials.
pub fn leads_are_artinian(nvars: usize, leads: &[Monomial]) -> bool {
    (0..nvars).all(|i| {
        leads
            .iter()
            .any(|m| m.is_one() || (m.exponent(i) == m.degree()))
    })
}

#[derive(Debug, Clone)]
pub struct Quotient<K: Field> {
    ring: Ring<K>,
    gb: Arc<GroebnerBasis<K>>,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl<K: Field> Quotient<K> {
    /// Fails with [`Error::NotArtinian`] unless `R/I` is finite dimensional.
    pub fn new(ideal: &Ideal<K>) -> Result<Self> {
        if ideal.is_zero_ideal() {
            return Err(Error::NotArtinian);
        }
        let gb = ideal.gb_arc()?;
        Self::from_gb(ideal.ring().clone(), gb)
    }

    pub(crate) fn from_gb(ring: Ring<K>, gb: Arc<GroebnerBasis<K>>) -> Result<Self> {
        if !leads_are_artinian(ring.nvars(), gb.leading_monomials()) {
            return Err(Error::NotArtinian);
        }
        let mut bases = Vec::new();
        if !gb.is_unit() {
            let mut d = 0;
            loop {
                let b = gb.standard_monomials(d);
                if b.is_empty() {
                    break;
                }
                bases.push(b);
                d += 1;
            }
        }
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (*m, i)).collect())
            .collect();
        Ok(Quotient {
            ring,
            gb,
            bases,
            index,
        })
    }

    pub fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    pub fn gb(&self) -> &GroebnerBasis<K> {
        &self.gb
    }

    /// Socle degree, `None` for the zero algebra.
    pub fn top(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    pub fn dim(&self, d: usize) -> usize {
        self.bases.get(d).map_or(0, |b| b.len())
    }

    pub fn hilbert(&self) -> Vec<u64> {
        self.bases.iter().map(|b| b.len() as u64).collect()
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        self.bases.get(d).map_or(&[], |b| b.as_slice())
    }

    /// Coordinates of the class of a form of degree `d`.
    pub fn coords(&self, p: &Polynomial<K>, d: usize) -> Result<Vec<K::Elem>> {
        let f = self.ring.field();
        let mut v = vec![f.zero(); self.dim(d)];
        let nf = self.gb.normal_form(p)?;
        for (m, c) in nf.terms() {
            if m.degree() as usize != d {
                return Err(Error::NotHomogeneous(p.to_string()));
            }
            let i = self.index[d][m];
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// The form of degree `d` with the given coordinates.
    pub fn element(&self, d: usize, v: &[K::Elem]) -> Polynomial<K> {
        let f = self.ring.field();
        let terms = self
            .basis(d)
            .iter()
            .zip(v)
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        self.ring.from_terms(terms)
    }

    /// Matrix of multiplication by the form `f` from degree `d` to `d + deg f`;
    /// column `j` holds the image of the `j`-th basis monomial.
    pub fn mul_matrix(&self, f: &Polynomial<K>, d: usize) -> Result<Matrix<K>> {
        let fld = self.ring.field();
        let a = f.degree().unwrap_or(0) as usize;
        let (src, dst) = (self.dim(d), self.dim(d + a));
        let mut m = Matrix::zeros(fld, dst, src);
        if dst == 0 || f.is_zero() {
            return Ok(m);
        }
        let f = f.in_ring(&self.ring)?;
        for (j, b) in self.basis(d).iter().enumerate() {
            let prod = f.mul_monomial(b);
            let r = self.gb.reduce_terms(prod.into_terms());
            for (mono, c) in r {
                m.set(self.index[d + a][&mono], j, c);
            }
        }
        Ok(m)
    }

    /// Basis of `{ g in [R/I]_d : g f = 0 }`, as forms in standard monomials.
    pub fn annihilator(&self, f: &Polynomial<K>, d: usize) -> Result<Vec<Polynomial<K>>> {
        let m = self.mul_matrix(f, d)?;
        Ok(m.right_kernel()
            .into_iter()
            .map(|v| self.element(d, &v))
            .collect())
    }

    /// Dimension of `{ g in [R/I]_d : g f = 0 for every f in fs }`.
    pub fn common_annihilator(&self, fs: &[Polynomial<K>], d: usize) -> Result<Vec<Polynomial<K>>> {
        let fld = self.ring.field();
        let cols = self.dim(d);
        let mut rows: Vec<Vec<K::Elem>> = Vec::new();
        for f in fs {
            let m = self.mul_matrix(f, d)?;
            for r in 0..m.rows() {
                rows.push(m.row(r).to_vec());
            }
        }
        if rows.is_empty() {
            rows.push(vec![fld.zero(); cols]);
        }
        let stacked = Matrix::from_rows(fld, cols, rows);
        Ok(stacked
            .right_kernel()
            .into_iter()
            .map(|v| self.element(d, &v))
            .collect())
    }

    /// Socle dimension per degree `0..=top`.
    pub fn socle(&self) -> Result<Vec<usize>> {
        let vars: Vec<Polynomial<K>> = (0..self.ring.nvars()).map(|i| self.ring.var(i)).collect();
        (0..self.bases.len())
            .map(|d| Ok(self.common_annihilator(&vars, d)?.len()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PolyRing, PrimeField, Rationals};

    #[test]
    fn complete_intersection_pieces() {
        let r = PolyRing::graded(3, Rationals).unwrap();
        let i = Ideal::parse(&r, "x1^2, x2^2, x3^2").unwrap();
        let q = Quotient::new(&i).unwrap();
        assert_eq!(q.hilbert(), vec![1, 3, 3, 1]);
        assert_eq!(q.socle().unwrap(), vec![0, 0, 0, 1]);
        let l = crate::algebra::parse_poly(&r, "x1 + x2 + x3").unwrap();
        assert_eq!(q.mul_matrix(&l, 1).unwrap().rank(), 3);
    }

    #[test]
    fn maximal_square_socle() {
        let r = PolyRing::graded(4, PrimeField::new(5).unwrap()).unwrap();
        let i = Ideal::power_of_maximal(&r, 2);
        let q = Quotient::new(&i).unwrap();
        assert_eq!(q.socle().unwrap(), vec![0, 4]);
    }

    #[test]
    fn not_artinian() {
        let r = PolyRing::graded(2, Rationals).unwrap();
        let i = Ideal::parse(&r, "x1^2, x1*x2").unwrap();
        assert_eq!(Quotient::new(&i).unwrap_err(), Error::NotArtinian);
    }
}
