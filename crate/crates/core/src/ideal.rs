//! Homogeneous ideals over a fixed ring, with a lazily computed degrevlex basis.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{max_var_index, parse_poly_at, Field, Monomial, MonomialOrder, Polynomial, Ring, RingExt};
use crate::error::{Error, Result};
use crate::groebner::{groebner_polys, GbOptions, GroebnerBasis};

#[derive(Clone)]
pub struct Ideal<K: Field> {
    ring: Ring<K>,
    gens: Vec<Polynomial<K>>,
    meta: Vec<(String, String)>,
    gb: Arc<OnceLock<Arc<GroebnerBasis<K>>>>,
}

impl<K: Field> fmt::Debug for Ideal<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("nvars", &self.ring.nvars())
            .field("field", &self.ring.field().spec())
            .field("gens", &self.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl<K: Field> Ideal<K> {
    /// Builds an ideal from homogeneous generators; zero generators are dropped.
    pub fn new(ring: &Ring<K>, gens: Vec<Polynomial<K>>) -> Result<Self> {
        let graded = ring.with_order(MonomialOrder::DegRevLex);
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if g.ring().nvars() != ring.nvars() {
                return Err(Error::RingMismatch);
            }
            if g.field() != ring.field() {
                return Err(Error::FieldMismatch(
                    g.field().spec().to_string(),
                    ring.field().spec().to_string(),
                ));
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
            out.push(g.in_ring(&graded)?);
        }
        Ok(Ideal {
            ring: graded,
            gens: out,
            meta: Vec::new(),
            gb: Arc::new(OnceLock::new()),
        })
    }

    pub fn zero(ring: &Ring<K>) -> Self {
        Ideal::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn unit(ring: &Ring<K>) -> Self {
        Ideal::new(ring, vec![ring.one()]).expect("constant is homogeneous")
    }

    /// The ideal generated by the variables `x_{i+1}` for `i` in `vars`.
    pub fn variables(ring: &Ring<K>, vars: impl IntoIterator<Item = usize>) -> Self {
        let gens = vars.into_iter().map(|i| ring.var(i)).collect();
        Ideal::new(ring, gens).expect("variables are homogeneous")
    }

    /// The ideal of all monomials of degree `d`.
    pub fn power_of_maximal(ring: &Ring<K>, d: u32) -> Self {
        let one = ring.field().one();
        let gens = crate::algebra::monomials_of_degree(ring.nvars(), d)
            .into_iter()
            .map(|m| ring.term(m, one.clone()))
            .collect();
        Ideal::new(ring, gens).expect("monomials are homogeneous")
    }

    pub fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    pub fn field(&self) -> &K {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn gens(&self) -> &[Polynomial<K>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn meta(&self) -> &[(String, String)] {
        &self.meta
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.meta.push((key.into(), value.to_string()));
        self
    }

    pub(crate) fn extend_meta(mut self, meta: &[(String, String)]) -> Self {
        self.meta.extend_from_slice(meta);
        self
    }

    /// Reduced degrevlex basis, computed once and shared between clones.
    pub fn gb(&self) -> Result<&GroebnerBasis<K>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner_polys(&self.ring, &self.gens, GbOptions::default())?;
        let _ = self.gb.set(Arc::new(gb));
        Ok(self.gb.get().expect("just set"))
    }

    pub(crate) fn gb_arc(&self) -> Result<Arc<GroebnerBasis<K>>> {
        self.gb()?;
        Ok(self.gb.get().expect("computed").clone())
    }

    /// Basis under another order or options; not cached.
    pub fn gb_with(&self, order: MonomialOrder, opts: GbOptions) -> Result<GroebnerBasis<K>> {
        groebner_polys(&self.ring.with_order(order), &self.gens, opts)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    pub fn contains(&self, p: &Polynomial<K>) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        self.gb()?.contains(p)
    }

    pub fn contains_ideal(&self, other: &Ideal<K>) -> Result<bool> {
        self.check_compatible(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (same reduced basis).
    pub fn same_ideal(&self, other: &Ideal<K>) -> Result<bool> {
        self.check_compatible(other)?;
        match (self.gens.is_empty(), other.gens.is_empty()) {
            (true, true) => return Ok(true),
            (true, false) | (false, true) => return Ok(false),
            _ => {}
        }
        let (a, b) = (self.gb()?, other.gb()?);
        Ok(a.basis() == b.basis())
    }

    pub(crate) fn check_compatible(&self, other: &Ideal<K>) -> Result<()> {
        if self.ring.field() != other.ring.field() {
            return Err(Error::FieldMismatch(
                self.ring.field().spec().to_string(),
                other.ring.field().spec().to_string(),
            ));
        }
        if self.ring.nvars() != other.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// A minimal homogeneous generating set drawn from the current generators.
    pub fn minimalize(&self) -> Result<Ideal<K>> {
        if self.gens.is_empty() {
            return Ok(self.clone());
        }
        let gb = self.gb()?;
        if gb.is_unit() {
            return Ok(Ideal::unit(&self.ring).extend_meta(&self.meta));
        }
        let gens = gb
            .minimal_generators()
            .expect("homogeneous input")
            .iter()
            .map(|g| g.monic())
            .collect();
        let out = Ideal {
            ring: self.ring.clone(),
            gens,
            meta: self.meta.clone(),
            gb: self.gb.clone(),
        };
        Ok(out)
    }

    /// Largest generator degree, 0 for the zero ideal.
    pub fn max_gen_degree(&self) -> u32 {
        self.gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    /// Minimal monomial generators of the leading-term ideal.
    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self.gb()?.leading_monomials().to_vec())
    }

    /// Parses one polynomial per line; blank lines and `#` comments are skipped.
    pub fn parse(ring: &Ring<K>, text: &str) -> Result<Ideal<K>> {
        let mut gens = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            for piece in line.split(',') {
                if piece.trim().is_empty() {
                    continue;
                }
                gens.push(parse_poly_at(ring, piece, i + 1)?);
            }
        }
        if gens.is_empty() {
            return Err(Error::NoGenerators);
        }
        Ideal::new(ring, gens)
    }

    /// One generator per line, preceded by `# key: value` provenance lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "# ring: vars={} field={}\n",
            self.ring.nvars(),
            self.ring.field().spec()
        ));
        for (k, v) in &self.meta {
            s.push_str(&format!("# {k}: {v}\n"));
        }
        for g in &self.gens {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

impl<K: Field> fmt::Display for Ideal<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// The `# ring: vars=N field=F` line written by [`Ideal::to_text`], if present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RingHeader {
    pub vars: Option<usize>,
    pub field: Option<String>,
}

impl RingHeader {
    pub fn read(text: &str) -> Self {
        let mut h = RingHeader::default();
        for line in text.lines() {
            let Some(rest) = line.trim().strip_prefix('#') else { continue };
            let Some(rest) = rest.trim().strip_prefix("ring:") else { continue };
            for tok in rest.split_whitespace() {
                if let Some(v) = tok.strip_prefix("vars=") {
                    h.vars = v.parse().ok();
                } else if let Some(f) = tok.strip_prefix("field=") {
                    h.field = Some(f.to_string());
                }
            }
            break;
        }
        h
    }

    /// Header variable count, else the largest variable index in the generator lines.
    pub fn vars_or_scan(&self, text: &str) -> usize {
        self.vars.unwrap_or_else(|| {
            text.lines()
                .map(|l| l.split('#').next().unwrap_or(""))
                .map(max_var_index)
                .max()
                .unwrap_or(0)
                .max(1)
        })
    }
}

/// Minimal monomial generators of the leading-term ideal of `gb`, as an ideal.
pub fn leading_term_ideal<K: Field>(gb: &GroebnerBasis<K>) -> Ideal<K> {
    let ring = gb.ring().with_order(MonomialOrder::DegRevLex);
    let one = ring.field().one();
    let mut leads: Vec<Monomial> = Vec::new();
    for m in gb.leading_monomials() {
        if !leads.iter().any(|l| l.divides(m)) {
            leads.retain(|l| !m.divides(l));
            leads.push(*m);
        }
    }
    let gens = leads.into_iter().map(|m| ring.term(m, one.clone())).collect();
    Ideal::new(&ring, gens).expect("monomials are homogeneous")
}
