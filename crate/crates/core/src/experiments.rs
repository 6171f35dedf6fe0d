//! Censuses of `c : F` for a fixed complete intersection `c` of quadrics and many
//! quadrics `F`: exhaustive over square-free forms in characteristic 2, or seeded samples.
//!
//! The per-form work never builds a Gröbner basis. With `B_d` the standard monomials
//! of `R/c` and `K_d = ker(×F : [R/c]_d -> [R/c]_{d+2})`, the quotient `R/(c : F)` has
//! `h_d = |B_d| - dim K_d`, and `c : F` is `c` plus lifts of the `K_d`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{binomial, monomials_of_degree, Field, FieldSpec, Monomial, Polynomial, PrimeField, RingExt};
use crate::constructions::{quadric_ci, CiStyle};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ideal_ops::{colon_form, colon_ideal};
use crate::invariants::{classify, minimal_generator_counts, HVector, QuadricClassification};
use crate::linalg::Matrix;
use crate::quotient::Quotient;

/// Largest number of square-free quadrics enumerated exhaustively.
pub const MAX_EXHAUSTIVE_MONOMIALS: u64 = 24;

pub const CSV_HEADER: [&str; 12] = [
    "field", "r", "ci_style", "ci_seed", "mode", "f_index", "f_poly", "presented", "h2",
    "socle_degree", "hvector", "seed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    /// Every nonzero sum of square-free quadratic monomials (GF(2) only).
    ExhaustiveSquarefree,
    /// `count` forms with every coefficient uniform in the field.
    RandomSample { count: usize, seed: u64 },
}

impl CensusMode {
    pub fn name(&self) -> &'static str {
        match self {
            CensusMode::ExhaustiveSquarefree => "exhaustive",
            CensusMode::RandomSample { .. } => "sample",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusConfig {
    pub field: FieldSpec,
    pub r: usize,
    pub ci_style: CiStyle,
    pub mode: CensusMode,
    pub jobs: usize,
    /// Re-run every n-th form through colon + classify and compare; 0 disables.
    pub cross_check_every: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            field: FieldSpec::Prime(2),
            r: 6,
            ci_style: CiStyle::Monomial,
            mode: CensusMode::ExhaustiveSquarefree,
            jobs: 1,
            cross_check_every: 0,
        }
    }
}

impl CensusConfig {
    pub fn validate(&self) -> Result<PrimeField> {
        let FieldSpec::Prime(p) = self.field else {
            return Err(Error::Precondition("census needs a prime field".into()));
        };
        if !(2..=12).contains(&self.r) {
            return Err(Error::OutOfRange(format!("census needs 2 <= r <= 12, got {}", self.r)));
        }
        if self.jobs == 0 {
            return Err(Error::Precondition("jobs must be at least 1".into()));
        }
        if self.mode == CensusMode::ExhaustiveSquarefree {
            if p != 2 {
                return Err(Error::Precondition("exhaustive mode is only defined over GF(2)".into()));
            }
            if binomial(self.r as i64, 2) > MAX_EXHAUSTIVE_MONOMIALS {
                return Err(Error::OutOfRange(format!(
                    "exhaustive mode enumerates 2^C(r,2) forms; r = {} is too large",
                    self.r
                )));
            }
        }
        PrimeField::new(p as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Classified(QuadricClassification),
    /// `F` lies in `c`, so `c : F` is the unit ideal.
    Degenerate,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub f_index: u64,
    pub f_poly: Polynomial<PrimeField>,
    pub outcome: Outcome,
    pub seed: Option<u64>,
}

impl CensusRecord {
    pub fn classification(&self) -> Option<&QuadricClassification> {
        match &self.outcome {
            Outcome::Classified(c) => Some(c),
            _ => None,
        }
    }

    pub fn presented(&self) -> bool {
        self.classification().is_some_and(|c| c.presented_by_quadrics)
    }

    /// `h_2`, present exactly when the ideal is presented by quadrics.
    pub fn h2(&self) -> Option<u64> {
        self.classification()
            .filter(|c| c.presented_by_quadrics)
            .map(|c| c.h2())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub counts: BTreeMap<u64, usize>,
    pub total_presented: usize,
    pub total_swept: usize,
    pub degenerate: usize,
    pub failed: usize,
    pub not_gorenstein: usize,
    /// Presented instances with `h_2 = r` and socle degree at least 4.
    pub h2_equals_r: usize,
    /// Socle degree 4 instances breaking `h_2 <= floor((r^2 + 2) / 3)`.
    pub h2_bound_violations: usize,
    pub cross_checked: usize,
    pub findings: Vec<String>,
}

impl CensusSummary {
    pub fn proportion(&self) -> f64 {
        if self.total_swept == 0 {
            0.0
        } else {
            self.total_presented as f64 / self.total_swept as f64
        }
    }

    fn add(&mut self, r: usize, rec: &CensusRecord) {
        self.total_swept += 1;
        match &rec.outcome {
            Outcome::Degenerate => self.degenerate += 1,
            Outcome::Failed(m) => {
                self.failed += 1;
                self.findings.push(format!("f_index {}: {m}", rec.f_index));
            }
            Outcome::Classified(c) => {
                if !c.gorenstein {
                    self.not_gorenstein += 1;
                    self.findings.push(format!("f_index {}: not Gorenstein {}", rec.f_index, c.hvec));
                }
                if !c.presented_by_quadrics {
                    return;
                }
                let h2 = c.h2();
                self.total_presented += 1;
                *self.counts.entry(h2).or_insert(0) += 1;
                let e = c.socle_degree.unwrap_or(0);
                if h2 == r as u64 && e >= 4 {
                    self.h2_equals_r += 1;
                    self.findings.push(format!("f_index {}: h2 = r with socle degree {e}", rec.f_index));
                }
                if e == 4 && h2 > (r as u64 * r as u64 + 2) / 3 {
                    self.h2_bound_violations += 1;
                    self.findings.push(format!("f_index {}: h2 = {h2} above the socle degree 4 bound", rec.f_index));
                }
                if r == 6 && !(10..=12).contains(&h2) {
                    self.findings.push(format!("f_index {}: h2 = {h2} outside 10..=12", rec.f_index));
                }
            }
        }
    }

    pub fn from_records(r: usize, records: &[CensusRecord]) -> Self {
        let mut s = CensusSummary::default();
        for rec in records {
            s.add(r, rec);
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct CensusRun {
    pub config: CensusConfig,
    pub ci: Ideal<PrimeField>,
    pub records: Vec<CensusRecord>,
    pub summary: CensusSummary,
}

/// The square-free quadratic monomials of `r` variables in descending degrevlex order.
pub fn squarefree_quadrics(r: usize) -> Vec<Monomial> {
    monomials_of_degree(r, 2)
        .into_iter()
        .filter(|m| (0..r).all(|i| m.exponent(i) <= 1))
        .collect()
}

type Sparse = Vec<(usize, usize, u32)>;

/// Precomputed multiplication tables of `R/c`.
struct Engine {
    field: PrimeField,
    r: usize,
    top: usize,
    dims: Vec<usize>,
    quads: Vec<Monomial>,
    /// `by_quad[k][d]`: `×quads[k] : B_d -> B_{d+2}`.
    by_quad: Vec<Vec<Sparse>>,
    /// `by_var[i][d]`: `×x_i : B_d -> B_{d+1}`.
    by_var: Vec<Vec<Matrix<PrimeField>>>,
}

fn sparse(m: &Matrix<PrimeField>) -> Sparse {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for (j, &v) in m.row(i).iter().enumerate() {
            if v != 0 {
                out.push((i, j, v));
            }
        }
    }
    out
}

fn product(f: &PrimeField, a: &Matrix<PrimeField>, b: &Matrix<PrimeField>) -> Matrix<PrimeField> {
    let mut out = Matrix::zeros(f, a.rows(), b.cols());
    for i in 0..a.rows() {
        for (k, &x) in a.row(i).iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, y) in b.row(k).iter().enumerate() {
                if *y != 0 {
                    let v = f.add(out.get(i, j), &f.mul(&x, y));
                    out.set(i, j, v);
                }
            }
        }
    }
    out
}

enum Fast {
    Done(QuadricClassification),
    Degenerate,
    /// `c : F` has a linear form; handled by the generic path.
    Fallback,
}

impl Engine {
    fn new(ci: &Ideal<PrimeField>) -> Result<Self> {
        let q = Quotient::new(ci)?;
        let ring = ci.ring();
        let field = *ci.field();
        let top = q.top().unwrap_or(0);
        let dims: Vec<usize> = (0..=top + 3).map(|d| q.dim(d)).collect();
        let quads = monomials_of_degree(ring.nvars(), 2);
        let one = field.one();
        let mut by_quad = Vec::with_capacity(quads.len());
        for m in &quads {
            let p = ring.term(*m, one);
            let per = (0..=top)
                .map(|d| q.mul_matrix(&p, d).map(|x| sparse(&x)))
                .collect::<Result<Vec<_>>>()?;
            by_quad.push(per);
        }
        let mut by_var = Vec::with_capacity(ring.nvars());
        for i in 0..ring.nvars() {
            let x = ring.var(i);
            by_var.push((0..=top).map(|d| q.mul_matrix(&x, d)).collect::<Result<Vec<_>>>()?);
        }
        Ok(Engine {
            field,
            r: ring.nvars(),
            top,
            dims,
            quads,
            by_quad,
            by_var,
        })
    }

    fn times_f(&self, coeffs: &[u32], d: usize) -> Matrix<PrimeField> {
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.dims[d + 2], self.dims[d]);
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(i, j, v) in &self.by_quad[k][d] {
                let x = f.add(m.get(i, j), &f.mul(&c, &v));
                m.set(i, j, x);
            }
        }
        m
    }

    fn analyze(&self, coeffs: &[u32]) -> Fast {
        let f = &self.field;
        let top = self.top;
        let maps: Vec<Matrix<PrimeField>> = (0..=top).map(|d| self.times_f(coeffs, d)).collect();
        let kernels: Vec<Vec<Vec<u32>>> = maps.iter().map(|m| m.right_kernel()).collect();
        if !kernels[0].is_empty() {
            return Fast::Degenerate;
        }
        if kernels.len() > 1 && !kernels[1].is_empty() {
            return Fast::Fallback;
        }
        let hvec = HVector::new(
            (0..=top)
                .map(|d| (self.dims[d] - kernels[d].len()) as u64)
                .collect(),
        );
        let mut nu = BTreeMap::new();
        nu.insert(2u32, self.r + kernels.get(2).map_or(0, Vec::len));
        for d in 3..=top {
            let mut rows = Vec::new();
            for v in &kernels[d - 1] {
                for xs in &self.by_var {
                    let m = &xs[d - 1];
                    let mut w = vec![0u32; m.rows()];
                    for (i, wi) in w.iter_mut().enumerate() {
                        let mut acc = 0u32;
                        for (a, b) in m.row(i).iter().zip(v) {
                            if *a != 0 && *b != 0 {
                                acc = f.add(&acc, &f.mul(a, b));
                            }
                        }
                        *wi = acc;
                    }
                    rows.push(w);
                }
            }
            let spanned = if rows.is_empty() {
                0
            } else {
                Matrix::from_rows(f, self.dims[d], rows).rank()
            };
            let new = kernels[d].len() - spanned;
            if new > 0 {
                nu.insert(d as u32, new);
            }
        }
        let presented = nu.keys().all(|&d| d == 2);
        let mut socle = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let n = self.dims[d];
            let mut rank = 0;
            if d < top && n > 0 {
                let mut stacked: Vec<Vec<u32>> = Vec::new();
                for xs in &self.by_var {
                    let p = product(f, &maps[d + 1], &xs[d]);
                    for i in 0..p.rows() {
                        stacked.push(p.row(i).to_vec());
                    }
                }
                rank = Matrix::from_rows(f, n, stacked).rank();
            }
            socle.push(n - rank - kernels[d].len());
        }
        while socle.len() > hvec.len() {
            socle.pop();
        }
        let gorenstein = socle.iter().sum::<usize>() == 1;
        Fast::Done(QuadricClassification {
            r: self.r,
            artinian: true,
            gorenstein,
            socle_degree: hvec.socle_degree(),
            hvec,
            socle,
            nu_by_degree: nu,
            presented_by_quadrics: presented,
            contains_quadric_rs: true,
            had_linear_forms: false,
        })
    }

    fn poly(&self, ci: &Ideal<PrimeField>, coeffs: &[u32]) -> Polynomial<PrimeField> {
        let terms = self
            .quads
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| **c != 0)
            .map(|(m, c)| (*m, *c))
            .collect();
        ci.ring().from_terms(terms)
    }
}

/// Colon and classification through Gröbner bases.
fn generic_outcome(ci: &Ideal<PrimeField>, f: &Polynomial<PrimeField>, seed: u64) -> Outcome {
    if f.is_zero() {
        return Outcome::Degenerate;
    }
    let run = || -> Result<Outcome> {
        let i = colon_form(ci, f)?;
        if i.is_unit()? {
            return Ok(Outcome::Degenerate);
        }
        Ok(Outcome::Classified(classify(&i, seed)?))
    };
    run().unwrap_or_else(|e| Outcome::Failed(e.to_string()))
}

fn agree(a: &QuadricClassification, b: &QuadricClassification) -> bool {
    a.hvec == b.hvec
        && a.socle == b.socle
        && a.nu_by_degree == b.nu_by_degree
        && a.presented_by_quadrics == b.presented_by_quadrics
        && a.gorenstein == b.gorenstein
}

/// Coefficients (over all quadratic monomials, descending degrevlex) of the
/// square-free form selected by the bits of `index`.
fn squarefree_coeffs(r: usize, quads: &[Monomial], index: u64) -> Vec<u32> {
    let sq = squarefree_quadrics(r);
    let mut out = vec![0u32; quads.len()];
    for (j, m) in sq.iter().enumerate() {
        if index >> j & 1 == 1 {
            let k = quads.iter().position(|q| q == m).expect("square-free quadric");
            out[k] = 1;
        }
    }
    out
}

/// Sweeps the configured forms `F`, classifying `c : F` for each.
pub fn run_census(cfg: &CensusConfig) -> Result<CensusRun> {
    let field = cfg.validate()?;
    let ci = quadric_ci(&field, cfg.r, cfg.ci_style)?;
    let engine = Engine::new(&ci)?;
    let nq = engine.quads.len();
    let inputs: Vec<(u64, Vec<u32>, Option<u64>)> = match cfg.mode {
        CensusMode::ExhaustiveSquarefree => {
            let m = squarefree_quadrics(cfg.r).len();
            (1..(1u64 << m))
                .map(|i| (i, squarefree_coeffs(cfg.r, &engine.quads, i), None))
                .collect()
        }
        CensusMode::RandomSample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count as u64)
                .map(|i| {
                    let c: Vec<u32> = (0..nq).map(|_| field.random(&mut rng, 0)).collect();
                    (i, c, Some(seed))
                })
                .collect()
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    let check = cfg.cross_check_every;
    let results: Vec<(CensusRecord, bool)> = pool.install(|| {
        inputs
            .par_iter()
            .map(|(index, coeffs, seed)| {
                let f_poly = engine.poly(&ci, coeffs);
                let class_seed = seed.unwrap_or(0).wrapping_add(*index);
                let mut checked = false;
                let outcome = match engine.analyze(coeffs) {
                    Fast::Degenerate => Outcome::Degenerate,
                    Fast::Fallback => generic_outcome(&ci, &f_poly, class_seed),
                    Fast::Done(c) => {
                        if check > 0 && index % check as u64 == 0 {
                            checked = true;
                            match generic_outcome(&ci, &f_poly, class_seed) {
                                Outcome::Classified(g) if agree(&g, &c) => Outcome::Classified(c),
                                other => Outcome::Failed(format!(
                                    "cross-check mismatch: fast {} generic {:?}",
                                    c.headline(),
                                    other
                                )),
                            }
                        } else {
                            Outcome::Classified(c)
                        }
                    }
                };
                (
                    CensusRecord {
                        f_index: *index,
                        f_poly,
                        outcome,
                        seed: *seed,
                    },
                    checked,
                )
            })
            .collect()
    });
    let cross_checked = results.iter().filter(|(_, c)| *c).count();
    let records: Vec<CensusRecord> = results.into_iter().map(|(r, _)| r).collect();
    let mut summary = CensusSummary::from_records(cfg.r, &records);
    summary.cross_checked = cross_checked;
    Ok(CensusRun {
        config: cfg.clone(),
        ci,
        records,
        summary,
    })
}

/// Writes one CSV row per record.
pub fn write_csv<W: Write>(run: &CensusRun, out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    let cfg = &run.config;
    let ci_seed = cfg.ci_style.seed().map(|s| s.to_string()).unwrap_or_default();
    for rec in &run.records {
        let c = rec.classification();
        w.write_record([
            cfg.field.to_string(),
            cfg.r.to_string(),
            cfg.ci_style.name().to_string(),
            ci_seed.clone(),
            cfg.mode.name().to_string(),
            rec.f_index.to_string(),
            rec.f_poly.to_string(),
            rec.presented().to_string(),
            rec.h2().map(|h| h.to_string()).unwrap_or_default(),
            c.and_then(|c| c.socle_degree).map(|e| e.to_string()).unwrap_or_default(),
            c.map(|c| c.hvec.to_string()).unwrap_or_default(),
            rec.seed.map(|s| s.to_string()).unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

/// The summary table, one row per `h_2` value.
pub fn summary_markdown(run: &CensusRun) -> String {
    let cfg = &run.config;
    let s = &run.summary;
    let mut out = String::new();
    let mode = match cfg.mode {
        CensusMode::ExhaustiveSquarefree => "exhaustive over square-free forms".to_string(),
        CensusMode::RandomSample { count, seed } => format!("{count} random forms, seed {seed}"),
    };
    let ci = match cfg.ci_style {
        CiStyle::Monomial => "monomial CI".to_string(),
        CiStyle::Random(seed) => format!("random CI (seed {seed})"),
    };
    let _ = writeln!(out, "## {} r={} {ci}, {mode}\n", cfg.field, cfg.r);
    if let CiStyle::Random(_) = cfg.ci_style {
        let _ = writeln!(out, "CI generators: {}\n", run.ci);
    }
    let _ = writeln!(out, "| h2 | count |");
    let _ = writeln!(out, "|---|---|");
    if let (Some(&lo), Some(&hi)) = (s.counts.keys().next(), s.counts.keys().next_back()) {
        let r = cfg.r as u64;
        for h in lo..=hi.max((r * r + 2) / 3) {
            let _ = writeln!(out, "| {h} | {} |", s.counts.get(&h).copied().unwrap_or(0));
        }
    }
    let _ = writeln!(
        out,
        "\npresented: {} / {} ({:.4})",
        s.total_presented,
        s.total_swept,
        s.proportion()
    );
    if s.degenerate > 0 {
        let _ = writeln!(out, "degenerate (F in c): {}", s.degenerate);
    }
    if s.cross_checked > 0 {
        let _ = writeln!(out, "cross-checked: {}", s.cross_checked);
    }
    for f in &s.findings {
        let _ = writeln!(out, "finding: {f}");
    }
    out
}

/// `c : (c : F) = c + (F')` with one new quadric `F'`, and `c : F' = c : F`.
/// `None` for degenerate or failed records.
pub fn verify_socle4_duality(ci: &Ideal<PrimeField>, record: &CensusRecord) -> Result<Option<bool>> {
    if record.classification().is_none() {
        return Ok(None);
    }
    let i = colon_form(ci, &record.f_poly)?;
    let j = colon_ideal(ci, &i)?;
    if !j.contains_ideal(ci)? {
        return Ok(Some(false));
    }
    let nu = minimal_generator_counts(&j, u32::MAX)?;
    if nu != BTreeMap::from([(2, ci.nvars() + 1)]) {
        return Ok(Some(false));
    }
    let mut fresh = None;
    for g in j.minimalize()?.gens() {
        if !ci.contains(g)? {
            fresh = Some(g.clone());
            break;
        }
    }
    let Some(f2) = fresh else {
        return Ok(Some(false));
    };
    Ok(Some(colon_form(ci, &f2)?.same_ideal(&i)?))
}

/// No presented record has `h_2` in `{13, 14}`.
pub fn h2_13_exclusion_check(records: &[CensusRecord]) -> bool {
    !records.iter().any(|r| matches!(r.h2(), Some(13 | 14)))
}
