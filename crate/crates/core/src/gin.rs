//! Generic initial ideals in degrevlex, Borel-fixedness, reduction numbers and
//! multiplication-by-a-linear-form ranks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{monomials_of_degree, Field, Monomial, Polynomial, Ring, RingExt};
use crate::error::{Error, Result};
use crate::ideal::{leading_term_ideal, Ideal};
use crate::ideal_ops::{
    general_linear_form, random_linear_form, small_field_warning, GenericityPolicy, LinearForm,
    Selection,
};
use crate::invariants::{classify, HVector};
use crate::linalg::Matrix;
use crate::quotient::Quotient;

/// Independent coordinate changes that must agree.
pub const GIN_AGREEMENT: usize = 3;
/// Extra rounds before giving up.
pub const GIN_RETRIES: usize = 3;
/// Entries of rational coordinate changes lie in `[-COORD_BOUND, COORD_BOUND]`.
pub const COORD_BOUND: i64 = 50;
/// Smallest prime accepted as a stand-in for characteristic zero.
pub const GIN_MIN_PRIME: u64 = 32003;

#[derive(Debug, Clone)]
pub struct GinResult<K: Field> {
    pub ideal: Ideal<K>,
    pub borel_fixed: bool,
    pub attempts_agreed: usize,
    pub seeds: Vec<u64>,
}

impl<K: Field> GinResult<K> {
    pub fn monomials(&self) -> Vec<Monomial> {
        self.ideal.gens().iter().filter_map(|g| g.leading_monomial().copied()).collect()
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.ideal
            .gens()
            .iter()
            .filter_map(|g| g.leading_monomial())
            .any(|g| g.divides(m))
    }
}

fn random_coordinates<K: Field>(ring: &Ring<K>, rng: &mut ChaCha8Rng) -> Vec<Polynomial<K>> {
    let field = ring.field();
    let n = ring.nvars();
    loop {
        let rows: Vec<Vec<K::Elem>> = (0..n)
            .map(|_| (0..n).map(|_| field.random(rng, COORD_BOUND)).collect())
            .collect();
        if Matrix::from_rows(field, n, rows.clone()).rank() == n {
            return rows.iter().map(|r| ring.linear_form(r)).collect();
        }
    }
}

fn sorted_leads<K: Field>(ideal: &Ideal<K>, seed: u64) -> Result<(Ideal<K>, Vec<Vec<u32>>)> {
    let ring = ideal.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let images = random_coordinates(ring, &mut rng);
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.substitute_linear(&images))
        .collect::<Result<Vec<_>>>()?;
    let moved = Ideal::new(ring, gens)?;
    let lt = leading_term_ideal(moved.gb()?);
    let mut key: Vec<Vec<u32>> = lt
        .gens()
        .iter()
        .filter_map(|g| g.leading_monomial())
        .map(|m| m.exponents(ring.nvars()))
        .collect();
    key.sort();
    Ok((lt, key))
}

fn check_gin_field<K: Field>(field: &K) -> Result<()> {
    let p = field.characteristic();
    if p != 0 && p < GIN_MIN_PRIME {
        return Err(Error::Precondition(format!(
            "gin needs characteristic 0 or p >= {GIN_MIN_PRIME}, got {}",
            field.spec()
        )));
    }
    Ok(())
}

/// The degrevlex generic initial ideal, certified by agreement of independent
/// random coordinate changes and the Borel exchange property.
pub fn gin<K: Field>(ideal: &Ideal<K>, seed: u64) -> Result<GinResult<K>> {
    check_gin_field(ideal.field())?;
    if ideal.is_zero_ideal() {
        return Ok(GinResult {
            ideal: ideal.clone(),
            borel_fixed: true,
            attempts_agreed: GIN_AGREEMENT,
            seeds: Vec::new(),
        });
    }
    let mut last = String::new();
    for round in 0..=GIN_RETRIES {
        let seeds: Vec<u64> = (0..GIN_AGREEMENT)
            .map(|k| seed.wrapping_add((round * GIN_AGREEMENT + k) as u64))
            .collect();
        let mut runs = Vec::with_capacity(GIN_AGREEMENT);
        for &s in &seeds {
            runs.push(sorted_leads(ideal, s)?);
        }
        let agreed = runs.iter().filter(|(_, k)| *k == runs[0].1).count();
        let candidate = runs.swap_remove(0).0;
        let borel = is_borel_fixed(&candidate);
        if agreed == GIN_AGREEMENT && borel {
            return Ok(GinResult {
                ideal: candidate.with_meta("gin-seed", seeds[0]),
                borel_fixed: true,
                attempts_agreed: agreed,
                seeds,
            });
        }
        last = format!(
            "round {round}: {agreed}/{GIN_AGREEMENT} coordinate changes agreed, borel_fixed={borel}, candidate {candidate}"
        );
    }
    Err(Error::GinUncertified(last))
}

/// Monomial ideal closed under `x_j -> x_i` for `i < j`.
pub fn is_borel_fixed<K: Field>(ideal: &Ideal<K>) -> bool {
    let mut mons = Vec::with_capacity(ideal.gens().len());
    for g in ideal.gens() {
        if g.terms().len() != 1 {
            return false;
        }
        mons.push(g.terms()[0].0);
    }
    let n = ideal.nvars();
    let inside = |m: &Monomial| mons.iter().any(|g| g.divides(m));
    for m in &mons {
        for j in 1..n {
            let Some(base) = m.div(&Monomial::var(j)) else { continue };
            for i in 0..j {
                if !inside(&base.mul_var(i)) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionNumber {
    pub s: usize,
    pub value: usize,
    pub from_gin: Option<usize>,
    pub warnings: Vec<String>,
}

/// `r_s(R/I)`: least `k` with `[R/(I, s general linear forms)]_{k+1} = 0`, cross-checked
/// against the pure powers in `gin` when one is given.
pub fn reduction_number<K: Field>(
    ideal: &Ideal<K>,
    s: usize,
    policy: &GenericityPolicy,
    gin: Option<&GinResult<K>>,
) -> Result<ReductionNumber> {
    let ring = ideal.ring();
    let r = ring.nvars();
    if s > r {
        return Err(Error::OutOfRange(format!("s = {s} exceeds {r} variables")));
    }
    Quotient::new(ideal)?;
    if policy.num_samples == 0 {
        return Err(Error::Precondition("num_samples must be at least 1".into()));
    }
    let mut warnings = Vec::new();
    if let Some(w) = small_field_warning(ring.field()) {
        warnings.push(w);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut value = usize::MAX;
    for _ in 0..policy.num_samples {
        let mut gens = ideal.gens().to_vec();
        for _ in 0..s {
            gens.push(random_linear_form(ring.field(), r, &mut rng).to_poly(ring));
        }
        let h = HVector::new(Quotient::new(&Ideal::new(ring, gens)?)?.hilbert());
        value = value.min(h.socle_degree().unwrap_or(0));
    }
    let from_gin = gin.map(|g| reduction_number_from_gin(g, s));
    if let Some(k) = from_gin {
        if k != value {
            return Err(Error::GinUncertified(format!(
                "r_{s} is {value} from linear sections but {k} from the gin"
            )));
        }
    }
    Ok(ReductionNumber { s, value, from_gin, warnings })
}

/// Least `k` with `x_{r-s}^{k+1}` in the gin; `0` when `s = r`. Needs an artinian gin.
pub fn reduction_number_from_gin<K: Field>(gin: &GinResult<K>, s: usize) -> usize {
    let r = gin.ideal.nvars();
    if s >= r {
        return 0;
    }
    let x = Monomial::var(r - s - 1);
    let mut power = x;
    let mut k = 0;
    while !gin.contains_monomial(&power) {
        power = power.mul(&x);
        k += 1;
    }
    k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMethod {
    DirectLinearAlgebra,
    GinCount,
}

impl RankMethod {
    pub fn name(&self) -> &'static str {
        match self {
            RankMethod::DirectLinearAlgebra => "direct_linear_algebra",
            RankMethod::GinCount => "gin_count",
        }
    }
}

/// Rank of `[R/I]_d -> [R/I]_{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub degree: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub method: RankMethod,
}

/// Rank of `×L` by linear algebra on standard monomials.
pub fn times_l_rank<K: Field>(ideal: &Ideal<K>, d: usize, l: &LinearForm<K>) -> Result<RankReport> {
    let q = Quotient::new(ideal)?;
    times_l_rank_in(&q, d, &l.to_poly(ideal.ring()))
}

fn times_l_rank_in<K: Field>(q: &Quotient<K>, d: usize, l: &Polynomial<K>) -> Result<RankReport> {
    let rank = q.mul_matrix(l, d)?.rank();
    Ok(RankReport {
        degree: d,
        rank,
        kernel_dim: q.dim(d) - rank,
        method: RankMethod::DirectLinearAlgebra,
    })
}

/// Rank of `·x_r` on `R/gin`: the standard monomials of degree `d+1` divisible by `x_r`.
pub fn gin_rank<K: Field>(gin: &GinResult<K>, d: usize) -> RankReport {
    let r = gin.ideal.nvars();
    let outside = |deg: usize| -> Vec<Monomial> {
        monomials_of_degree(r, deg as u32)
            .into_iter()
            .filter(|m| !gin.contains_monomial(m))
            .collect()
    };
    let h_d = outside(d).len();
    let rank = outside(d + 1).iter().filter(|m| m.exponent(r - 1) > 0).count();
    RankReport {
        degree: d,
        rank,
        kernel_dim: h_d - rank,
        method: RankMethod::GinCount,
    }
}

/// Checks a direct rank for a general form against the gin count.
pub fn cross_check_rank<K: Field>(direct: &RankReport, gin: &GinResult<K>) -> Result<()> {
    let g = gin_rank(gin, direct.degree);
    if g.rank != direct.rank || g.kernel_dim != direct.kernel_dim {
        return Err(Error::GinUncertified(format!(
            "degree {}: direct rank {} but gin count {}",
            direct.degree, direct.rank, g.rank
        )));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct InjectivityVerdict<K: Field> {
    pub holds: bool,
    pub h1: usize,
    pub best_rank: usize,
    pub form: LinearForm<K>,
    pub samples: usize,
    pub warnings: Vec<String>,
}

/// Whether `×L : [R/I]_1 -> [R/I]_2` is injective for some sampled `L`.
/// A negative verdict only means no sample was injective.
pub fn check_injectivity_conjecture<K: Field>(
    ideal: &Ideal<K>,
    policy: &GenericityPolicy,
) -> Result<InjectivityVerdict<K>> {
    if ideal.field().characteristic() == 2 {
        return Err(Error::Precondition(
            "characteristic 2: L^2 lies in the ideal for every L".into(),
        ));
    }
    let c = classify(ideal, policy.seed)?;
    if !c.presented_by_quadrics {
        return Err(Error::Precondition("ideal is not presented by quadrics".into()));
    }
    if c.socle_degree.is_none_or(|e| e < 3) {
        return Err(Error::Precondition("socle degree >= 3 required".into()));
    }
    let q = Quotient::new(ideal)?;
    let ring = ideal.ring();
    let policy = policy.with_selection(Selection::MaxRank);
    let g = general_linear_form(ring, &policy, |l| {
        Ok(vec![times_l_rank_in(&q, 1, &l.to_poly(ring))?.rank as i64])
    })?;
    let best_rank = g.score[0] as usize;
    let h1 = q.dim(1);
    Ok(InjectivityVerdict {
        holds: best_rank == h1,
        h1,
        best_rank,
        form: g.form,
        samples: policy.num_samples,
        warnings: g.warnings,
    })
}

#[derive(Debug, Clone)]
pub struct WlpReport<K: Field> {
    /// `reports[i-1]` is the map `[A]_{i-1} -> [A]_i`.
    pub reports: Vec<RankReport>,
    pub expected: Vec<usize>,
    pub has_wlp: bool,
    pub form: LinearForm<K>,
    pub warnings: Vec<String>,
}

/// Maximal-rank test for `×L` in every degree up to the socle degree.
pub fn check_wlp<K: Field>(ideal: &Ideal<K>, policy: &GenericityPolicy) -> Result<WlpReport<K>> {
    let q = Quotient::new(ideal)?;
    let ring = ideal.ring();
    let top = q.top().unwrap_or(0);
    let policy = policy.with_selection(Selection::MaxRank);
    let g = general_linear_form(ring, &policy, |l| {
        let p = l.to_poly(ring);
        (0..top)
            .map(|d| Ok(times_l_rank_in(&q, d, &p)?.rank as i64))
            .collect()
    })?;
    let p = g.form.to_poly(ring);
    let reports = (0..top)
        .map(|d| times_l_rank_in(&q, d, &p))
        .collect::<Result<Vec<_>>>()?;
    let expected: Vec<usize> = (0..top).map(|d| q.dim(d).min(q.dim(d + 1))).collect();
    let has_wlp = reports.iter().zip(&expected).all(|(r, e)| r.rank == *e);
    Ok(WlpReport {
        reports,
        expected,
        has_wlp,
        form: g.form,
        warnings: g.warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GinCounts {
    pub degree: usize,
    pub outside: usize,
    pub outside_divisible_by_last: usize,
    pub generators: usize,
    pub generators_divisible_by_last: usize,
}

/// Monomials of degree `d` outside the gin and minimal generators of degree `d`,
/// each split by divisibility by `x_r`.
pub fn gin_monomial_census<K: Field>(gin: &GinResult<K>, d: usize) -> GinCounts {
    let r = gin.ideal.nvars();
    let last = |m: &Monomial| m.exponent(r - 1) > 0;
    let out: Vec<Monomial> = monomials_of_degree(r, d as u32)
        .into_iter()
        .filter(|m| !gin.contains_monomial(m))
        .collect();
    let gens: Vec<Monomial> = gin
        .monomials()
        .into_iter()
        .filter(|m| m.degree() as usize == d)
        .collect();
    GinCounts {
        degree: d,
        outside: out.len(),
        outside_divisible_by_last: out.iter().filter(|m| last(m)).count(),
        generators: gens.len(),
        generators_divisible_by_last: gens.iter().filter(|m| last(m)).count(),
    }
}

/// `dim [R/(gin(I), x_r)]_d = dim [R/(I, L)]_d` for every `d`.
pub fn hyperplane_identity<K: Field>(ideal: &Ideal<K>, gin: &GinResult<K>, l: &LinearForm<K>) -> Result<bool> {
    let ring = ideal.ring();
    let r = ring.nvars();
    let mut a = ideal.gens().to_vec();
    a.push(l.to_poly(ring));
    let mut b = gin.ideal.gens().to_vec();
    b.push(ring.var(r - 1));
    let ha = Quotient::new(&Ideal::new(ring, a)?)?.hilbert();
    let hb = Quotient::new(&Ideal::new(ring, b)?)?.hilbert();
    Ok(HVector::new(ha) == HVector::new(hb))
}
