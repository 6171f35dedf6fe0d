//! Exact coefficient fields: prime fields GF(p) with word-size `p`, and the rationals.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The prime used as a stand-in for characteristic zero.
pub const CHAR0_PROXY: u32 = 32003;

/// Runtime description of a coefficient field, used for I/O and dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    /// Token accepted by `--field`: the prime itself, or `q`.
    pub fn flag(&self) -> String {
        match self {
            FieldSpec::Prime(p) => p.to_string(),
            FieldSpec::Rationals => "q".to_string(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p as u64,
            FieldSpec::Rationals => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rationals);
        }
        let t = t
            .strip_prefix("GF(")
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t);
        let p: u64 = t.parse().map_err(|_| Error::Parse {
            line: 1,
            column: 1,
            message: format!("unknown field '{s}'"),
        })?;
        PrimeField::new(p).map(|f| FieldSpec::Prime(f.p))
    }
}

/// An exact field. Elements are plain values; all arithmetic goes through the field
/// object so that GF(p) can carry its modulus.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of `num/den`; errors when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    /// Uniform element of GF(p); over Q a uniform integer in `[-q_bound, q_bound]`.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, q_bound: i64) -> Self::Elem;
    /// Sign and magnitude for printing. GF(p) uses the symmetric representative.
    fn signed_repr(&self, a: &Self::Elem) -> (bool, String);

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Numerator and denominator of a rational element; `None` over GF(p).
    fn as_ratio(&self, _a: &Self::Elem) -> Option<(BigInt, BigInt)> {
        None
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    /// Number of elements, `None` for an infinite field.
    fn order(&self) -> Option<u64> {
        match self.spec() {
            FieldSpec::Prime(p) => Some(p as u64),
            FieldSpec::Rationals => None,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// GF(p) for a prime `p < 2^31`, elements stored as canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1u64 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u32 {
        v.rem_euclid(self.p as i128) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1 % self.p
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u32)
    }

    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i128(v as i128)
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32> {
        let p = BigInt::from(self.p);
        let n = ((num % &p) + &p) % &p;
        let d = ((den % &p) + &p) % &p;
        let n = n.to_u32().expect("residue fits");
        let d = d.to_u32().expect("residue fits");
        self.div(&n, &d)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R, _q_bound: i64) -> u32 {
        rng.gen_range(0..self.p)
    }

    fn signed_repr(&self, a: &u32) -> (bool, String) {
        if self.p > 2 && *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn as_ratio(&self, a: &BigRational) -> Option<(BigInt, BigInt)> {
        Some((a.numer().clone(), a.denom().clone()))
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R, q_bound: i64) -> BigRational {
        self.from_i64(rng.gen_range(-q_bound..=q_bound))
    }

    fn signed_repr(&self, a: &BigRational) -> (bool, String) {
        let neg = a.is_negative();
        let m = a.abs();
        let s = if m.is_integer() {
            m.numer().to_string()
        } else {
            format!("{}/{}", m.numer(), m.denom())
        };
        (neg, s)
    }
}
