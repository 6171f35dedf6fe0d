//! Text grammar for polynomials: `3*x1^2*x3 - x2*x4 + 7`, coefficients integers or `a/b`.
//! Whitespace is insignificant and `*` between factors is optional.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::Field;
use super::monomial::{Monomial, MAX_VARS};
use super::poly::{Polynomial, Ring, RingExt};
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Cursor {
            chars: src.chars().enumerate().collect(),
            pos: 0,
            line,
            _src: src,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.chars.len() + 1, |c| c.0 + 1)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().map(|c| c.1).collect())
    }
}

/// Parses one polynomial; `line` only feeds error positions.
pub fn parse_poly_at<K: Field>(ring: &Ring<K>, src: &str, line: usize) -> Result<Polynomial<K>> {
    let field = ring.field();
    let mut cur = Cursor::new(src, line);
    let mut terms = Vec::new();
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if !first => break,
            Some('+') => {
                cur.pos += 1;
            }
            Some('-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) if first => {}
            Some(c) => return Err(cur.err(format!("unexpected '{c}'"))),
            None => return Err(cur.err("unexpected end of input")),
        }
        first = false;
        // term: factors
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut exps = [0u32; MAX_VARS];
        let mut nfactors = 0;
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n: BigInt = cur.digits()?.parse().expect("digits");
                    num *= n;
                    if cur.peek() == Some('/') {
                        cur.pos += 1;
                        let d: BigInt = cur.digits()?.parse().expect("digits");
                        if d.is_zero() {
                            return Err(cur.err("zero denominator"));
                        }
                        den *= d;
                    }
                }
                Some('x') => {
                    cur.pos += 1;
                    let idx_col = cur.column();
                    let idx: usize = cur.digits()?.parse().map_err(|_| cur.err("bad index"))?;
                    if idx == 0 || idx > ring.nvars() {
                        return Err(Error::Parse {
                            line,
                            column: idx_col,
                            message: format!(
                                "variable x{idx} outside x1..x{}",
                                ring.nvars()
                            ),
                        });
                    }
                    let mut e = 1u32;
                    if cur.peek() == Some('^') {
                        cur.pos += 1;
                        e = cur.digits()?.parse().map_err(|_| cur.err("bad exponent"))?;
                    }
                    exps[idx - 1] += e;
                    if exps[idx - 1] > u8::MAX as u32 {
                        return Err(cur.err("exponent too large"));
                    }
                }
                Some(c) => return Err(cur.err(format!("unexpected '{c}'"))),
                None => return Err(cur.err("unexpected end of input")),
            }
            nfactors += 1;
            match cur.peek() {
                Some('*') => {
                    cur.pos += 1;
                }
                Some(c) if c.is_ascii_digit() || c == 'x' => {}
                _ => break,
            }
        }
        debug_assert!(nfactors > 0);
        if negative {
            num = -num;
        }
        let c = field.from_ratio(&num, &den).map_err(|_| Error::Parse {
            line,
            column: cur.column(),
            message: "denominator vanishes in the field".into(),
        })?;
        terms.push((Monomial::from_exponents(&exps[..ring.nvars()]), c));
    }
    Ok(ring.from_terms(terms))
}

pub fn parse_poly<K: Field>(ring: &Ring<K>, src: &str) -> Result<Polynomial<K>> {
    parse_poly_at(ring, src, 1)
}

/// Largest variable index mentioned in `src`, 0 if none.
pub fn max_var_index(src: &str) -> usize {
    let b = src.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let mut j = i + 1;
            let mut v = 0usize;
            while j < b.len() && b[j].is_ascii_digit() {
                v = v.saturating_mul(10).saturating_add((b[j] - b'0') as usize);
                j += 1;
            }
            best = best.max(v);
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rationals};
    use crate::algebra::poly::PolyRing;
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let r = PolyRing::graded(4, Rationals).unwrap();
        let p = parse_poly(&r, "3*x1^2*x3 - x2*x4 + 7").unwrap();
        assert_eq!(p.to_string(), "3*x1^2*x3 - x2*x4 + 7");
        let p = parse_poly(&r, " 2/4 x1 x1 +x2*3 ").unwrap();
        assert_eq!(p.to_string(), "1/2*x1^2 + 3*x2");
        let p = parse_poly(&r, "x1 - x1").unwrap();
        assert_eq!(p.to_string(), "0");
        let p = parse_poly(&r, "-x4 - 1/3").unwrap();
        assert_eq!(p.to_string(), "-x4 - 1/3");
    }

    #[test]
    fn gf_coefficients() {
        let r = PolyRing::graded(2, PrimeField::new(7).unwrap()).unwrap();
        let p = parse_poly(&r, "1/2*x1 + 13*x2").unwrap();
        assert_eq!(p.to_string(), "-3*x1 - x2");
        assert!(parse_poly(&r, "1/7*x1").is_err());
    }

    #[test]
    fn errors_carry_position() {
        let r = PolyRing::graded(2, Rationals).unwrap();
        match parse_poly_at(&r, "x1 + x3", 4) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 4);
                assert_eq!(column, 7);
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_poly(&r, "").is_err());
        assert!(parse_poly(&r, "x1 +").is_err());
        assert!(parse_poly(&r, "x1 ++ x2").is_err());
        assert!(parse_poly(&r, "x1 # x2").is_err());
        assert_eq!(max_var_index("x3*x12 + x2"), 12);
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(coeffs in proptest::collection::vec((-9i64..9, 0u32..3, 0u32..3, 0u32..3), 0..6)) {
            for ring in [PolyRing::graded(3, Rationals).unwrap()] {
                let f = ring.field().clone();
                let terms = coeffs.iter().map(|&(c, a, b, d)| (Monomial::from_exponents(&[a, b, d]), f.from_i64(c))).collect();
                let p = ring.from_terms(terms);
                let back = parse_poly(&ring, &p.to_string()).unwrap();
                prop_assert_eq!(back, p);
            }
            let ring = PolyRing::graded(3, PrimeField::new(5).unwrap()).unwrap();
            let f = *ring.field();
            let terms = coeffs.iter().map(|&(c, a, b, d)| (Monomial::from_exponents(&[a, b, d]), f.from_i64(c))).collect();
            let p = ring.from_terms(terms);
            prop_assert_eq!(parse_poly(&ring, &p.to_string()).unwrap(), p);
        }
    }
}
