//! Coefficient fields, monomials, monomial orders and polynomial arithmetic.

pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use field::{Field, FieldSpec, PrimeField, Rationals, CHAR0_PROXY};
pub use monomial::{binomial, monomials_of_degree, Monomial, MonomialOrder, MAX_VARS};
pub use parse::{max_var_index, parse_poly, parse_poly_at};
pub use poly::{PolyRing, Polynomial, Ring, RingExt, Term};
