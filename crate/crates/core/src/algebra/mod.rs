//! Exact arithmetic: rationals, monomials and orders, sparse polynomials,
//! gcds, rational functions, rings and the polynomial text grammar.

pub mod field;
pub mod gcd;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod polynomial;
pub mod ratfun;
pub mod ring;

pub use field::{CoeffText, Complex64, Field, Rational};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use polynomial::Polynomial;
pub use ratfun::RationalFunction;
pub use ring::{ArithKind, FieldTag, Ring};
