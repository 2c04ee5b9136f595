//! Sparse multivariate polynomials over a [`Field`](crate::scalar::Field).

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{binomial, monomials_of_degree, Monomial};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::{Ring, RingRef, TermOrder};
