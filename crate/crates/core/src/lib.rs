//! Exact computations for hyperplane arrangements: Orlik-Solomon algebras
//! and Aomoto complexes, logarithmic derivations and forms, and the
//! logarithmic ideal of critical sets of master functions.
//!
//! The algebraic core ([`poly`], [`matrix`], [`groebner`]) is generic over
//! [`scalar::Field`]; the arrangement layers work over [`Rational`].

pub mod arrangement;
pub mod critical;
pub mod error;
pub mod groebner;
pub mod logmod;
pub mod matrix;
mod modular;
pub mod os;
pub mod poly;
pub mod scalar;
pub mod workbench;

pub use scalar::Rational;

/// Polynomials with exact rational coefficients.
pub type Poly = poly::Polynomial<Rational>;
/// Dense exact matrices.
pub type RationalMatrix = matrix::Matrix<Rational>;
/// Ideals over the rationals.
pub type Ideal = groebner::PolyIdeal<Rational>;
