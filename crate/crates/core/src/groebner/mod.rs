//! Gröbner bases over a field and the ideal operations built on them.

mod buchberger;
mod ideal;

pub use buchberger::{buchberger, reduce_full, Budget, GroebnerBasis};
pub use ideal::{Codimension, PolyIdeal};
