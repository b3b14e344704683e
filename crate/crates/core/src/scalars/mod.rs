//! Exact coefficient arithmetic.

mod gaussian;
mod surd;
mod symbolic;

pub use gaussian::GaussianRational;
pub use surd::{sign_of_surd, surd_compare, QuadraticSurd};
pub use symbolic::{Assignment, Monomial, Poly, SymbolicScalar, Unit};
