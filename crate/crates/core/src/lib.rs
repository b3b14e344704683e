//! Exact computations around the noncommutative torus: arithmetic in A_θ,
//! holomorphic structures on Heisenberg modules, the slope t-structure on
//! an elliptic curve's derived category, and Hochschild / cyclic homology of
//! finite algebras and graded categories.

pub mod bundles;
pub mod cyclic;
pub mod elliptic;
pub mod error;
pub mod nctorus;
pub mod scalars;
pub mod text;

pub use error::{Error, Result};
