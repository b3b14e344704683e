//! Hochschild, cyclic and periodic cyclic homology of finite algebras and
//! finite graded categories, via the (b, B) mixed complex.

mod homology;
pub mod linalg;
mod module;
mod presentation;
pub mod shipped;

pub use homology::{
    cyclic_dims, hc, hh, hochschild_dims, hp, morita_check, periodic, HomologyResult, HpResult, MoritaReport,
    TotalComplex,
};
pub use linalg::{SparseMatrix, SparseVec};
pub use module::{CyclicModule, IdentityCheck, IdentityReport, Source, DEFAULT_BUDGET};
pub use presentation::{
    AlgebraFile, AlgebraPresentation, CategoryFile, Coeff, DgCategoryPresentation, MorphismRecord,
};
