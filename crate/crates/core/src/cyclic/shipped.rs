//! Built-in presentations.

use super::presentation::{AlgebraPresentation, CategoryFile, Coeff, DgCategoryPresentation, MorphismRecord};
use crate::scalars::GaussianRational as F;

fn algebra(basis: &[&str], unit: &[i64], mult: &[(usize, usize, usize, i64)]) -> AlgebraPresentation {
    AlgebraPresentation::new(
        basis.iter().map(|s| s.to_string()).collect(),
        Some(unit.iter().map(|&x| F::from_int(x)).collect()),
        mult.iter().map(|&(i, j, k, v)| (i, j, k, F::from_int(v))).collect(),
    )
    .expect("built-in presentation is valid")
}

/// ℚ
pub fn field() -> AlgebraPresentation {
    algebra(&["1"], &[1], &[(0, 0, 0, 1)])
}

/// ℚ[x]/(x²)
pub fn dual_numbers() -> AlgebraPresentation {
    algebra(&["1", "x"], &[1, 0], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
}

/// ℚ × ℚ
pub fn product_qq() -> AlgebraPresentation {
    algebra(&["e1", "e2"], &[1, 1], &[(0, 0, 0, 1), (1, 1, 1, 1)])
}

/// M₂(ℚ)
pub fn matrix_2() -> AlgebraPresentation {
    field().matrix_algebra(2)
}

/// Path algebra of 1 → 2 with a = e2·a·e1, products read as composition.
pub fn path_a2() -> AlgebraPresentation {
    algebra(
        &["e1", "e2", "a"],
        &[1, 1, 0],
        &[(0, 0, 0, 1), (1, 1, 1, 1), (2, 0, 2, 1), (1, 2, 2, 1)],
    )
}

/// The zero algebra (dimension 0, 1 = 0).
pub fn zero_algebra() -> AlgebraPresentation {
    algebra(&[], &[], &[])
}

/// The five algebras every suite runs on.
pub fn algebras() -> Vec<(&'static str, AlgebraPresentation)> {
    vec![
        ("field", field()),
        ("dual-numbers", dual_numbers()),
        ("product", product_qq()),
        ("matrix-2", matrix_2()),
        ("path-a2", path_a2()),
    ]
}

pub fn algebra_by_name(name: &str) -> Option<AlgebraPresentation> {
    match name {
        "zero" => Some(zero_algebra()),
        _ => algebras().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a),
    }
}

fn morphism(name: &str, source: &str, target: &str, degree: i32) -> MorphismRecord {
    MorphismRecord { name: name.into(), source: source.into(), target: target.into(), degree }
}

fn one(k: usize) -> (usize, Coeff) {
    (k, Coeff(F::one()))
}

fn comp(l: usize, r: usize, k: usize) -> (usize, usize, usize, Coeff) {
    (l, r, k, Coeff(F::one()))
}

/// One object, End = ℚ[ε]/(ε²) with |ε| = 1 and d = 0.
pub fn graded_dual_numbers() -> DgCategoryPresentation {
    DgCategoryPresentation::from_file(CategoryFile {
        objects: vec!["X".into()],
        morphisms: vec![morphism("1", "X", "X", 0), morphism("eps", "X", "X", 1)],
        identities: Some(vec![vec![one(0)]]),
        differential: Vec::new(),
        composition: vec![comp(0, 0, 0), comp(0, 1, 1), comp(1, 0, 1)],
    })
    .expect("built-in presentation is valid")
}

/// Two objects and one arrow 1 → 2, the category behind [`path_a2`].
pub fn a2_category() -> DgCategoryPresentation {
    DgCategoryPresentation::from_file(CategoryFile {
        objects: vec!["1".into(), "2".into()],
        morphisms: vec![morphism("id1", "1", "1", 0), morphism("id2", "2", "2", 0), morphism("a", "1", "2", 0)],
        identities: Some(vec![vec![one(0)], vec![one(1)]]),
        differential: Vec::new(),
        composition: vec![comp(0, 0, 0), comp(1, 1, 1), comp(2, 0, 2), comp(1, 2, 2)],
    })
    .expect("built-in presentation is valid")
}

pub fn category_by_name(name: &str) -> Option<DgCategoryPresentation> {
    match name {
        "graded-dual-numbers" => Some(graded_dual_numbers()),
        "a2-quiver" => Some(a2_category()),
        _ => algebra_by_name(name).map(|a| DgCategoryPresentation::one_object(&a)),
    }
}
