use nctorus_core::cyclic::{
    hc, hh, morita_check, shipped, AlgebraFile, AlgebraPresentation, CategoryFile, CyclicModule,
    DgCategoryPresentation, Source, DEFAULT_BUDGET,
};
use nctorus_core::scalars::GaussianRational as F;
use proptest::prelude::*;

fn algebra_data(name: &str) -> &'static str {
    match name {
        "field" => include_str!("../data/algebras/field.json"),
        "dual-numbers" => include_str!("../data/algebras/dual-numbers.json"),
        "product" => include_str!("../data/algebras/product.json"),
        "matrix-2" => include_str!("../data/algebras/matrix-2.json"),
        "path-a2" => include_str!("../data/algebras/path-a2.json"),
        _ => unreachable!(),
    }
}

#[test]
fn data_files_match_builtins() {
    for (name, a) in shipped::algebras() {
        let file: AlgebraFile = serde_json::from_str(algebra_data(name)).unwrap();
        assert_eq!(AlgebraPresentation::from_file(file).unwrap(), a, "{name}");
    }
    for (name, src) in [
        ("graded-dual-numbers", include_str!("../data/categories/graded-dual-numbers.json")),
        ("a2-quiver", include_str!("../data/categories/a2-quiver.json")),
    ] {
        let file: CategoryFile = serde_json::from_str(src).unwrap();
        assert_eq!(DgCategoryPresentation::from_file(file).unwrap(), shipped::category_by_name(name).unwrap());
    }
}

#[test]
fn files_roundtrip() {
    for (name, a) in shipped::algebras() {
        let text = serde_json::to_string(&a.to_file()).unwrap();
        let back = AlgebraPresentation::from_file(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, a, "{name}");
    }
    for name in ["graded-dual-numbers", "a2-quiver", "matrix-2"] {
        let c = shipped::category_by_name(name).unwrap();
        let text = serde_json::to_string(&c.to_file()).unwrap();
        let back = DgCategoryPresentation::from_file(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, c, "{name}");
    }
}

#[test]
fn malformed_files_are_rejected() {
    // 1·x is missing, so the unit law fails
    let bad = r#"{"basis": ["1", "x"], "unit": [1, 0], "mult": [[0, 0, 0, 1], [1, 1, 0, 1]]}"#;
    assert!(AlgebraPresentation::from_file(serde_json::from_str(bad).unwrap()).is_err());
    let bad = r#"{"basis": ["1"], "mult": [[0, 0, 2, 1]]}"#;
    assert!(AlgebraPresentation::from_file(serde_json::from_str(bad).unwrap()).is_err());
    let bad = r#"{"basis": ["1"], "mult": [[0, 0, 0, "th"]]}"#;
    assert!(serde_json::from_str::<AlgebraFile>(bad).is_err());
    // composing arrows whose endpoints do not match
    let bad = r#"{"objects": ["X", "Y"],
        "morphisms": [{"name": "f", "source": "X", "target": "Y"}],
        "composition": [[0, 0, 0, 1]]}"#;
    assert!(DgCategoryPresentation::from_file(serde_json::from_str(bad).unwrap()).is_err());
    // d of degree 0
    let bad = r#"{"objects": ["X"],
        "morphisms": [{"name": "1", "source": "X", "target": "X"}, {"name": "e", "source": "X", "target": "X"}],
        "differential": [[0, 1, 1]],
        "composition": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]}"#;
    assert!(DgCategoryPresentation::from_file(serde_json::from_str(bad).unwrap()).is_err());
}

#[test]
fn identity_suites_hold() {
    for (name, a) in shipped::algebras() {
        let m = CyclicModule::build(Source::Algebra(&a), 4, DEFAULT_BUDGET).unwrap();
        let r = m.identity_report();
        assert!(r.all_hold(), "{name}: {:?}", r.failures());
    }
    for name in ["graded-dual-numbers", "a2-quiver"] {
        let c = shipped::category_by_name(name).unwrap();
        let m = CyclicModule::build(Source::Category(&c), 4, DEFAULT_BUDGET).unwrap();
        let r = m.identity_report();
        assert!(r.all_hold(), "{name}: {:?}", r.failures());
    }
}

#[test]
fn extra_wrap_sign_breaks_b_squared() {
    let a = shipped::dual_numbers();
    let m = CyclicModule::build(Source::Algebra(&a), 4, DEFAULT_BUDGET).unwrap();
    assert!(m.identity_report().literal_wrap_sign_b2.iter().any(|(_, ok)| !ok));
}

#[test]
fn one_object_category_agrees_with_algebra() {
    for (name, a) in shipped::algebras() {
        let c = DgCategoryPresentation::one_object(&a);
        let (ha, hc_a) = (hh(Source::Algebra(&a), 3, DEFAULT_BUDGET), hc(Source::Algebra(&a), 3, DEFAULT_BUDGET));
        let (hcat, hc_cat) = (hh(Source::Category(&c), 3, DEFAULT_BUDGET), hc(Source::Category(&c), 3, DEFAULT_BUDGET));
        assert_eq!(ha.unwrap(), hcat.unwrap(), "{name}");
        assert_eq!(hc_a.unwrap(), hc_cat.unwrap(), "{name}");
    }
}

#[test]
fn path_algebra_and_category_agree() {
    let a = shipped::path_a2();
    let c = shipped::a2_category();
    assert_eq!(hh(Source::Algebra(&a), 3, DEFAULT_BUDGET).unwrap(), hh(Source::Category(&c), 3, DEFAULT_BUDGET).unwrap());
    assert_eq!(hc(Source::Algebra(&a), 3, DEFAULT_BUDGET).unwrap(), hc(Source::Category(&c), 3, DEFAULT_BUDGET).unwrap());
}

#[test]
fn semisimple_values() {
    // separable algebras: HH is A/[A, A] in degree 0
    let ones = |v: usize| vec![v, 0, 0, 0];
    assert_eq!(hh(Source::Algebra(&shipped::product_qq()), 3, DEFAULT_BUDGET).unwrap().dims, ones(2));
    assert_eq!(hh(Source::Algebra(&shipped::matrix_2()), 3, DEFAULT_BUDGET).unwrap().dims, ones(1));
    assert_eq!(hc(Source::Algebra(&shipped::product_qq()), 3, DEFAULT_BUDGET).unwrap().dims, vec![2, 0, 2, 0]);
    assert_eq!(hc(Source::Algebra(&shipped::matrix_2()), 3, DEFAULT_BUDGET).unwrap().dims, vec![1, 0, 1, 0]);
}

#[test]
fn morita_for_dual_numbers() {
    let r = morita_check(&shipped::dual_numbers(), 2, 3, 2_000_000).unwrap();
    assert!(r.equal, "{r:?}");
}

/// Inverse of a square matrix over ℚ(i) by Gauss–Jordan.
fn inverse(p: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = p.len();
    let mut a: Vec<Vec<F>> = p
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().cloned().chain((0..n).map(|j| if i == j { F::one() } else { F::zero() })).collect())
        .collect();
    for c in 0..n {
        let r = (c..n).find(|&r| !a[r][c].is_zero()).expect("invertible");
        a.swap(c, r);
        let s = a[c][c].inv().unwrap();
        a[c] = a[c].iter().map(|x| x * &s).collect();
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// The same algebra in the basis f_a = Σ_i p[a][i]·e_i.
fn change_basis(a: &AlgebraPresentation, p: &[Vec<F>]) -> AlgebraPresentation {
    let n = a.dim();
    let q = inverse(p);
    let mut mult = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let mut out = vec![F::zero(); n];
            for i in 0..n {
                for j in 0..n {
                    let w = &p[x][i] * &p[y][j];
                    if w.is_zero() {
                        continue;
                    }
                    for (k, c) in a.product(i, j) {
                        for (l, o) in out.iter_mut().enumerate() {
                            *o += &(&(&w * c) * &q[*k as usize][l]);
                        }
                    }
                }
            }
            mult.extend(out.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(l, v)| (x, y, l, v)));
        }
    }
    let unit = a.unit().map(|u| {
        (0..n).map(|l| (0..n).fold(F::zero(), |acc, k| &acc + &(&u[k] * &q[k][l]))).collect()
    });
    AlgebraPresentation::new((0..n).map(|i| format!("f{i}")).collect(), unit, mult).unwrap()
}

fn gaussian() -> impl Strategy<Value = F> {
    (-3i64..=3, -2i64..=2, 1i64..=3).prop_map(|(re, im, den)| &F::from_frac(re, den).unwrap() + &(&F::i() * &F::from_int(im)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homology_is_basis_independent(
        which in 0usize..5,
        lower in prop::collection::vec(gaussian(), 6),
        diag in prop::collection::vec(gaussian().prop_filter("nonzero", |x| !x.is_zero()), 4),
    ) {
        let (name, a) = shipped::algebras().swap_remove(which);
        let n = a.dim();
        let mut it = lower.into_iter();
        let p: Vec<Vec<F>> = (0..n)
            .map(|r| (0..n).map(|c| match r.cmp(&c) {
                std::cmp::Ordering::Equal => diag[r].clone(),
                std::cmp::Ordering::Greater => it.next().unwrap(),
                std::cmp::Ordering::Less => F::zero(),
            }).collect())
            .collect();
        let b = change_basis(&a, &p);
        let deg = if n > 3 { 2 } else { 3 };
        prop_assert_eq!(hh(Source::Algebra(&a), deg, DEFAULT_BUDGET).unwrap(), hh(Source::Algebra(&b), deg, DEFAULT_BUDGET).unwrap(), "{}", name);
        prop_assert_eq!(hc(Source::Algebra(&a), deg, DEFAULT_BUDGET).unwrap(), hc(Source::Algebra(&b), deg, DEFAULT_BUDGET).unwrap(), "{}", name);
    }
}
