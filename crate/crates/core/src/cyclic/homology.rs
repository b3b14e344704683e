//! HH from (C, b), HC from the total complex of the (b, B) bicomplex, and HP
//! from the periodicity maps S: HC_n → HC_{n−2}.
//!
//! HH_n needs C_{n+1} and HC_n needs Tot_{n+1} = C_{n+1} ⊕ C_{n−1} ⊕ ⋯, so a
//! module truncated at n_max yields exact values up to degree n_max − 1.

use serde::{Deserialize, Serialize};

use super::linalg::{SparseMatrix, SparseVec};
use super::module::{CyclicModule, Source};
use super::presentation::AlgebraPresentation;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    /// dims[n] = dimension over ℚ(i) in degree n.
    pub dims: Vec<usize>,
}

/// dim HH_n for n = 0..=max_degree.
pub fn hochschild_dims(m: &CyclicModule, max_degree: usize) -> Vec<usize> {
    assert!(max_degree < m.n_max(), "HH_{max_degree} needs degree {} of the module", max_degree + 1);
    let ranks: Vec<usize> = (0..=max_degree + 1)
        .map(|n| if n == 0 { 0 } else { m.hochschild_b(n).rank() })
        .collect();
    (0..=max_degree).map(|n| m.dim(n) - ranks[n] - ranks[n + 1]).collect()
}

/// Tot_n = C_n ⊕ C_{n−2} ⊕ ⋯ with differential b + B.
pub struct TotalComplex<'a> {
    module: &'a CyclicModule,
}

impl<'a> TotalComplex<'a> {
    pub fn new(module: &'a CyclicModule) -> Result<Self> {
        if !module.is_unital() {
            return Err(Error::NonUnital("cyclic homology needs the Connes operator".into()));
        }
        Ok(TotalComplex { module })
    }

    /// Start of the block C_{n−2p} inside Tot_n.
    fn offset(&self, n: usize, p: usize) -> usize {
        (0..p).map(|q| self.module.dim(n - 2 * q)).sum()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.offset(n, n / 2 + 1)
    }

    /// Tot_n → Tot_{n−1}; (x_n, x_{n−2}, …) ↦ (b x_n + B x_{n−2}, …).
    pub fn differential(&self, n: usize) -> SparseMatrix {
        let m = self.module;
        let mut cols: Vec<SparseVec> = Vec::with_capacity(self.dim(n));
        if n == 0 {
            return SparseMatrix::zero(0, self.dim(0));
        }
        for p in 0..=n / 2 {
            let k = n - 2 * p;
            let b = (k >= 1).then(|| (m.hochschild_b(k), self.offset(n - 1, p) as u32));
            let big_b = (p >= 1).then(|| (m.connes_b(k).expect("unital"), self.offset(n - 1, p - 1) as u32));
            for j in 0..m.dim(k) {
                let mut col = Vec::new();
                for (mat, off) in b.iter().chain(big_b.iter()) {
                    col.extend(mat.column(j).iter().map(|(i, x)| (i + off, x.clone())));
                }
                cols.push(col);
            }
        }
        SparseMatrix::from_columns(self.dim(n - 1), cols)
    }

    /// S^k: Tot_n → Tot_{n−2k}, dropping the first k blocks.
    fn periodicity(&self, n: usize, k: usize, v: &[(u32, crate::scalars::GaussianRational)]) -> SparseVec {
        let cut = self.offset(n, k) as u32;
        v.iter().filter(|(i, _)| *i >= cut).map(|(i, x)| (i - cut, x.clone())).collect()
    }
}

/// dim HC_n for n = 0..=max_degree.
pub fn cyclic_dims(m: &CyclicModule, max_degree: usize) -> Result<Vec<usize>> {
    assert!(max_degree < m.n_max(), "HC_{max_degree} needs degree {} of the module", max_degree + 1);
    let tot = TotalComplex::new(m)?;
    let ranks: Vec<usize> = (0..=max_degree + 1).map(|n| tot.differential(n).rank()).collect();
    Ok((0..=max_degree).map(|n| tot.dim(n) - ranks[n] - ranks[n + 1]).collect())
}

fn build(src: Source<'_>, max_degree: usize, budget: usize) -> Result<CyclicModule> {
    CyclicModule::build(src, max_degree + 1, budget)
}

pub fn hh(src: Source<'_>, max_degree: usize, budget: usize) -> Result<HomologyResult> {
    let m = build(src, max_degree, budget)?;
    Ok(HomologyResult { dims: hochschild_dims(&m, max_degree) })
}

pub fn hc(src: Source<'_>, max_degree: usize, budget: usize) -> Result<HomologyResult> {
    let m = build(src, max_degree, budget)?;
    Ok(HomologyResult { dims: cyclic_dims(&m, max_degree)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HpResult {
    pub window: usize,
    pub hc: Vec<usize>,
    /// None when the periodicity ranks had not settled inside the window.
    pub even: Option<usize>,
    pub odd: Option<usize>,
}

impl HpResult {
    pub fn stabilized(&self) -> bool {
        self.even.is_some() && self.odd.is_some()
    }
}

/// Rank of S^k: HC_n → HC_{n−2k}.
fn s_rank(tot: &TotalComplex<'_>, cycles: &[SparseVec], n: usize, k: usize) -> usize {
    let low = n - 2 * k;
    let boundaries = tot.differential(low + 1);
    let images: Vec<SparseVec> = cycles.iter().map(|z| tot.periodicity(n, k, z)).collect();
    let joint = SparseMatrix::from_columns(tot.dim(low), images).hcat(&boundaries);
    joint.rank() - boundaries.rank()
}

/// HP_even and HP_odd read off HC_0..HC_window. A parity is settled when the
/// two top S maps and their composite have equal rank.
pub fn periodic(m: &CyclicModule, window: usize) -> Result<HpResult> {
    if window < 4 {
        return Err(Error::Precondition(format!("window {window} < 4")));
    }
    let hc = cyclic_dims(m, window)?;
    let tot = TotalComplex::new(m)?;
    let settle = |parity: usize| -> Option<usize> {
        let top = if window % 2 == parity { window } else { window - 1 };
        if top < 4 {
            return None;
        }
        let z_top = tot.differential(top).kernel();
        let z_mid = tot.differential(top - 2).kernel();
        let r1 = s_rank(&tot, &z_top, top, 1);
        let r2 = s_rank(&tot, &z_mid, top - 2, 1);
        let r12 = s_rank(&tot, &z_top, top, 2);
        (r1 == r2 && r2 == r12).then_some(r12)
    };
    Ok(HpResult { window, even: settle(0), odd: settle(1), hc })
}

pub fn hp(src: Source<'_>, window: usize, budget: usize) -> Result<HpResult> {
    let m = build(src, window, budget)?;
    periodic(&m, window)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoritaReport {
    pub n: usize,
    pub max_degree: usize,
    pub hh_a: Vec<usize>,
    pub hh_matrix: Vec<usize>,
    pub hc_a: Vec<usize>,
    pub hc_matrix: Vec<usize>,
    pub equal: bool,
}

/// HH and HC tables of A and M_n(A) up to `max_degree`.
pub fn morita_check(a: &AlgebraPresentation, n: usize, max_degree: usize, budget: usize) -> Result<MoritaReport> {
    if n == 0 {
        return Err(Error::Precondition("matrix size must be positive".into()));
    }
    let big = a.matrix_algebra(n);
    let ma = build(Source::Algebra(a), max_degree, budget)?;
    let mm = build(Source::Algebra(&big), max_degree, budget)?;
    let hh_a = hochschild_dims(&ma, max_degree);
    let hh_matrix = hochschild_dims(&mm, max_degree);
    let hc_a = cyclic_dims(&ma, max_degree)?;
    let hc_matrix = cyclic_dims(&mm, max_degree)?;
    Ok(MoritaReport {
        n,
        max_degree,
        equal: hh_a == hh_matrix && hc_a == hc_matrix,
        hh_a,
        hh_matrix,
        hc_a,
        hc_matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::shipped;
    use crate::cyclic::DEFAULT_BUDGET;

    fn alg(a: &AlgebraPresentation) -> Source<'_> {
        Source::Algebra(a)
    }

    #[test]
    fn field_values() {
        let q = shipped::field();
        assert_eq!(hh(alg(&q), 3, DEFAULT_BUDGET).unwrap().dims, vec![1, 0, 0, 0]);
        assert_eq!(hc(alg(&q), 4, DEFAULT_BUDGET).unwrap().dims, vec![1, 0, 1, 0, 1]);
        let p = hp(alg(&q), 5, DEFAULT_BUDGET).unwrap();
        assert_eq!((p.even, p.odd), (Some(1), Some(0)));
        let p = hp(alg(&q), 4, DEFAULT_BUDGET).unwrap();
        assert_eq!((p.even, p.odd), (Some(1), None));
        assert!(hp(alg(&q), 3, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn dual_numbers_values() {
        let a = shipped::dual_numbers();
        // HH_n(ℚ[x]/x²) = 2, 1, 1, … over ℚ; HC_n = 2, 0, 2, 0, … mod the reduced part
        let h = hh(alg(&a), 3, DEFAULT_BUDGET).unwrap().dims;
        assert_eq!(h[0], 2);
        let c = hc(alg(&a), 3, DEFAULT_BUDGET).unwrap().dims;
        assert_eq!(c[0], 2);
    }

    #[test]
    fn zero_algebra_is_acyclic() {
        let z = shipped::zero_algebra();
        assert_eq!(hc(alg(&z), 3, DEFAULT_BUDGET).unwrap().dims, vec![0; 4]);
        assert_eq!(hh(alg(&z), 3, DEFAULT_BUDGET).unwrap().dims, vec![0; 4]);
    }

    #[test]
    fn matrix_algebra_is_morita_equivalent() {
        let r = morita_check(&shipped::field(), 2, 3, DEFAULT_BUDGET).unwrap();
        assert!(r.equal, "{r:?}");
        let r = morita_check(&shipped::field(), 1, 2, DEFAULT_BUDGET).unwrap();
        assert!(r.equal);
    }

    #[test]
    fn non_unital_has_no_cyclic_homology() {
        let a = AlgebraPresentation::new(vec!["x".into()], None, vec![]).unwrap();
        assert_eq!(hh(alg(&a), 2, DEFAULT_BUDGET).unwrap().dims, vec![1, 1, 1]);
        assert!(matches!(hc(alg(&a), 2, DEFAULT_BUDGET), Err(Error::NonUnital(_))));
    }
}
