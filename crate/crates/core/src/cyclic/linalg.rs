//! Sparse matrices over ℚ(i) and exact rank / kernel by column reduction.
//!
//! Rank is computed per connected component of the row/column incidence
//! graph, which splits bar-type complexes along every grading the structure
//! constants respect. Inside a component columns are reduced against pivots
//! keyed by their lowest (largest-index) nonzero row.

use std::collections::HashMap;

use crate::scalars::GaussianRational as F;

pub type SparseVec = Vec<(u32, F)>;

/// a + s·b for row-sorted sparse vectors.
fn axpy(a: &[(u32, F)], s: &F, b: &[(u32, F)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ra = a.get(i).map_or(u32::MAX, |e| e.0);
        let rb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ra < rb {
            out.push(a[i].clone());
            i += 1;
        } else if rb < ra {
            out.push((rb, s * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((ra, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sorts by row and merges duplicates, dropping zeros.
pub fn normalize(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (r, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += &x,
            _ => out.push((r, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: (0..n as u32).map(|i| vec![(i, F::one())]).collect(),
        }
    }

    /// Columns need not be sorted.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        let cols: Vec<SparseVec> = cols.into_iter().map(normalize).collect();
        debug_assert!(cols.iter().flatten().all(|e| (e.0 as usize) < rows));
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let cols = (0..c)
            .map(|j| {
                (0..r)
                    .filter(|&i| !rows[i][j].is_zero())
                    .map(|i| (i as u32, rows[i][j].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: r, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, F)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.cols[j]
            .binary_search_by_key(&(i as u32), |e| e.0)
            .map(|k| self.cols[j][k].1.clone())
            .unwrap_or_default()
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.cols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                out[*i as usize][j] = x.clone();
            }
        }
        out
    }

    /// self · v for a sparse column v.
    pub fn apply(&self, v: &[(u32, F)]) -> SparseVec {
        let mut acc: HashMap<u32, F> = HashMap::new();
        for (k, x) in v {
            for (i, y) in &self.cols[*k as usize] {
                *acc.entry(*i).or_default() += &(x * y);
            }
        }
        normalize(acc.into_iter().collect())
    }

    pub fn mul(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), o.rows, "inner dimensions differ");
        SparseMatrix {
            rows: self.rows,
            cols: o.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, o: &SparseMatrix) -> SparseMatrix {
        self.axpy(&F::one(), o)
    }

    pub fn sub(&self, o: &SparseMatrix) -> SparseMatrix {
        self.axpy(&-F::one(), o)
    }

    /// self + s·o
    pub fn axpy(&self, s: &F, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (o.rows, o.cols()), "shapes differ");
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().zip(&o.cols).map(|(a, b)| axpy(a, s, b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zero(self.rows, self.cols());
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.iter().map(|(i, x)| (*i, x * s)).collect()).collect(),
        }
    }

    /// Block matrix [self | o].
    pub fn hcat(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, o.rows, "row counts differ");
        let mut cols = self.cols.clone();
        cols.extend(o.cols.iter().cloned());
        SparseMatrix { rows: self.rows, cols }
    }

    /// Block matrix [self; o].
    pub fn vcat(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), o.cols(), "column counts differ");
        let shift = self.rows as u32;
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(i, x)| (i + shift, x.clone()))).collect())
            .collect();
        SparseMatrix { rows: self.rows + o.rows, cols }
    }

    pub fn rank(&self) -> usize {
        rank_of_columns(self.rows, &self.cols)
    }

    /// A basis of the null space as sparse column vectors.
    pub fn kernel(&self) -> Vec<SparseVec> {
        kernel_of_columns(&self.cols)
    }
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let p = self.0[x as usize];
            self.0[x as usize] = self.0[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// Column indices grouped by connected component; zero columns omitted.
fn components(rows: usize, cols: &[SparseVec]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind((0..rows as u32).collect());
    for c in cols {
        if let Some((first, _)) = c.first() {
            for (r, _) in &c[1..] {
                uf.union(*first, *r);
            }
        }
    }
    let mut groups: HashMap<u32, Vec<usize>> = HashMap::new();
    for (j, c) in cols.iter().enumerate() {
        if let Some((first, _)) = c.first() {
            let root = uf.find(*first);
            groups.entry(root).or_default().push(j);
        }
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// Reduces `col` against `pivots`; returns the reduced column.
fn reduce(mut col: SparseVec, pivots: &HashMap<u32, SparseVec>) -> SparseVec {
    while let Some((low, x)) = col.last() {
        match pivots.get(low) {
            Some(p) => {
                let s = -(x * &p.last().expect("pivot column is nonzero").1.inv().expect("nonzero pivot"));
                col = axpy(&col, &s, p);
            }
            None => break,
        }
    }
    col
}

fn component_rank(cols: &[SparseVec], members: &[usize]) -> usize {
    let mut order: Vec<usize> = members.to_vec();
    order.sort_by_key(|&j| (cols[j].len(), j));
    let mut pivots: HashMap<u32, SparseVec> = HashMap::new();
    for j in order {
        let r = reduce(cols[j].clone(), &pivots);
        if let Some((low, _)) = r.last() {
            pivots.insert(*low, r);
        }
    }
    pivots.len()
}

pub fn rank_of_columns(rows: usize, cols: &[SparseVec]) -> usize {
    components(rows, cols).iter().map(|g| component_rank(cols, g)).sum()
}

/// Null space by reduction with the column operations recorded.
pub fn kernel_of_columns(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut pivots: HashMap<u32, (SparseVec, SparseVec)> = HashMap::new();
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut col = c.clone();
        let mut ops: SparseVec = vec![(j as u32, F::one())];
        while let Some((low, x)) = col.last() {
            match pivots.get(low) {
                Some((p, pv)) => {
                    let s = -(x * &p.last().expect("nonzero").1.inv().expect("nonzero pivot"));
                    col = axpy(&col, &s, p);
                    ops = normalize(axpy(&ops, &s, pv));
                }
                None => break,
            }
        }
        match col.last() {
            Some((low, _)) => {
                pivots.insert(*low, (col, ops));
            }
            None => out.push(ops),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: i64) -> F {
        F::from_int(n)
    }

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| f(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_small() {
        assert_eq!(dense(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(dense(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]).rank(), 2);
        assert_eq!(SparseMatrix::identity(5).rank(), 5);
        assert_eq!(SparseMatrix::zero(3, 4).rank(), 0);
        assert_eq!(dense(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 1]]).rank(), 3);
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let m = dense(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.len(), 4 - m.rank());
        for v in &k {
            assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn products_and_blocks() {
        let a = dense(&[&[1, 1], &[0, 1]]);
        let b = dense(&[&[1, -1], &[0, 1]]);
        assert_eq!(a.mul(&b), SparseMatrix::identity(2));
        assert_eq!(a.hcat(&b).cols(), 4);
        assert_eq!(a.vcat(&b).rows(), 4);
        assert_eq!(a.vcat(&b).get(2, 1), f(-1));
        assert!(a.sub(&a).is_zero());
    }
}
