//! The graded cyclic module of a finite algebra or category.
//!
//! Degree n is spanned by cyclically composable words (a_0, …, a_n) of basis
//! morphisms, a_i∘a_{i+1} defined for i < n and a_n∘a_0 defined. With
//! σ = |a_n|·(|a_0| + ⋯ + |a_{n−1}|):
//!
//! ```text
//! d_i(a_0, …, a_n) = (a_0, …, a_i∘a_{i+1}, …, a_n)          0 ≤ i < n
//! d_n(a_0, …, a_n) = (−1)^σ (a_n∘a_0, a_1, …, a_{n−1})
//! t(a_0, …, a_n)   = (−1)^{n+σ} (a_n, a_0, …, a_{n−1})
//! s(a_0, …, a_n)   = (1, a_0, …, a_n)
//! ```
//!
//! Listing a word backwards as (f_n, …, f_0) turns d_n into the wrap-around
//! face ∂_0 and d_i into ∂_{n−i}. Then b = Σ(−1)^i d_i, b' = Σ_{i<n}(−1)^i d_i,
//! N = Σ t^i and B = (1 − t)·s·N.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::linalg::{SparseMatrix, SparseVec};
use super::presentation::{AlgebraPresentation, DgCategoryPresentation, Quiver};
use crate::error::{Error, Result};
use crate::scalars::GaussianRational as F;

pub const DEFAULT_BUDGET: usize = 200_000;

/// Which input a module was built from.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    Algebra(&'a AlgebraPresentation),
    Category(&'a DgCategoryPresentation),
}

impl Source<'_> {
    fn quiver(&self) -> &Quiver {
        match self {
            Source::Algebra(a) => a.quiver(),
            Source::Category(c) => c.quiver(),
        }
    }
}

#[derive(Clone, Debug)]
enum WordSpace {
    /// Every word of length `len` over `base` letters, indexed in base `base`.
    Radix { base: usize, len: usize, dim: usize },
    /// Explicitly enumerated composable words.
    Listed { len: usize, words: Vec<u32>, index: HashMap<Vec<u32>, u32> },
}

impl WordSpace {
    fn dim(&self) -> usize {
        match self {
            WordSpace::Radix { dim, .. } => *dim,
            WordSpace::Listed { words, len, .. } => words.len() / len,
        }
    }

    fn index(&self, w: &[u32]) -> u32 {
        match self {
            WordSpace::Radix { base, .. } => w.iter().fold(0usize, |acc, &x| acc * base + x as usize) as u32,
            WordSpace::Listed { index, .. } => *index.get(w).expect("word is composable"),
        }
    }

    fn word(&self, i: usize, buf: &mut Vec<u32>) {
        buf.clear();
        match self {
            WordSpace::Radix { base, len, .. } => {
                buf.resize(*len, 0);
                let mut r = i;
                for k in (0..*len).rev() {
                    buf[k] = (r % base) as u32;
                    r /= base;
                }
            }
            WordSpace::Listed { len, words, .. } => buf.extend_from_slice(&words[i * len..(i + 1) * len]),
        }
    }
}

/// Number of cyclically composable words of each length 1..=len, by powers of
/// the object adjacency matrix.
fn count_words(q: &Quiver, len: usize) -> Vec<u128> {
    let k = q.objects;
    let mut adj = vec![vec![0u128; k]; k];
    for f in 0..q.size() {
        adj[q.tgt[f] as usize][q.src[f] as usize] += 1;
    }
    let mut power = adj.clone();
    let mut out = Vec::new();
    for step in 1..=len {
        if step > 1 {
            let mut next = vec![vec![0u128; k]; k];
            for i in 0..k {
                for j in 0..k {
                    for l in 0..k {
                        next[i][j] = next[i][j].saturating_add(power[i][l].saturating_mul(adj[l][j]));
                    }
                }
            }
            power = next;
        }
        out.push((0..k).fold(0u128, |acc, i| acc.saturating_add(power[i][i])));
    }
    out
}

fn enumerate_words(q: &Quiver, len: usize) -> WordSpace {
    let mut words = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(len);
    fn rec(q: &Quiver, len: usize, stack: &mut Vec<u32>, out: &mut Vec<u32>) {
        if stack.len() == len {
            if q.src[*stack.last().expect("len ≥ 1") as usize] == q.tgt[stack[0] as usize] {
                out.extend_from_slice(stack);
            }
            return;
        }
        for f in 0..q.size() as u32 {
            if stack.last().is_none_or(|&prev| q.src[prev as usize] == q.tgt[f as usize]) {
                stack.push(f);
                rec(q, len, stack, out);
                stack.pop();
            }
        }
    }
    rec(q, len, &mut stack, &mut words);
    let index = words.chunks(len).enumerate().map(|(i, w)| (w.to_vec(), i as u32)).collect();
    WordSpace::Listed { len, words, index }
}

fn sign(odd: bool) -> F {
    if odd {
        -F::one()
    } else {
        F::one()
    }
}

/// The cyclic module truncated at degree `n_max`.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    quiver: Quiver,
    spaces: Vec<WordSpace>,
}

impl CyclicModule {
    /// Builds degrees 0..=n_max; fails if any degree has more than `budget`
    /// basis words or the category has a nonzero differential.
    pub fn build(src: Source<'_>, n_max: usize, budget: usize) -> Result<Self> {
        if let Source::Category(c) = src {
            if c.has_differential() {
                return Err(Error::Unsupported(
                    "categories with a nonzero differential (only graded, d = 0, inputs are handled)".into(),
                ));
            }
        }
        let quiver = src.quiver().clone();
        let counts = count_words(&quiver, n_max + 1);
        for (n, &dim) in counts.iter().enumerate() {
            if dim > budget as u128 || dim > u32::MAX as u128 {
                return Err(Error::BudgetExceeded { degree: n, dim, budget });
            }
        }
        let spaces = (0..=n_max)
            .map(|n| match src {
                Source::Algebra(_) => WordSpace::Radix { base: quiver.size(), len: n + 1, dim: counts[n] as usize },
                Source::Category(_) => enumerate_words(&quiver, n + 1),
            })
            .collect();
        Ok(CyclicModule { quiver, spaces })
    }

    pub fn n_max(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces[n].dim()
    }

    pub fn is_unital(&self) -> bool {
        self.quiver.identity.is_some()
    }

    /// The basis word with index `i` in degree `n`.
    pub fn word(&self, n: usize, i: usize) -> Vec<u32> {
        let mut w = Vec::new();
        self.spaces[n].word(i, &mut w);
        w
    }

    fn check_degree(&self, n: usize) {
        assert!(n <= self.n_max(), "degree {n} beyond the truncation {}", self.n_max());
    }

    fn sigma_odd(&self, w: &[u32]) -> bool {
        let n = w.len() - 1;
        let last = self.quiver.deg[w[n] as usize];
        let rest: i32 = w[..n].iter().map(|&a| self.quiver.deg[a as usize]).sum();
        (last * rest).rem_euclid(2) == 1
    }

    /// Pushes `scale·d_i(w)` as (index in degree n−1, coefficient).
    fn face_into(&self, i: usize, w: &[u32], scale: &F, buf: &mut Vec<u32>, out: &mut SparseVec) {
        let n = w.len() - 1;
        let target = &self.spaces[n - 1];
        if i < n {
            for (k, v) in self.quiver.compose(w[i], w[i + 1]) {
                buf.clear();
                buf.extend_from_slice(&w[..i]);
                buf.push(*k);
                buf.extend_from_slice(&w[i + 2..]);
                out.push((target.index(buf), scale * v));
            }
        } else {
            let s = &sign(self.sigma_odd(w)) * scale;
            for (k, v) in self.quiver.compose(w[n], w[0]) {
                buf.clear();
                buf.push(*k);
                buf.extend_from_slice(&w[1..n]);
                out.push((target.index(buf), &s * v));
            }
        }
    }

    /// t(w) as (sign, word).
    fn rotate(&self, w: &[u32]) -> (F, Vec<u32>) {
        let n = w.len() - 1;
        let mut out = Vec::with_capacity(w.len());
        out.push(w[n]);
        out.extend_from_slice(&w[..n]);
        (sign((n % 2 == 1) ^ self.sigma_odd(w)), out)
    }

    fn matrix(&self, from: usize, to: usize, col: impl Fn(&[u32], &mut Vec<u32>, &mut SparseVec)) -> SparseMatrix {
        let mut w = Vec::new();
        let mut buf = Vec::new();
        let cols = (0..self.dim(from))
            .map(|j| {
                self.spaces[from].word(j, &mut w);
                let mut out = Vec::new();
                col(&w, &mut buf, &mut out);
                out
            })
            .collect();
        SparseMatrix::from_columns(self.dim(to), cols)
    }

    /// d_i: C_n → C_{n−1}.
    pub fn face(&self, n: usize, i: usize) -> SparseMatrix {
        self.check_degree(n);
        assert!(n >= 1 && i <= n);
        self.matrix(n, n - 1, |w, buf, out| self.face_into(i, w, &F::one(), buf, out))
    }

    /// t: C_n → C_n.
    pub fn cyclic_t(&self, n: usize) -> SparseMatrix {
        self.check_degree(n);
        self.matrix(n, n, |w, _, out| {
            let (s, r) = self.rotate(w);
            out.push((self.spaces[n].index(&r), s));
        })
    }

    /// b = Σ_{i=0}^{n} (−1)^i d_i: C_n → C_{n−1}; zero map on C_0.
    pub fn hochschild_b(&self, n: usize) -> SparseMatrix {
        self.check_degree(n);
        if n == 0 {
            return SparseMatrix::zero(0, self.dim(0));
        }
        self.matrix(n, n - 1, |w, buf, out| {
            for i in 0..=n {
                self.face_into(i, w, &sign(i % 2 == 1), buf, out);
            }
        })
    }

    /// b' = Σ_{i<n} (−1)^i d_i.
    pub fn b_prime(&self, n: usize) -> SparseMatrix {
        self.check_degree(n);
        assert!(n >= 1);
        self.matrix(n, n - 1, |w, buf, out| {
            for i in 0..n {
                self.face_into(i, w, &sign(i % 2 == 1), buf, out);
            }
        })
    }

    /// b with the wrap-around face signed by (−1)^{n+σ} instead of (−1)^σ;
    /// kept only to report that this variant is not a differential.
    pub fn literal_sign_b(&self, n: usize) -> SparseMatrix {
        self.check_degree(n);
        assert!(n >= 1);
        self.matrix(n, n - 1, |w, buf, out| {
            for i in 0..n {
                self.face_into(i, w, &sign(i % 2 == 1), buf, out);
            }
            self.face_into(n, w, &F::one(), buf, out);
        })
    }

    fn identity(&self) -> Result<&[SparseVec]> {
        self.quiver
            .identity
            .as_deref()
            .ok_or_else(|| Error::NonUnital("no identities, so no extra degeneracy s".into()))
    }

    /// s: C_n → C_{n+1}, inserting the identity of the target of a_0.
    pub fn extra_degeneracy(&self, n: usize) -> Result<SparseMatrix> {
        self.check_degree(n + 1);
        let ids = self.identity()?;
        Ok(self.matrix(n, n + 1, |w, buf, out| {
            for (k, v) in &ids[self.quiver.tgt[w[0] as usize] as usize] {
                buf.clear();
                buf.push(*k);
                buf.extend_from_slice(w);
                out.push((self.spaces[n + 1].index(buf), v.clone()));
            }
        }))
    }

    /// N = Σ_{i=0}^{n} t^i on C_n.
    pub fn norm(&self, n: usize) -> SparseMatrix {
        self.check_degree(n);
        self.matrix(n, n, |w, _, out| {
            for (s, r) in self.orbit(w) {
                out.push((self.spaces[n].index(&r), s));
            }
        })
    }

    /// (t^i w) for i = 0..=n.
    fn orbit(&self, w: &[u32]) -> Vec<(F, Vec<u32>)> {
        let mut out = vec![(F::one(), w.to_vec())];
        for _ in 0..w.len() - 1 {
            let (s, cur) = out.last().expect("nonempty");
            let (s2, next) = self.rotate(cur);
            out.push((s * &s2, next));
        }
        out
    }

    /// B = (1 − t)·s·N: C_n → C_{n+1}.
    pub fn connes_b(&self, n: usize) -> Result<SparseMatrix> {
        self.check_degree(n + 1);
        let ids = self.identity()?;
        let up = &self.spaces[n + 1];
        Ok(self.matrix(n, n + 1, |w, buf, out| {
            for (s, r) in self.orbit(w) {
                for (k, v) in &ids[self.quiver.tgt[r[0] as usize] as usize] {
                    buf.clear();
                    buf.push(*k);
                    buf.extend_from_slice(&r);
                    let c = &s * v;
                    out.push((up.index(buf), c.clone()));
                    let (ts, tw) = self.rotate(buf);
                    out.push((up.index(&tw), -(&ts * &c)));
                }
            }
        }))
    }

    /// Runs every identity of a mixed complex on degrees 0..=n_max.
    pub fn identity_report(&self) -> IdentityReport {
        let mut checks = Vec::new();
        let top = self.n_max();
        let mut push = |name: &str, degree: usize, holds: bool| {
            checks.push(IdentityCheck { name: name.into(), degree, holds });
        };
        for n in 2..=top {
            let faces: Vec<SparseMatrix> = (0..=n).map(|i| self.face(n, i)).collect();
            let lower: Vec<SparseMatrix> = (0..n).map(|i| self.face(n - 1, i)).collect();
            let ok = (0..=n).all(|j| (0..j).all(|i| lower[i].mul(&faces[j]) == lower[j - 1].mul(&faces[i])));
            push("simplicial d_i d_j = d_{j-1} d_i", n, ok);
        }
        for n in 0..=top {
            let t = self.cyclic_t(n);
            let mut p = SparseMatrix::identity(self.dim(n));
            for _ in 0..=n {
                p = t.mul(&p);
            }
            push("t^{n+1} = 1", n, p == SparseMatrix::identity(self.dim(n)));
        }
        let bs: Vec<SparseMatrix> = (0..=top).map(|n| self.hochschild_b(n)).collect();
        for n in 2..=top {
            push("b b = 0", n, bs[n - 1].mul(&bs[n]).is_zero());
        }
        let mut literal = Vec::new();
        for n in 2..=top {
            literal.push((n, self.literal_sign_b(n - 1).mul(&self.literal_sign_b(n)).is_zero()));
        }
        if self.is_unital() {
            let cb: Vec<SparseMatrix> = (0..top).map(|n| self.connes_b(n).expect("unital")).collect();
            for n in 0..top.saturating_sub(1) {
                push("B B = 0", n, cb[n + 1].mul(&cb[n]).is_zero());
            }
            for n in 0..top {
                let bb = bs[n + 1].mul(&cb[n]);
                let anti = if n == 0 { bb } else { bb.add(&cb[n - 1].mul(&bs[n])) };
                push("b B + B b = 0", n, anti.is_zero());
            }
        }
        IdentityReport { checks, literal_wrap_sign_b2: literal }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub degree: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    /// (n, b_{n−1}b_n = 0?) when the wrap-around face also carries (−1)^n.
    pub literal_wrap_sign_b2: Vec<(usize, bool)>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}
