//! Hochschild homology from the normalized bar complex, cyclic homology from
//! the Connes complex C_n/(1 − t), and HH₀ as A/[A, A].
//!
//! Tensors are dense coefficient arrays indexed in base dim A; everything is
//! recomputed from the structure constants.

use nctorus_core::cyclic::AlgebraPresentation;
use nctorus_core::scalars::GaussianRational as F;

use super::dense::rank_of_columns;

/// Structure constants c[i][j][k] of e_i·e_j = Σ c_ijk e_k.
pub struct Table {
    n: usize,
    c: Vec<Vec<Vec<F>>>,
    unit: Option<Vec<F>>,
}

impl Table {
    pub fn new(a: &AlgebraPresentation) -> Self {
        let n = a.dim();
        let mut c = vec![vec![vec![F::zero(); n]; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                for (k, x) in a.product(i, j) {
                    out[*k as usize] = x.clone();
                }
            }
        }
        Table { n, c, unit: a.unit() }
    }

    fn dim(&self) -> usize {
        self.n
    }
}

/// dim A/[A, A].
pub fn commutator_quotient(a: &AlgebraPresentation) -> usize {
    let t = Table::new(a);
    let n = t.dim();
    let cols: Vec<Vec<F>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (0..n).map(|k| &t.c[i][j][k] - &t.c[j][i][k]).collect())
        .collect();
    n - rank_of_columns(n, &cols)
}

fn decode(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

fn encode(word: &[usize], base: usize) -> usize {
    word.iter().fold(0, |acc, &x| acc * base + x)
}

/// Adds coeff·(w with slots i, i+1 replaced by their product) into `out`;
/// `wrap` multiplies the last slot into the first.
fn face_into(t: &Table, w: &[usize], i: usize, coeff: &F, out: &mut [F]) {
    let n = t.dim();
    let len = w.len();
    let (l, r) = if i + 1 < len { (w[i], w[i + 1]) } else { (w[len - 1], w[0]) };
    for k in 0..n {
        let x = &t.c[l][r][k];
        if x.is_zero() {
            continue;
        }
        let mut v: Vec<usize> = Vec::with_capacity(len - 1);
        if i + 1 < len {
            v.extend_from_slice(&w[..i]);
            v.push(k);
            v.extend_from_slice(&w[i + 2..]);
        } else {
            v.push(k);
            v.extend_from_slice(&w[1..len - 1]);
        }
        out[encode(&v, n)] += &(coeff * x);
    }
}

/// b: C_m → C_{m−1} on A^{⊗(m+1)}, as columns.
fn hochschild_b(t: &Table, m: usize) -> Vec<Vec<F>> {
    let n = t.dim();
    let size = n.pow(m as u32 + 1);
    (0..size)
        .map(|idx| {
            let w = decode(idx, n, m + 1);
            let mut col = vec![F::zero(); n.pow(m as u32)];
            for i in 0..=m {
                let s = if i % 2 == 0 { F::one() } else { -F::one() };
                face_into(t, &w, i, &s, &mut col);
            }
            col
        })
        .collect()
}

/// 1 − t on C_m with t(a₀, …, a_m) = (−1)^m (a_m, a₀, …, a_{m−1}).
fn one_minus_t(t: &Table, m: usize) -> Vec<Vec<F>> {
    let n = t.dim();
    let size = n.pow(m as u32 + 1);
    let sign = if m.is_multiple_of(2) { F::one() } else { -F::one() };
    (0..size)
        .map(|idx| {
            let w = decode(idx, n, m + 1);
            let mut rot = vec![w[m]];
            rot.extend_from_slice(&w[..m]);
            let mut col = vec![F::zero(); size];
            col[idx] += &F::one();
            col[encode(&rot, n)] -= &sign;
            col
        })
        .collect()
}

/// dim HC_0..=max over ℚ(i) via the Connes complex.
pub fn connes_hc(a: &AlgebraPresentation, max: usize) -> Vec<usize> {
    let t = Table::new(a);
    let n = t.dim();
    let size = |m: usize| n.pow(m as u32 + 1);
    let im: Vec<usize> = (0..=max + 1).map(|m| rank_of_columns(size(m), &one_minus_t(&t, m))).collect();
    // rank of b̄_m: C_m/I_m → C_{m−1}/I_{m−1} is rank[b(C_m) | I_{m−1}] − rank I_{m−1}
    let bar_rank = |m: usize| -> usize {
        if m == 0 {
            return 0;
        }
        let mut cols = hochschild_b(&t, m);
        cols.extend(one_minus_t(&t, m - 1));
        rank_of_columns(size(m - 1), &cols) - im[m - 1]
    };
    let ranks: Vec<usize> = (0..=max + 1).map(bar_rank).collect();
    (0..=max).map(|m| size(m) - im[m] - ranks[m] - ranks[m + 1]).collect()
}

/// dim HH_0..=max via the normalized bar complex A ⊗ Ā^{⊗m}, Ā = A/ℚ(i)·1.
pub fn normalized_hh(a: &AlgebraPresentation, max: usize) -> Vec<usize> {
    let t = Table::new(a);
    let n = t.dim();
    let unit = t.unit.clone().expect("normalized complex needs a unit");
    let Some(p) = unit.iter().position(|x| !x.is_zero()) else {
        return vec![0; max + 1];
    };
    let up = unit[p].inv().expect("nonzero");
    // Ā has basis e_i, i ≠ p; π(e_p) = −Σ_{i≠p} (u_i/u_p) e_i.
    let bar: Vec<usize> = (0..n).filter(|&i| i != p).collect();
    let slot = |i: usize| bar.iter().position(|&j| j == i);
    let project = |i: usize| -> Vec<(usize, F)> {
        match slot(i) {
            Some(s) => vec![(s, F::one())],
            None => bar
                .iter()
                .enumerate()
                .filter(|(_, &j)| !unit[j].is_zero())
                .map(|(s, &j)| (s, -(&unit[j] * &up)))
                .collect(),
        }
    };
    let nb = bar.len();
    let size = |m: usize| n * nb.pow(m as u32);
    let index = |a0: usize, rest: &[usize]| a0 * nb.pow(rest.len() as u32) + encode(rest, nb);
    let b = |m: usize| -> Vec<Vec<F>> {
        (0..size(m))
            .map(|idx| {
                let a0 = idx / nb.pow(m as u32);
                let rest = decode(idx % nb.pow(m as u32), nb, m);
                let w: Vec<usize> = std::iter::once(a0).chain(rest.iter().map(|&s| bar[s])).collect();
                let mut full = vec![F::zero(); n.pow(m as u32)];
                for i in 0..=m {
                    let s = if i % 2 == 0 { F::one() } else { -F::one() };
                    face_into(&t, &w, i, &s, &mut full);
                }
                // project slots 1.. of every word of length m into Ā
                let mut col = vec![F::zero(); size(m - 1)];
                for (j, x) in full.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let v = decode(j, n, m);
                    let mut partial: Vec<(Vec<usize>, F)> = vec![(Vec::new(), x.clone())];
                    for &letter in &v[1..] {
                        let opts = project(letter);
                        partial = partial
                            .iter()
                            .flat_map(|(word, c)| {
                                opts.iter().map(move |(s, y)| {
                                    let mut w2 = word.clone();
                                    w2.push(*s);
                                    (w2, c * y)
                                })
                            })
                            .collect();
                    }
                    for (word, c) in partial {
                        col[index(v[0], &word)] += &c;
                    }
                }
                col
            })
            .collect()
    };
    let ranks: Vec<usize> = (0..=max + 1)
        .map(|m| if m == 0 { 0 } else { rank_of_columns(size(m - 1), &b(m)) })
        .collect();
    (0..=max).map(|m| size(m) - ranks[m] - ranks[m + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nctorus_core::cyclic::shipped;

    #[test]
    fn field() {
        let q = shipped::field();
        assert_eq!(normalized_hh(&q, 3), vec![1, 0, 0, 0]);
        assert_eq!(connes_hc(&q, 3), vec![1, 0, 1, 0]);
        assert_eq!(commutator_quotient(&q), 1);
    }

    #[test]
    fn dual_numbers() {
        let a = shipped::dual_numbers();
        assert_eq!(normalized_hh(&a, 3), vec![2, 1, 1, 1]);
        assert_eq!(commutator_quotient(&shipped::matrix_2()), 1);
    }
}
