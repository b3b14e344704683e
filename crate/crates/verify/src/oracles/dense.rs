//! Dense row reduction over ℚ(i).

use nctorus_core::scalars::GaussianRational as F;

/// Rank of a dense matrix given as rows.
pub fn rank(mut rows: Vec<Vec<F>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        let pivot: Vec<F> = rows[r].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x = &*x - &(&f * y);
            }
        }
        rows[r] = pivot;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Rank of the matrix whose columns are `cols`, each of length `len`.
pub fn rank_of_columns(len: usize, cols: &[Vec<F>]) -> usize {
    let rows = (0..len).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let f = |x: i64| F::from_int(x);
        assert_eq!(rank(vec![vec![f(1), f(2)], vec![f(2), f(4)]]), 1);
        assert_eq!(rank(vec![vec![f(0), f(1)], vec![f(1), f(0)]]), 2);
        assert_eq!(rank(vec![vec![F::i(), f(1)], vec![f(-1), F::i()]]), 1);
        assert_eq!(rank_of_columns(3, &[vec![f(1), f(0), f(0)], vec![f(2), f(0), f(0)]]), 1);
        assert_eq!(rank(Vec::new()), 0);
    }
}
