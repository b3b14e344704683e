//! Connections on free modules A_θ^k and the lift of a connection along a
//! split surjection A_θ^p → A_θ^q.

use std::fmt;

use crate::error::{Error, Result};
use crate::nctorus::{delta_tau, nc_mul, NCElement};

/// Dense matrix over A_θ, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcMatrix {
    rows: usize,
    cols: usize,
    data: Vec<NCElement>,
}

impl NcMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        NcMatrix { rows, cols, data: vec![NCElement::zero(); rows * cols] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zero(k, k);
        for i in 0..k {
            m.set(i, i, NCElement::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<NCElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(NcMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// A k×1 matrix.
    pub fn column(v: Vec<NCElement>) -> Self {
        NcMatrix { rows: v.len(), cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &NCElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: NCElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row_vecs(&self) -> Vec<Vec<NCElement>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, o: &NcMatrix) -> Result<NcMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = NcMatrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = NCElement::zero();
                for k in 0..self.cols {
                    acc = &acc + &nc_mul(self.get(i, k), o.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &NcMatrix) -> Result<NcMatrix> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &NcMatrix) -> Result<NcMatrix> {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &NcMatrix, f: impl Fn(&NCElement, &NCElement) -> NCElement) -> Result<NcMatrix> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} vs {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(NcMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// δ_τ applied entrywise.
    pub fn delta(&self) -> NcMatrix {
        NcMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(delta_tau).collect(),
        }
    }
}

impl fmt::Display for NcMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.row_vecs().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// ∇(e) = δ_τ(e) + B·e on A_θ^k, elements written as columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeConnection {
    b: NcMatrix,
}

impl FreeConnection {
    pub fn new(b: NcMatrix) -> Result<Self> {
        if b.rows() != b.cols() {
            return Err(Error::DimensionMismatch(format!(
                "connection matrix is {}×{}",
                b.rows(),
                b.cols()
            )));
        }
        Ok(FreeConnection { b })
    }

    pub fn rank(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &NcMatrix {
        &self.b
    }
}

pub fn nabla_free(v: &[NCElement], conn: &FreeConnection) -> Result<Vec<NCElement>> {
    if v.len() != conn.rank() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a rank {} connection",
            v.len(),
            conn.rank()
        )));
    }
    let col = NcMatrix::column(v.to_vec());
    let out = col.delta().add(&conn.b.mul(&col)?)?;
    Ok(out.data)
}

/// Given F: A_θ^p → A_θ^q (a q×p matrix) with section S (p×q, F·S = I) and a
/// connection matrix B₂ on A_θ^q, returns B₁ = S·(δ_τ(F) + B₂·F), so that
/// F·B₁ = δ_τ(F) + B₂·F, i.e. F intertwines the two connections.
pub fn lift_connection(f: &NcMatrix, s: &NcMatrix, b2: &NcMatrix) -> Result<NcMatrix> {
    let (q, p) = (f.rows(), f.cols());
    if (s.rows(), s.cols()) != (p, q) {
        return Err(Error::DimensionMismatch(format!(
            "F is {q}×{p} but S is {}×{}",
            s.rows(),
            s.cols()
        )));
    }
    if (b2.rows(), b2.cols()) != (q, q) {
        return Err(Error::DimensionMismatch(format!(
            "B₂ must be {q}×{q}, got {}×{}",
            b2.rows(),
            b2.cols()
        )));
    }
    if f.mul(s)? != NcMatrix::identity(q) {
        return Err(Error::NotASection);
    }
    let target = f.delta().add(&b2.mul(f)?)?;
    let b1 = s.mul(&target)?;
    if f.mul(&b1)? != target {
        return Err(Error::Contract("F·B₁ ≠ δ_τ(F) + B₂·F".into()));
    }
    Ok(b1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_element;

    fn e(s: &str) -> NCElement {
        parse_element(s).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> NcMatrix {
        NcMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| e(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_one_free_connection() {
        let conn = FreeConnection::new(mat(&[&["c*z"]])).unwrap();
        let out = nabla_free(&[NCElement::u1()], &conn).unwrap();
        assert_eq!(out, vec![e("c*tau*U1 + c*z*U1")]);
        let flat = FreeConnection::new(NcMatrix::zero(1, 1)).unwrap();
        assert_eq!(nabla_free(&[NCElement::one()], &flat).unwrap(), vec![NCElement::zero()]);
        assert!(nabla_free(&[NCElement::one(), NCElement::one()], &conn).is_err());
    }

    #[test]
    fn lift_projection_onto_first_factor() {
        let b1 = lift_connection(&mat(&[&["1", "0"]]), &mat(&[&["1"], &["0"]]), &mat(&[&["c*z"]])).unwrap();
        assert_eq!(b1, mat(&[&["c*z", "0"], &["0", "0"]]));
    }

    #[test]
    fn lift_identity_returns_b2() {
        let b2 = mat(&[&["U1", "th"], &["0", "c*z*U2"]]);
        let id = NcMatrix::identity(2);
        assert_eq!(lift_connection(&id, &id, &b2).unwrap(), b2);
    }

    #[test]
    fn lift_with_twisted_surjection() {
        let f = mat(&[&["U1", "1"]]);
        let b1 = lift_connection(&f, &mat(&[&["0"], &["1"]]), &NcMatrix::zero(1, 1)).unwrap();
        assert_eq!(b1, mat(&[&["0", "0"], &["c*tau*U1", "0"]]));
        assert_eq!(f.mul(&b1).unwrap(), f.delta());
    }

    #[test]
    fn lift_rejects_non_section() {
        let err = lift_connection(&mat(&[&["U1", "0"]]), &mat(&[&["1"], &["0"]]), &NcMatrix::zero(1, 1));
        assert!(matches!(err, Err(Error::NotASection)));
        let err = lift_connection(&mat(&[&["1", "0"]]), &mat(&[&["1", "0"]]), &NcMatrix::zero(1, 1));
        assert!(matches!(err, Err(Error::DimensionMismatch(_))));
    }
}
