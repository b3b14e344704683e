//! JSON file forms of sections and matrices. Scalars and elements are
//! written in the same text syntax the parser reads.

use serde::{Deserialize, Serialize};

use super::free::NcMatrix;
use super::jet::{GaussJet, HeisenbergCharge, JetTerm};
use crate::error::{Error, Result};
use crate::scalars::SymbolicScalar;
use crate::text::{parse_element, parse_scalar};

fn zero_text() -> String {
    "0".into()
}

/// One term `p(x)·exp(q2·x² + q1·x + q0)` on residue class `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub alpha: usize,
    pub poly: Vec<String>,
    #[serde(default = "zero_text")]
    pub q2: String,
    #[serde(default = "zero_text")]
    pub q1: String,
    #[serde(default = "zero_text")]
    pub q0: String,
}

/// A section of E_{n,m} with its charge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionFile {
    pub charge: (i64, i64),
    pub terms: Vec<TermRecord>,
}

fn field(what: &str, src: &str) -> Result<SymbolicScalar> {
    parse_scalar(src).map_err(|e| Error::Format(format!("{what}: {e}")))
}

impl SectionFile {
    pub fn new(f: &GaussJet, ch: &HeisenbergCharge) -> Self {
        let terms = (0..f.residues())
            .flat_map(|alpha| {
                f.class(alpha).iter().map(move |t| TermRecord {
                    alpha,
                    poly: t.poly.iter().map(|c| c.to_string()).collect(),
                    q2: t.q2.to_string(),
                    q1: t.q1.to_string(),
                    q0: t.q0.to_string(),
                })
            })
            .collect();
        SectionFile { charge: (ch.n(), ch.m()), terms }
    }

    pub fn decode(&self) -> Result<(HeisenbergCharge, GaussJet)> {
        let ch = HeisenbergCharge::new(self.charge.0, self.charge.1).map_err(|e| Error::Format(format!("charge: {e}")))?;
        let mut classes = vec![Vec::new(); ch.residues()];
        for (i, t) in self.terms.iter().enumerate() {
            if t.alpha >= ch.residues() {
                return Err(Error::Format(format!(
                    "terms[{i}].alpha: {} is not below {}",
                    t.alpha,
                    ch.residues()
                )));
            }
            let poly = t
                .poly
                .iter()
                .enumerate()
                .map(|(k, c)| field(&format!("terms[{i}].poly[{k}]"), c))
                .collect::<Result<Vec<_>>>()?;
            let q2 = field(&format!("terms[{i}].q2"), &t.q2)?;
            let q1 = field(&format!("terms[{i}].q1"), &t.q1)?;
            let q0 = field(&format!("terms[{i}].q0"), &t.q0)?;
            classes[t.alpha].push(JetTerm::new(poly, q2, q1, q0));
        }
        Ok((ch, GaussJet::from_classes(classes)))
    }
}

/// Row-major matrix of element expressions.
pub fn matrix_from_text(rows: &[Vec<String>], what: &str) -> Result<NcMatrix> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| parse_element(s).map_err(|e| Error::Format(format!("{what}[{i}][{j}]: {e}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    NcMatrix::from_rows(parsed).map_err(|e| Error::Format(format!("{what}: {e}")))
}

pub fn matrix_to_text(m: &NcMatrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect()
}

/// Input of the lifting construction: F: A^p → A^q, a section S and B₂.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftFile {
    #[serde(rename = "F")]
    pub f: Vec<Vec<String>>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<String>>,
    #[serde(rename = "B2")]
    pub b2: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_roundtrip() {
        let text = r#"{"charge": [1, 2], "terms": [
            {"alpha": 0, "poly": ["1", "th"], "q2": "-1/2"},
            {"alpha": 1, "poly": ["i"], "q1": "tau", "q0": "c/3"}]}"#;
        let file: SectionFile = serde_json::from_str(text).unwrap();
        let (ch, f) = file.decode().unwrap();
        let again = SectionFile::new(&f, &ch);
        let (ch2, f2) = again.decode().unwrap();
        assert_eq!((ch, f), (ch2, f2));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let file: SectionFile = serde_json::from_str(r#"{"charge": [1, 1], "terms": [{"alpha": 0, "poly": ["1 +"]}]}"#).unwrap();
        let err = file.decode().unwrap_err().to_string();
        assert!(err.contains("terms[0].poly[0]"), "{err}");
        let file: SectionFile = serde_json::from_str(r#"{"charge": [1, 0], "terms": []}"#).unwrap();
        assert!(file.decode().unwrap_err().to_string().contains("charge"));
        let rows = vec![vec!["U1".to_string(), "U2^".to_string()]];
        assert!(matrix_from_text(&rows, "F").unwrap_err().to_string().contains("F[0][1]"));
    }

    #[test]
    fn matrix_roundtrip() {
        let rows = vec![vec!["U2*U1".to_string(), "0".to_string()], vec!["c*z".to_string(), "1/2*th".to_string()]];
        let m = matrix_from_text(&rows, "B").unwrap();
        assert_eq!(matrix_from_text(&matrix_to_text(&m), "B").unwrap(), m);
    }
}
