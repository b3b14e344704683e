//! Output records. In `records` mode each is one JSON line after a header
//! line; in `human` mode each renders as plain text.

use std::fmt::Write as _;

use nctorus_core::bundles::SectionFile;
use nctorus_core::elliptic::{FormalObject, SummandRecord};
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "nctorus-records";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    Header { format: String, version: u32, command: String },
    /// An element of A_θ in inline syntax; `name` is empty for a bare result.
    Element { name: String, value: String },
    Matrix { name: String, rows: Vec<Vec<String>> },
    Section { name: String, section: SectionFile },
    Object { name: String, summands: Vec<SummandRecord> },
    K0 { name: String, r: i64, d: i64 },
    Hom { name: String, dim: u64 },
    Dims { invariant: String, dims: Vec<usize> },
    Periodic { window: usize, even: Option<usize>, odd: Option<usize> },
    Suite { id: u8, name: String, passed: bool, checks: usize, detail: String },
    /// A contract the command verified; `holds = false` sets exit status 1.
    Check { name: String, holds: bool },
}

impl Record {
    pub fn header(command: &str) -> Self {
        Record::Header { format: FORMAT.into(), version: VERSION, command: command.into() }
    }

    pub fn human(&self) -> String {
        match self {
            Record::Header { .. } => String::new(),
            Record::Element { name, value } if name.is_empty() => value.clone(),
            Record::Element { name, value } => format!("{name} = {value}"),
            Record::Matrix { name, rows } => {
                let mut s = format!("{name} =");
                for row in rows {
                    let _ = write!(s, "\n  [{}]", row.join(", "));
                }
                s
            }
            Record::Section { name, section } => {
                let (n, m) = section.charge;
                let mut s = format!("{name} in E_({n},{m}):");
                if section.terms.is_empty() {
                    s.push_str(" 0");
                }
                for t in &section.terms {
                    let _ = write!(
                        s,
                        "\n  alpha {}: poly [{}] exp(({})x^2 + ({})x + ({}))",
                        t.alpha,
                        t.poly.join(", "),
                        t.q2,
                        t.q1,
                        t.q0
                    );
                }
                s
            }
            Record::Object { name, summands } => match FormalObject::try_from(summands.clone()) {
                Ok(x) => format!("{name} = {x}"),
                Err(e) => format!("{name} = <{e}>"),
            },
            Record::K0 { name, r, d } => format!("[{name}] = ({r}, {d})"),
            Record::Hom { name, dim } => format!("dim {name} = {dim}"),
            Record::Dims { invariant, dims } => {
                let mut s = format!("n  {invariant}_n");
                for (n, d) in dims.iter().enumerate() {
                    let _ = write!(s, "\n{n}  {d}");
                }
                s
            }
            Record::Periodic { window, even, odd } => {
                let show = |v: &Option<usize>| v.map_or("not settled".to_string(), |d| d.to_string());
                format!("HP_even = {}, HP_odd = {} (window {window})", show(even), show(odd))
            }
            Record::Suite { id, name, passed, checks, detail } => {
                let verdict = if *passed { "PASS" } else { "FAIL" };
                let tail = if detail.is_empty() { String::new() } else { format!(": {detail}") };
                format!("{verdict} criterion {id} ({name}), {checks} checks{tail}")
            }
            Record::Check { name, holds } => format!("{name}: {}", if *holds { "ok" } else { "VIOLATED" }),
        }
    }
}
