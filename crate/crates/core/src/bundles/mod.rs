//! Holomorphic structures on Heisenberg modules and on free A_θ-modules.

mod files;
mod free;
mod jet;

pub use files::{matrix_from_text, matrix_to_text, LiftFile, SectionFile, TermRecord};
pub use free::{lift_connection, nabla_free, FreeConnection, NcMatrix};
pub use jet::{act, leibniz_check, leibniz_check_with, nabla_z, nabla_z_with, GaussJet, HeisenbergCharge, JetTerm};
