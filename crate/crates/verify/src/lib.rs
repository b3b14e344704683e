//! Oracles and the numbered acceptance suites for the nctorus crates.

pub mod criteria;
pub mod oracles;

pub use criteria::{run, run_all, Report, CRITERIA};
