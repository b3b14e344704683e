//! Reference computations that share no algorithm with the core crate.

pub mod bar;
pub mod dense;
pub mod decimal;
pub mod words;
