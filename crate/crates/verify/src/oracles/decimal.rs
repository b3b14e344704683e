//! Surd comparison through 50-digit fixed-point expansions.

use std::cmp::Ordering;

use nctorus_core::scalars::QuadraticSurd;
use num::{BigInt, Integer};

const DIGITS: u32 = 50;

fn scale() -> BigInt {
    BigInt::from(10).pow(DIGITS)
}

/// ⌊x·10⁵⁰⌋.
pub fn floor_scaled(x: &QuadraticSurd) -> BigInt {
    let s = scale();
    let root = (BigInt::from(x.q()).pow(2) * x.d() * &s * &s).sqrt();
    let irrational = if x.q() >= 0 {
        root
    } else if &root * &root == BigInt::from(x.q()).pow(2) * x.d() * &s * &s {
        -root
    } else {
        -root - 1
    };
    (BigInt::from(x.p()) * &s + irrational).div_floor(&BigInt::from(x.r()))
}

/// Ordering of x against a/b (b > 0), or `None` when the expansions are
/// too close to decide.
pub fn compare(x: &QuadraticSurd, a: i64, b: i64) -> Option<Ordering> {
    assert!(b > 0);
    let xs = floor_scaled(x);
    let ys = (BigInt::from(a) * scale()).div_floor(&BigInt::from(b));
    let gap = &xs - &ys;
    if gap > BigInt::from(1) {
        Some(Ordering::Greater)
    } else if gap < BigInt::from(-1) {
        Some(Ordering::Less)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_digits() {
        let phi: QuadraticSurd = "(1+1*sqrt(5))/2".parse().unwrap();
        let digits = floor_scaled(&phi).to_string();
        assert_eq!(&digits[..20], "16180339887498948482");
        let neg: QuadraticSurd = "(0-1*sqrt(2))/1".parse().unwrap();
        assert!(floor_scaled(&neg).to_string().starts_with("-14142135623730950488"));
        assert_eq!(compare(&phi, 8, 5), Some(Ordering::Greater));
        assert_eq!(compare(&phi, 13, 8), Some(Ordering::Less));
    }
}
