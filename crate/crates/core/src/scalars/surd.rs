//! Quadratic surds `(p + q·√D) / r` with exact comparison against rationals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct QuadraticSurd {
    p: i64,
    q: i64,
    d: i64,
    r: i64,
}

fn is_squarefree(d: i64) -> bool {
    let mut k = 2i64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Sign of `a + b·√d` for `d > 0`, using integer arithmetic only.
pub fn sign_of_surd(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.cmp(&BigInt::zero());
    let sb = b.cmp(&BigInt::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // Opposite signs: the term with larger square wins.
    match (a * a).cmp(&(b * b * d)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

impl QuadraticSurd {
    pub fn new(p: i64, q: i64, d: i64, r: i64) -> Result<Self> {
        if d <= 0 || !is_squarefree(d) {
            return Err(Error::Format(format!("radicand {d} is not a positive squarefree integer")));
        }
        if r <= 0 {
            return Err(Error::Format(format!("denominator {r} must be positive")));
        }
        Ok(QuadraticSurd { p, q, d, r })
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn is_irrational(&self) -> bool {
        self.q != 0 && self.d != 1
    }

    /// Sign of `a + b·self` for integers `a`, `b`.
    pub fn sign_of_affine(&self, a: i64, b: i64) -> Ordering {
        // (a r + b p + b q √D) / r with r > 0
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let lhs = &a * self.r + &b * self.p;
        let rhs = b * self.q;
        sign_of_surd(&lhs, &rhs, &BigInt::from(self.d))
    }

    /// Exact comparison of `self` with the rational `y`.
    pub fn compare(&self, y: &BigRational) -> Ordering {
        // (p + q√D)/r - a/b = (b p - a r + b q √D) / (r b), with r, b > 0
        let (a, b) = (y.numer(), y.denom());
        let lhs = b * self.p - a * self.r;
        let rhs = b * self.q;
        sign_of_surd(&lhs, &rhs, &BigInt::from(self.d))
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + self.q as f64 * (self.d as f64).sqrt()) / self.r as f64
    }
}

/// Exact ordering of a surd against a rational.
pub fn surd_compare(x: &QuadraticSurd, y: &BigRational) -> Ordering {
    x.compare(y)
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q < 0 { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/{}", self.p, sign, self.q.abs(), self.d, self.r)
    }
}

impl FromStr for QuadraticSurd {
    type Err = Error;

    /// Accepts `(p + q*sqrt(D))/r`; the `q*` and `/r` parts are optional and
    /// whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::Format(format!("surd `{s}`: {msg}"));
        let (body, r) = match t.rfind(")/") {
            Some(k) if t.starts_with('(') => {
                let r: i64 = t[k + 2..].parse().map_err(|_| bad("bad denominator"))?;
                (t[1..k].to_string(), r)
            }
            _ if t.starts_with('(') && t.ends_with("))") => (t[1..t.len() - 1].to_string(), 1),
            _ => (t.clone(), 1),
        };
        let sq = body.find("sqrt(").ok_or_else(|| bad("missing sqrt(D)"))?;
        let close = body[sq..].find(')').ok_or_else(|| bad("unclosed sqrt("))? + sq;
        let d: i64 = body[sq + 5..close].parse().map_err(|_| bad("bad radicand"))?;
        if close + 1 != body.len() {
            return Err(bad("trailing input after sqrt(D)"));
        }
        let head = body[..sq].strip_suffix('*').unwrap_or(&body[..sq]);
        // head is `p+q`, `p-q`, `p+`, `p-`, `q`, `-` or empty
        let split = head
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (p_str, q_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None if head.is_empty() || head == "-" || head == "+" => ("0", head),
            None => ("0", head),
        };
        let p: i64 = p_str.parse().map_err(|_| bad("bad rational part"))?;
        let q: i64 = match q_str {
            "" | "+" => 1,
            "-" => -1,
            other => other.trim_start_matches('+').parse().map_err(|_| bad("bad coefficient"))?,
        };
        QuadraticSurd::new(p, q, d, r)
    }
}

impl TryFrom<String> for QuadraticSurd {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<QuadraticSurd> for String {
    fn from(s: QuadraticSurd) -> String {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn documented_comparisons() {
        let s2 = QuadraticSurd::new(0, 1, 2, 1).unwrap();
        assert_eq!(s2.compare(&rat(3, 2)), Ordering::Less);
        let one = QuadraticSurd::new(1, 0, 2, 1).unwrap();
        assert_eq!(one.compare(&rat(1, 1)), Ordering::Equal);
        let g = QuadraticSurd::new(-1, 1, 5, 2).unwrap();
        assert_eq!(g.compare(&rat(1, 2)), Ordering::Greater);
    }

    #[test]
    fn parse_and_print() {
        let t: QuadraticSurd = "(-1+1*sqrt(2))/1".parse().unwrap();
        assert_eq!(t, QuadraticSurd::new(-1, 1, 2, 1).unwrap());
        assert_eq!(t.to_string(), "(-1+1*sqrt(2))/1");
        let g: QuadraticSurd = "(-1 + sqrt(5))/2".parse().unwrap();
        assert_eq!(g, QuadraticSurd::new(-1, 1, 5, 2).unwrap());
        let h: QuadraticSurd = "(3-2*sqrt(7))/5".parse().unwrap();
        assert_eq!(h, QuadraticSurd::new(3, -2, 7, 5).unwrap());
        assert_eq!(h.to_string().parse::<QuadraticSurd>().unwrap(), h);
        assert!("(1+sqrt(4))/1".parse::<QuadraticSurd>().is_err());
        assert!("(1+sqrt(2))/0".parse::<QuadraticSurd>().is_err());
    }

    #[test]
    fn affine_sign() {
        let t: QuadraticSurd = "(-1+1*sqrt(2))/1".parse().unwrap();
        // 1 - θ > 0, θ > 0, -1 + 2θ < 0
        assert_eq!(t.sign_of_affine(1, -1), Ordering::Greater);
        assert_eq!(t.sign_of_affine(0, 1), Ordering::Greater);
        assert_eq!(t.sign_of_affine(-1, 2), Ordering::Less);
    }
}
