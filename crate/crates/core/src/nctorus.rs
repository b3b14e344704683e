//! The algebra A_θ on finitely supported coefficient maps, its complex-structure
//! derivation δ_τ and the canonical trace.
//!
//! Twist convention. From U₁U₂ = λU₂U₁ we get U₂U₁ = λ⁻¹U₁U₂, and moving
//! U₁^c leftwards past U₂^b takes bc adjacent swaps, each contributing λ⁻¹
//! (the same count holds for negative exponents, since U₂⁻¹U₁ = λU₁U₂⁻¹ and
//! so on). Hence
//!
//! ```text
//! U₁^a U₂^b · U₁^c U₂^d = λ^{-bc} U₁^{a+c} U₂^{b+d}.
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{SymbolicScalar, Unit};

/// Σ a_{m,n} U₁^m U₂^n with finitely many nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCElement {
    coeffs: BTreeMap<(i64, i64), SymbolicScalar>,
}

impl NCElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(SymbolicScalar::one())
    }

    pub fn scalar(s: SymbolicScalar) -> Self {
        Self::monomial(0, 0, s)
    }

    /// `s · U₁^m U₂^n`.
    pub fn monomial(m: i64, n: i64, s: SymbolicScalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !s.is_zero() {
            coeffs.insert((m, n), s);
        }
        NCElement { coeffs }
    }

    pub fn u1() -> Self {
        Self::monomial(1, 0, SymbolicScalar::one())
    }

    pub fn u2() -> Self {
        Self::monomial(0, 1, SymbolicScalar::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), SymbolicScalar)>) -> Self {
        let mut out = NCElement::zero();
        for (k, s) in terms {
            out.add_term(k, &s);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &SymbolicScalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: i64, n: i64) -> SymbolicScalar {
        self.coeffs.get(&(m, n)).cloned().unwrap_or_else(SymbolicScalar::zero)
    }

    /// The scalar value when the element is supported at the origin only.
    pub fn as_scalar(&self) -> Option<SymbolicScalar> {
        match self.coeffs.len() {
            0 => Some(SymbolicScalar::zero()),
            1 => self.coeffs.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, key: (i64, i64), s: &SymbolicScalar) {
        if s.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&key) {
            Some(v) => v + s,
            None => s.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, sum);
        }
    }

    pub fn scale(&self, s: &SymbolicScalar) -> NCElement {
        if s.is_zero() {
            return NCElement::zero();
        }
        NCElement::from_terms(self.coeffs.iter().map(|(k, v)| (*k, v * s)))
    }

    /// Multiplicative inverse of a single-term element `s·U₁^mU₂^n`.
    pub fn monomial_inverse(&self) -> Result<NCElement> {
        let mut it = self.coeffs.iter();
        match (it.next(), it.next()) {
            (Some((&(m, n), s)), None) => {
                // (U₁^mU₂^n)⁻¹ = λ^{-mn} U₁^{-m}U₂^{-n}, since
                // U₁^mU₂^n · U₁^{-m}U₂^{-n} = λ^{mn}.
                let twist = SymbolicScalar::lambda_pow(twist_exponent(m, n));
                Ok(NCElement::monomial(-m, -n, &s.inv()? * &twist))
            }
            (None, _) => Err(Error::DivisionByZero),
            _ => Err(Error::Precondition("only single-term elements are invertible here".into())),
        }
    }

    pub fn pow(&self, e: i32) -> Result<NCElement> {
        let base = if e < 0 { self.monomial_inverse()? } else { self.clone() };
        let mut acc = NCElement::one();
        for _ in 0..e.unsigned_abs() {
            acc = nc_mul(&acc, &base);
        }
        Ok(acc)
    }
}

/// λ-exponent needed to invert U₁^mU₂^n: -(m·n) with the λ^{-bc} rule.
fn twist_exponent(m: i64, n: i64) -> i32 {
    i32::try_from(-(m * n)).expect("exponent fits in i32")
}

/// Product in A_θ, bilinear in the monomial rule
/// U₁^aU₂^b · U₁^cU₂^d = λ^{-bc} U₁^{a+c}U₂^{b+d}.
pub fn nc_mul(a: &NCElement, b: &NCElement) -> NCElement {
    let mut out = NCElement::zero();
    for (&(ma, na), ca) in &a.coeffs {
        for (&(mb, nb), cb) in &b.coeffs {
            let twist = i32::try_from(-(na * mb)).expect("exponent fits in i32");
            let c = &(ca * cb) * &SymbolicScalar::lambda_pow(twist);
            out.add_term((ma + mb, na + nb), &c);
        }
    }
    out
}

/// δ_τ(U₁^mU₂^n) = c·(mτ + n)·U₁^mU₂^n, extended linearly; `tau` is usually
/// the formal unit τ.
pub fn delta_tau_with(a: &NCElement, tau: &SymbolicScalar) -> NCElement {
    let c = SymbolicScalar::unit(Unit::C);
    NCElement::from_terms(a.coeffs.iter().map(|(&(m, n), s)| {
        let weight = &(&SymbolicScalar::int(m) * tau) + &SymbolicScalar::int(n);
        ((m, n), &(s * &c) * &weight)
    }))
}

pub fn delta_tau(a: &NCElement) -> NCElement {
    delta_tau_with(a, &SymbolicScalar::unit(Unit::Tau))
}

/// Canonical trace: the coefficient of U₁⁰U₂⁰.
pub fn nc_trace(a: &NCElement) -> SymbolicScalar {
    a.coeff(0, 0)
}

/// δ_τ(ab) − δ_τ(a)b − aδ_τ(b); zero for a derivation.
pub fn derivation_check(a: &NCElement, b: &NCElement) -> NCElement {
    let lhs = delta_tau(&nc_mul(a, b));
    let r1 = nc_mul(&delta_tau(a), b);
    let r2 = nc_mul(a, &delta_tau(b));
    &(&lhs - &r1) - &r2
}

impl Add for &NCElement {
    type Output = NCElement;
    fn add(self, rhs: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            out.add_term(*k, v);
        }
        out
    }
}

impl Sub for &NCElement {
    type Output = NCElement;
    fn sub(self, rhs: &NCElement) -> NCElement {
        self + &(-rhs)
    }
}

impl Neg for &NCElement {
    type Output = NCElement;
    fn neg(self) -> NCElement {
        NCElement {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Mul for &NCElement {
    type Output = NCElement;
    fn mul(self, rhs: &NCElement) -> NCElement {
        nc_mul(self, rhs)
    }
}

fn fmt_generator(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    }
}

/// Text form: `L^-1 * U1*U2 + (th + 1) * U2^-1 + 3/2`.
impl fmt::Display for NCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(m, n), s)) in self.coeffs.iter().enumerate() {
            let mono: Vec<String> = [fmt_generator("U1", m), fmt_generator("U2", n)]
                .into_iter()
                .flatten()
                .collect();
            let mono = mono.join("*");
            let coeff = if s.is_atomic() { s.to_string() } else { format!("({s})") };
            let term = if mono.is_empty() {
                coeff
            } else if s.is_one() {
                mono
            } else if (-s).is_one() {
                format!("-{mono}")
            } else {
                format!("{coeff} * {mono}")
            };
            if i == 0 {
                write!(f, "{term}")?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(m: i64, n: i64) -> NCElement {
        NCElement::monomial(m, n, SymbolicScalar::one())
    }

    #[test]
    fn commutation_relation() {
        let p = nc_mul(&NCElement::u2(), &NCElement::u1());
        assert_eq!(p, NCElement::monomial(1, 1, SymbolicScalar::lambda_pow(-1)));
        assert_eq!(p.to_string(), "L^-1 * U1*U2");
        let q = nc_mul(&NCElement::u1(), &NCElement::u2());
        assert_eq!(q, mono(1, 1));
    }

    #[test]
    fn twisted_monomial_product() {
        let p = nc_mul(&mono(2, 1), &mono(1, 3));
        assert_eq!(p, NCElement::monomial(3, 4, SymbolicScalar::lambda_pow(-1)));
    }

    #[test]
    fn delta_on_generators() {
        let c = SymbolicScalar::unit(Unit::C);
        let tau = SymbolicScalar::unit(Unit::Tau);
        assert_eq!(delta_tau(&NCElement::u1()), NCElement::monomial(1, 0, &c * &tau));
        assert_eq!(delta_tau(&NCElement::u2()), NCElement::monomial(0, 1, c.clone()));
        assert!(delta_tau(&NCElement::one()).is_zero());
        let expect = &c * &(&tau + &SymbolicScalar::one());
        assert_eq!(delta_tau(&mono(1, 1)), NCElement::monomial(1, 1, expect));
    }

    #[test]
    fn trace_of_inverse_pair() {
        let a = mono(1, 1);
        let b = nc_mul(&mono(0, -1), &mono(-1, 0));
        assert!(nc_trace(&nc_mul(&a, &b)).is_one());
        assert_eq!(nc_trace(&nc_mul(&a, &b)), nc_trace(&nc_mul(&b, &a)));
        assert!(nc_trace(&NCElement::u1()).is_zero());
        assert!(nc_trace(&NCElement::one()).is_one());
    }

    #[test]
    fn monomial_inverse_roundtrip() {
        let x = NCElement::monomial(2, -3, SymbolicScalar::unit(Unit::Theta));
        let inv = x.monomial_inverse().unwrap();
        assert_eq!(nc_mul(&x, &inv), NCElement::one());
        assert_eq!(nc_mul(&inv, &x), NCElement::one());
    }

    #[test]
    fn leibniz_on_generators() {
        assert!(derivation_check(&NCElement::u1(), &NCElement::u2()).is_zero());
        assert!(derivation_check(&NCElement::one(), &mono(3, -2)).is_zero());
    }
}
