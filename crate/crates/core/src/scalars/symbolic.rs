//! Rational functions over ℚ(i) in the formal units λ^{±1}, θ, τ, z, c.
//!
//! λ stands for e^{2πiθ} and c for 2πi, but both are kept as indeterminates
//! independent of θ; numeric evaluation re-couples them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Complex;

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

/// A formal unit. λ is the only one allowed negative exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    Lambda,
    Theta,
    Tau,
    Z,
    C,
}

impl Unit {
    pub const ALL: [Unit; 5] = [Unit::Lambda, Unit::Theta, Unit::Tau, Unit::Z, Unit::C];

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Lambda => "L",
            Unit::Theta => "th",
            Unit::Tau => "tau",
            Unit::Z => "z",
            Unit::C => "c",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Unit> {
        match s {
            "L" | "lambda" => Some(Unit::Lambda),
            "th" | "theta" => Some(Unit::Theta),
            "tau" => Some(Unit::Tau),
            "z" => Some(Unit::Z),
            "c" => Some(Unit::C),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Exponent vector indexed by [`Unit`]; lexicographic order puts λ first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [i32; 5]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 5]);

    pub fn unit(u: Unit) -> Self {
        let mut e = [0; 5];
        e[u.index()] = 1;
        Monomial(e)
    }

    pub fn exp(&self, u: Unit) -> i32 {
        self.0[u.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 5]
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / o` when the quotient has no negative non-λ exponent.
    fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (k, (a, b)) in e.iter_mut().zip(o.0).enumerate() {
            *a -= b;
            if k != Unit::Lambda.index() && *a < 0 {
                return None;
            }
        }
        Some(Monomial(e))
    }
}

/// Sparse Laurent-in-λ polynomial with Gaussian rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    /// The constant value if the polynomial has no unit dependence.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect(),
        }
    }

    fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    fn lambda_range(&self) -> (i32, i32) {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for m in self.terms.keys() {
            lo = lo.min(m.exp(Unit::Lambda));
            hi = hi.max(m.exp(Unit::Lambda));
        }
        (lo, hi)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dlo, _) = d.lambda_range();
        let (nlo, _) = self.lambda_range();
        // Quotient λ-exponents are bounded below by nlo - dlo.
        let floor = nlo - dlo;
        let inv_dc = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            if qm.exp(Unit::Lambda) < floor {
                return None;
            }
            let qc = rc * &inv_dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), &-(c * &qc));
            }
            quot.add_term(qm, &qc);
        }
        Some(quot)
    }

    pub fn units(&self) -> BTreeSet<Unit> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for u in Unit::ALL {
                if m.exp(u) != 0 {
                    out.insert(u);
                }
            }
        }
        out
    }

    pub fn evaluate(&self, values: &HashMap<Unit, Complex<f64>>) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for u in Unit::ALL {
                let e = m.exp(u);
                if e != 0 {
                    t *= values[&u].powi(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficient of a given monomial.
    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn fmt_monomial(m: &Monomial) -> String {
        let mut parts = Vec::new();
        for u in Unit::ALL {
            match m.exp(u) {
                0 => {}
                1 => parts.push(u.symbol().to_string()),
                e => parts.push(format!("{}^{}", u.symbol(), e)),
            }
        }
        parts.join(" * ")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let term = if m.is_one() {
                c.to_string()
            } else if c.is_one() {
                Self::fmt_monomial(m)
            } else if (-c).is_one() {
                format!("-{}", Self::fmt_monomial(m))
            } else {
                format!("{} * {}", c, Self::fmt_monomial(m))
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

/// Numeric values for the formal units.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    values: HashMap<Unit, Complex<f64>>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, u: Unit, v: Complex<f64>) -> Self {
        self.values.insert(u, v);
        self
    }

    /// θ, τ, z with λ = e^{2πiθ} and c = 2πi filled in consistently.
    pub fn coupled(theta: f64, tau: Complex<f64>, z: Complex<f64>) -> Self {
        let two_pi_i = Complex::new(0.0, 2.0 * std::f64::consts::PI);
        Self::new()
            .set(Unit::Theta, Complex::new(theta, 0.0))
            .set(Unit::Lambda, (two_pi_i * theta).exp())
            .set(Unit::C, two_pi_i)
            .set(Unit::Tau, tau)
            .set(Unit::Z, z)
    }

    pub fn get(&self, u: Unit) -> Option<Complex<f64>> {
        self.values.get(&u).copied()
    }

    fn check(&self, units: &BTreeSet<Unit>) -> Result<()> {
        let missing: Vec<String> = units
            .iter()
            .filter(|u| !self.values.contains_key(u))
            .map(|u| u.symbol().to_string())
            .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::UnboundUnits(missing))
        }
    }
}

/// Quotient `num / den` of polynomials. Equality is decided by
/// cross-multiplication, so distinct representations of the same function
/// compare equal.
#[derive(Clone, Debug)]
pub struct SymbolicScalar {
    num: Poly,
    den: Poly,
}

impl SymbolicScalar {
    pub fn zero() -> Self {
        SymbolicScalar {
            num: Poly::zero(),
            den: Poly::constant(GaussianRational::one()),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn unit(u: Unit) -> Self {
        Self::from_poly(Poly::term(Monomial::unit(u), GaussianRational::one()))
    }

    /// λ^k for any integer k.
    pub fn lambda_pow(k: i32) -> Self {
        let mut e = [0; 5];
        e[Unit::Lambda.index()] = k;
        Self::from_poly(Poly::term(Monomial(e), GaussianRational::one()))
    }

    pub fn from_poly(p: Poly) -> Self {
        SymbolicScalar {
            num: p,
            den: Poly::constant(GaussianRational::one()),
        }
    }

    /// Builds `num / den`; errors when `den` is the zero polynomial.
    pub fn ratio(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(&n / &d)
    }

    /// Cheap canonicalization: strip common monomial content, move constant
    /// denominators into the numerator, make the denominator's leading
    /// coefficient 1 and cancel when the denominator divides exactly.
    fn normalized(mut num: Poly, mut den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut shift = [0i32; 5];
        for u in Unit::ALL {
            let k = u.index();
            let dmin = den.terms.keys().map(|m| m.0[k]).min().unwrap_or(0);
            shift[k] = if u == Unit::Lambda {
                dmin
            } else {
                dmin.min(num.terms.keys().map(|m| m.0[k]).min().unwrap_or(0))
            };
        }
        if shift != [0; 5] {
            let inv = Monomial(shift.map(|e| -e));
            num = num.mul_monomial(&inv);
            den = den.mul_monomial(&inv);
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero denominator");
            return SymbolicScalar {
                num: num.scale(&inv),
                den: Poly::constant(GaussianRational::one()),
            };
        }
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if let Some(q) = num.exact_div(&den) {
            return Self::from_poly(q);
        }
        SymbolicScalar { num, den }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn units(&self) -> BTreeSet<Unit> {
        let mut u = self.num.units();
        u.extend(self.den.units());
        u
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<Complex<f64>> {
        let units = if self.is_zero() { BTreeSet::new() } else { self.units() };
        a.check(&units)?;
        Ok(self.num.evaluate(&a.values) / self.den.evaluate(&a.values))
    }

    /// Single product term, printable inside a product without parentheses.
    pub fn is_atomic(&self) -> bool {
        self.is_polynomial() && self.num.len() <= 1
    }
}

impl PartialEq for SymbolicScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Eq for SymbolicScalar {}

impl Add for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn add(self, rhs: &SymbolicScalar) -> SymbolicScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return SymbolicScalar::normalized(&self.num + &rhs.num, self.den.clone());
        }
        SymbolicScalar::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn sub(self, rhs: &SymbolicScalar) -> SymbolicScalar {
        self + &(-rhs)
    }
}

impl Neg for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn neg(self) -> SymbolicScalar {
        SymbolicScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn mul(self, rhs: &SymbolicScalar) -> SymbolicScalar {
        if self.is_zero() || rhs.is_zero() {
            return SymbolicScalar::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return SymbolicScalar::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying out.
        let (mut an, mut ad) = (self.num.clone(), self.den.clone());
        let (mut bn, mut bd) = (rhs.num.clone(), rhs.den.clone());
        if let Some(q) = an.exact_div(&bd) {
            an = q;
            bd = Poly::constant(GaussianRational::one());
        }
        if let Some(q) = bn.exact_div(&ad) {
            bn = q;
            ad = Poly::constant(GaussianRational::one());
        }
        SymbolicScalar::normalized(&an * &bn, &ad * &bd)
    }
}

macro_rules! owned_scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<SymbolicScalar> for SymbolicScalar {
            type Output = SymbolicScalar;
            fn $m(self, rhs: SymbolicScalar) -> SymbolicScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_scalar_ops!(Add add, Sub sub, Mul mul);

impl Neg for SymbolicScalar {
    type Output = SymbolicScalar;
    fn neg(self) -> SymbolicScalar {
        -&self
    }
}

impl From<GaussianRational> for SymbolicScalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for SymbolicScalar {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl fmt::Display for SymbolicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th() -> SymbolicScalar {
        SymbolicScalar::unit(Unit::Theta)
    }

    #[test]
    fn lambda_unit_relation() {
        let l = SymbolicScalar::unit(Unit::Lambda);
        let li = SymbolicScalar::lambda_pow(-1);
        assert!((&l * &li).is_one());
        assert!(l.inv().unwrap() == li);
        assert!(l.inv().unwrap().is_polynomial());
    }

    #[test]
    fn additive_group_law() {
        let tau = SymbolicScalar::unit(Unit::Tau);
        let s = &(&th() + &tau) + &(-th());
        assert_eq!(s, tau);
    }

    #[test]
    fn inverse_of_affine_theta() {
        let x = &SymbolicScalar::int(1) + &th();
        let inv = x.inv().unwrap();
        assert_eq!(inv.to_string(), "(1)/(1 + th)");
        assert!((&inv * &x).is_one());
        assert_eq!(SymbolicScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn exact_cancellation() {
        // m/(n + θm) · (n + θm)/m = 1 for (n, m) = (2, 3)
        let d = &SymbolicScalar::int(2) + &(&SymbolicScalar::int(3) * &th());
        let mu = SymbolicScalar::int(3).checked_div(&d).unwrap();
        let s = d.checked_div(&SymbolicScalar::int(3)).unwrap();
        let p = &mu * &s;
        assert!(p.is_one());
        assert!(p.is_polynomial());
    }

    #[test]
    fn evaluate_coupled_lambda() {
        let a = Assignment::coupled(0.25, Complex::new(0.0, 1.0), Complex::new(0.0, 0.0));
        let v = SymbolicScalar::unit(Unit::Lambda).evaluate(&a).unwrap();
        assert!((v - Complex::new(0.0, 1.0)).norm() < 1e-12);
        let ct = &SymbolicScalar::unit(Unit::C) * &SymbolicScalar::unit(Unit::Tau);
        let v = ct.evaluate(&a).unwrap();
        assert!((v - Complex::new(-2.0 * std::f64::consts::PI, 0.0)).norm() < 1e-12);
        assert_eq!(SymbolicScalar::one().evaluate(&Assignment::new()).unwrap(), Complex::new(1.0, 0.0));
    }

    #[test]
    fn evaluate_reports_unbound() {
        let s = &SymbolicScalar::unit(Unit::Tau) * &SymbolicScalar::unit(Unit::Z);
        let a = Assignment::new().set(Unit::Tau, Complex::new(1.0, 0.0));
        assert_eq!(s.evaluate(&a), Err(Error::UnboundUnits(vec!["z".into()])));
    }

    #[test]
    fn exact_div_rejects_non_divisors() {
        let a = (&SymbolicScalar::int(1) + &th()).numer().clone();
        let b = (&SymbolicScalar::int(2) + &th()).numer().clone();
        assert!(a.exact_div(&b).is_none());
        let l = SymbolicScalar::lambda_pow(3);
        let lp = (&l + &SymbolicScalar::int(1)).numer().clone();
        let lq = (&SymbolicScalar::lambda_pow(1) + &SymbolicScalar::int(2)).numer().clone();
        assert!(lp.exact_div(&lq).is_none());
    }
}
