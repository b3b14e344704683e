//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.
//!
//! Values are kept as a pair of `i64` fractions while they fit and promoted to
//! big rationals on overflow. Results are demoted again whenever they fit, so
//! each value has exactly one representation and structural equality is exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::bigint::Sign;
use num::rational::Ratio;
use num::traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};
use num::{BigInt, BigRational, Complex, One, Rational64, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Magnitude limit for the small representation; leaves headroom so that
/// negation and reduction inside `Ratio<i64>` never overflow.
const SMALL_LIMIT: i64 = 1 << 62;

#[derive(Clone, Debug)]
enum Repr {
    Small(Rational64, Rational64),
    Big(Box<(BigRational, BigRational)>),
}

/// An element of the field ℚ(i).
#[derive(Clone, Debug)]
pub struct GaussianRational(Repr);

fn small_ok(r: &Rational64) -> bool {
    let n = *r.numer();
    let d = *r.denom();
    n > -SMALL_LIMIT && n < SMALL_LIMIT && d < SMALL_LIMIT
}

fn to_big(r: &Rational64) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn demote(r: &BigRational) -> Option<Rational64> {
    let n = r.numer().to_i64()?;
    let d = r.denom().to_i64()?;
    let out = Rational64::new_raw(n, d);
    small_ok(&out).then_some(out)
}

impl GaussianRational {
    pub fn zero() -> Self {
        Self(Repr::Small(Rational64::zero(), Rational64::zero()))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self(Repr::Small(Rational64::zero(), Rational64::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_parts(Rational64::from_integer(n), Rational64::zero())
    }

    /// `num/den` as a real Gaussian rational; `den` must be nonzero.
    pub fn from_frac(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_parts(Rational64::new(num, den), Rational64::zero()))
    }

    pub fn from_parts(re: Rational64, im: Rational64) -> Self {
        if small_ok(&re) && small_ok(&im) {
            Self(Repr::Small(re, im))
        } else {
            Self::from_big(to_big(&re), to_big(&im))
        }
    }

    pub fn from_big(re: BigRational, im: BigRational) -> Self {
        match (demote(&re), demote(&im)) {
            (Some(a), Some(b)) => Self(Repr::Small(a, b)),
            _ => Self(Repr::Big(Box::new((re, im)))),
        }
    }

    pub fn re(&self) -> BigRational {
        match &self.0 {
            Repr::Small(a, _) => to_big(a),
            Repr::Big(b) => b.0.clone(),
        }
    }

    pub fn im(&self) -> BigRational {
        match &self.0 {
            Repr::Small(_, b) => to_big(b),
            Repr::Big(b) => b.1.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(a, b) => a.is_zero() && b.is_zero(),
            Repr::Big(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(a, b) => a.is_one() && b.is_zero(),
            Repr::Big(_) => false,
        }
    }

    pub fn is_real(&self) -> bool {
        match &self.0 {
            Repr::Small(_, b) => b.is_zero(),
            Repr::Big(b) => b.1.is_zero(),
        }
    }

    /// Returns the value as an integer when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        if !self.is_real() {
            return None;
        }
        let re = self.re();
        re.is_integer().then(|| re.to_integer())
    }

    pub fn conj(&self) -> Self {
        match &self.0 {
            Repr::Small(a, b) => Self(Repr::Small(*a, -*b)),
            Repr::Big(b) => Self::from_big(b.0.clone(), -b.1.clone()),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Repr::Small(a, b) = &self.0 {
            if b.is_zero() {
                return Ok(Self(Repr::Small(a.recip(), Rational64::zero())));
            }
            let norm = a
                .checked_mul(a)
                .and_then(|aa| b.checked_mul(b).and_then(|bb| aa.checked_add(&bb)));
            if let Some(norm) = norm.filter(small_ok) {
                if let (Some(re), Some(im)) = (a.checked_div(&norm), (-*b).checked_div(&norm)) {
                    if small_ok(&re) && small_ok(&im) {
                        return Ok(Self(Repr::Small(re, im)));
                    }
                }
            }
        }
        let (a, b) = (self.re(), self.im());
        let norm = &a * &a + &b * &b;
        Ok(Self::from_big(&a / &norm, -b / norm))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// `self` raised to an integer power; negative powers need a nonzero base.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc *= &base;
        }
        Ok(acc)
    }

    pub fn to_complex(&self) -> Complex<f64> {
        fn f(r: &BigRational) -> f64 {
            r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
        }
        match &self.0 {
            Repr::Small(a, b) => Complex::new(
                *a.numer() as f64 / *a.denom() as f64,
                *b.numer() as f64 / *b.denom() as f64,
            ),
            Repr::Big(b) => Complex::new(f(&b.0), f(&b.1)),
        }
    }

    /// Splits the real part into `floor(re)` and the remainder in `[0, 1)`.
    pub fn split_real_floor(&self) -> (BigInt, Self) {
        let re = self.re();
        let fl = re.floor();
        let rest = Self::from_big(re - &fl, self.im());
        (fl.to_integer(), rest)
    }

    fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if r.is_integer() {
            write!(f, "{}", r.numer())
        } else {
            write!(f, "{}/{}", r.numer(), r.denom())
        }
    }

    /// True when the printed form needs no parentheses inside a product.
    pub fn is_atomic(&self) -> bool {
        match &self.0 {
            Repr::Small(a, b) => a.is_zero() || b.is_zero(),
            Repr::Big(b) => b.0.is_zero() || b.1.is_zero(),
        }
    }
}

macro_rules! small_binop {
    ($lhs:expr, $rhs:expr, $checked:ident, $big:tt) => {{
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&$lhs.0, &$rhs.0) {
            if let (Some(re), Some(im)) = (a.$checked(c), b.$checked(d)) {
                if small_ok(&re) && small_ok(&im) {
                    return GaussianRational(Repr::Small(re, im));
                }
            }
        }
        GaussianRational::from_big($lhs.re() $big $rhs.re(), $lhs.im() $big $rhs.im())
    }};
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        small_binop!(self, rhs, checked_add, +)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        small_binop!(self, rhs, checked_sub, -)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            if b.is_zero() && d.is_zero() {
                if let Some(re) = a.checked_mul(c).filter(small_ok) {
                    return GaussianRational(Repr::Small(re, Rational64::zero()));
                }
            } else {
                let re = a
                    .checked_mul(c)
                    .and_then(|ac| b.checked_mul(d).and_then(|bd| ac.checked_sub(&bd)));
                let im = a
                    .checked_mul(d)
                    .and_then(|ad| b.checked_mul(c).and_then(|bc| ad.checked_add(&bc)));
                if let (Some(re), Some(im)) = (re, im) {
                    if small_ok(&re) && small_ok(&im) {
                        return GaussianRational(Repr::Small(re, im));
                    }
                }
            }
        }
        let (a, b, c, d) = (self.re(), self.im(), rhs.re(), rhs.im());
        GaussianRational::from_big(&a * &c - &b * &d, a * d + b * c)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        match &self.0 {
            Repr::Small(a, b) => GaussianRational(Repr::Small(-*a, -*b)),
            Repr::Big(b) => GaussianRational::from_big(-b.0.clone(), -b.1.clone()),
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

/// Panics on a zero divisor; use [`GaussianRational::checked_div`] when the
/// divisor is not known to be nonzero.
impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl PartialEq for GaussianRational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for GaussianRational {}

impl Hash for GaussianRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Canonical representation makes the big form a faithful key.
        self.re().hash(state);
        self.im().hash(state);
    }
}

/// Lexicographic order on (re, im); used only for canonical term ordering.
impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
            _ => self
                .re()
                .cmp(&other.re())
                .then_with(|| self.im().cmp(&other.im())),
        }
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for GaussianRational {
    fn from(n: BigInt) -> Self {
        Self::from_big(Ratio::from_integer(n), BigRational::zero())
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

/// Canonical text: `3/2`, `-1/2i`, `i`, `(3/2 - 1/2i)`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re(), self.im());
        let write_im = |f: &mut fmt::Formatter<'_>, im: &BigRational| -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else if (-im).is_one() {
                write!(f, "-i")
            } else {
                Self::fmt_rational(im, f)?;
                write!(f, "i")
            }
        };
        match (re.is_zero(), im.is_zero()) {
            (_, true) => Self::fmt_rational(&re, f),
            (true, false) => write_im(f, &im),
            (false, false) => {
                write!(f, "(")?;
                Self::fmt_rational(&re, f)?;
                if im.numer().sign() == Sign::Minus {
                    write!(f, " - ")?;
                    write_im(f, &im.abs())?;
                } else {
                    write!(f, " + ")?;
                    write_im(f, &im)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_frac(n, d).unwrap()
    }

    #[test]
    fn field_basics() {
        let a = GaussianRational::from_parts(Rational64::new(3, 2), Rational64::new(1, 2));
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), q(-1, 1));
        assert!(GaussianRational::zero().inv().is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = GaussianRational::from_int(1 << 61);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(3, 2).to_string(), "3/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        let z = GaussianRational::from_parts(Rational64::new(3, 2), Rational64::new(-1, 2));
        assert_eq!(z.to_string(), "(3/2 - 1/2i)");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
    }

    #[test]
    fn floor_split() {
        let (k, r) = q(-7, 2).split_real_floor();
        assert_eq!(k, BigInt::from(-4));
        assert_eq!(r, q(1, 2));
    }
}
