//! Sections of the Heisenberg module E_{n,m} in the class of finite sums
//! `p(x)·exp(q₂x² + q₁x + q₀)` on each residue class α ∈ ℤ/|m|.
//!
//! Right action of A_θ, with s = −(n + θm)/m:
//!
//! ```text
//! (f·U₁)(x, α) = f(x + s, α − 1)
//! (f·U₂)(x, α) = exp(c(x − αn/m)) · f(x, α)      α taken in 0..|m|
//! ```
//!
//! Constant exponents are reduced with exp(c) = 1 and exp(cθ) = λ, which is
//! what makes the module law f·(ab) = (f·a)·b hold formally.

use std::fmt;

use num::{Complex, ToPrimitive};

use crate::error::{Error, Result};
use crate::nctorus::{delta_tau_with, NCElement};
use crate::scalars::{Assignment, GaussianRational, Monomial, Poly, SymbolicScalar, Unit};

/// Topological charge (n, m) of a Heisenberg module with m ≠ 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeisenbergCharge {
    n: i64,
    m: i64,
}

impl HeisenbergCharge {
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition(
                "m = 0 is the free module A_θ^|n|; use a free connection".into(),
            ));
        }
        Ok(HeisenbergCharge { n, m })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn residues(&self) -> usize {
        self.m.unsigned_abs() as usize
    }

    /// n + θm
    pub fn dim(&self) -> SymbolicScalar {
        &SymbolicScalar::int(self.n) + &(&SymbolicScalar::int(self.m) * &SymbolicScalar::unit(Unit::Theta))
    }

    /// μ = m / (n + θm)
    pub fn mu(&self) -> SymbolicScalar {
        SymbolicScalar::int(self.m)
            .checked_div(&self.dim())
            .expect("n + θm is a nonzero polynomial")
    }

    /// Translation step s = −(n + θm)/m of the U₁ action.
    pub fn step(&self) -> SymbolicScalar {
        -(self.dim().checked_div(&SymbolicScalar::int(self.m)).expect("m ≠ 0"))
    }

    /// Constant part −αn/m of the U₂ phase on class α.
    fn phase_offset(&self, alpha: usize) -> SymbolicScalar {
        let num = GaussianRational::from_int(-(alpha as i64) * self.n);
        let den = GaussianRational::from_int(self.m);
        SymbolicScalar::constant(&num / &den)
    }
}

/// One summand `p(x)·exp(q₂x² + q₁x + q₀)`; `poly[k]` is the coefficient of x^k.
#[derive(Clone, Debug)]
pub struct JetTerm {
    pub poly: Vec<SymbolicScalar>,
    pub q2: SymbolicScalar,
    pub q1: SymbolicScalar,
    pub q0: SymbolicScalar,
}

impl JetTerm {
    pub fn new(poly: Vec<SymbolicScalar>, q2: SymbolicScalar, q1: SymbolicScalar, q0: SymbolicScalar) -> Self {
        JetTerm { poly, q2, q1, q0 }
    }

    fn same_exponent(&self, o: &JetTerm) -> bool {
        self.q2 == o.q2 && self.q1 == o.q1 && self.q0 == o.q0
    }

    fn trim(&mut self) {
        while self.poly.last().is_some_and(|c| c.is_zero()) {
            self.poly.pop();
        }
    }

    fn scale(&self, s: &SymbolicScalar) -> JetTerm {
        JetTerm {
            poly: self.poly.iter().map(|c| c * s).collect(),
            ..self.clone()
        }
    }

    /// p(x + t)·exp(q(x + t)) rewritten in the same form.
    fn translate(&self, t: &SymbolicScalar) -> JetTerm {
        let deg = self.poly.len();
        let mut powers = vec![SymbolicScalar::one()];
        for k in 1..deg.max(1) {
            powers.push(&powers[k - 1] * t);
        }
        let mut poly = vec![SymbolicScalar::zero(); deg];
        for (j, pj) in self.poly.iter().enumerate() {
            let mut binom = 1i64;
            for k in 0..=j {
                // C(j, k) p_j t^{j-k}
                let c = &(pj * &powers[j - k]) * &SymbolicScalar::int(binom);
                poly[k] = &poly[k] + &c;
                binom = binom * (j - k) as i64 / (k + 1) as i64;
            }
        }
        let two = SymbolicScalar::int(2);
        let q1 = &(&(&two * &self.q2) * t) + &self.q1;
        let q0 = &(&(&(&self.q2 * t) * t) + &(&self.q1 * t)) + &self.q0;
        JetTerm { poly, q2: self.q2.clone(), q1, q0 }
    }

    /// Multiplies the polynomial part by `a1·x + a0`.
    fn mul_affine(&self, a1: &SymbolicScalar, a0: &SymbolicScalar) -> Vec<SymbolicScalar> {
        let mut out = vec![SymbolicScalar::zero(); self.poly.len() + 1];
        for (k, c) in self.poly.iter().enumerate() {
            out[k] = &out[k] + &(c * a0);
            out[k + 1] = &out[k + 1] + &(c * a1);
        }
        out
    }

    fn derivative_poly(&self) -> Vec<SymbolicScalar> {
        self.poly
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &SymbolicScalar::int(k as i64))
            .collect()
    }

    fn eval(&self, x: f64, a: &Assignment) -> Result<Complex<f64>> {
        let xc = Complex::new(x, 0.0);
        let mut p = Complex::new(0.0, 0.0);
        for c in self.poly.iter().rev() {
            p = p * xc + c.evaluate(a)?;
        }
        let e = self.q2.evaluate(a)? * xc * xc + self.q1.evaluate(a)? * xc + self.q0.evaluate(a)?;
        Ok(p * e.exp())
    }
}

fn add_polys(a: &[SymbolicScalar], b: &[SymbolicScalar]) -> Vec<SymbolicScalar> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

/// Splits off exp(k·c) = 1 and exp(k·cθ) = λ^k for the integer parts k of
/// the `c` and `cθ` coefficients of a polynomial constant exponent.
fn fold_phase(q0: &SymbolicScalar) -> (i32, SymbolicScalar) {
    if !q0.is_polynomial() {
        return (0, q0.clone());
    }
    let c = Monomial::unit(Unit::C);
    let mut c_theta = Monomial::unit(Unit::C);
    c_theta.0[Unit::Theta as usize] = 1;
    let mut lambda = 0i32;
    let mut rest = Poly::zero();
    for (m, coeff) in q0.numer().terms() {
        let kept = if *m == c || *m == c_theta {
            let (k, frac) = coeff.split_real_floor();
            if *m == c_theta {
                lambda += k.to_i32().expect("phase exponent fits in i32");
            }
            frac
        } else {
            coeff.clone()
        };
        rest = &rest + &Poly::term(*m, kept);
    }
    (lambda, SymbolicScalar::from_poly(rest))
}

/// A section of E_{n,m}: one term list per residue class.
#[derive(Clone, Debug)]
pub struct GaussJet {
    classes: Vec<Vec<JetTerm>>,
}

impl GaussJet {
    pub fn zero(residues: usize) -> Self {
        GaussJet { classes: vec![Vec::new(); residues] }
    }

    /// The section equal to 1 on class α and 0 elsewhere.
    pub fn indicator(residues: usize, alpha: usize) -> Self {
        let mut f = Self::zero(residues);
        f.classes[alpha].push(JetTerm::new(
            vec![SymbolicScalar::one()],
            SymbolicScalar::zero(),
            SymbolicScalar::zero(),
            SymbolicScalar::zero(),
        ));
        f
    }

    pub fn from_classes(classes: Vec<Vec<JetTerm>>) -> Self {
        let mut f = GaussJet { classes };
        f.normalize();
        f
    }

    pub fn residues(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, alpha: usize) -> &[JetTerm] {
        &self.classes[alpha]
    }

    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(|c| c.is_empty())
    }

    /// Structural invariants: merged exponents, no zero summands, trimmed
    /// polynomials, reduced constant phases.
    pub fn is_well_formed(&self) -> bool {
        self.classes.iter().all(|terms| {
            terms.iter().enumerate().all(|(i, t)| {
                !t.poly.is_empty()
                    && !t.poly.last().expect("nonempty").is_zero()
                    && fold_phase(&t.q0).0 == 0
                    && terms[..i].iter().all(|o| !o.same_exponent(t))
            })
        })
    }

    fn normalize(&mut self) {
        for terms in &mut self.classes {
            let mut merged: Vec<JetTerm> = Vec::with_capacity(terms.len());
            for mut t in terms.drain(..) {
                let (k, q0) = fold_phase(&t.q0);
                if k != 0 {
                    t = t.scale(&SymbolicScalar::lambda_pow(k));
                }
                t.q0 = q0;
                match merged.iter_mut().find(|o| o.same_exponent(&t)) {
                    Some(o) => o.poly = add_polys(&o.poly, &t.poly),
                    None => merged.push(t),
                }
            }
            for t in &mut merged {
                t.trim();
            }
            merged.retain(|t| !t.poly.is_empty());
            *terms = merged;
        }
    }

    fn map_terms(&self, f: impl Fn(usize, &JetTerm) -> JetTerm) -> GaussJet {
        let classes = self
            .classes
            .iter()
            .enumerate()
            .map(|(a, ts)| ts.iter().map(|t| f(a, t)).collect())
            .collect();
        GaussJet::from_classes(classes)
    }

    pub fn scale(&self, s: &SymbolicScalar) -> GaussJet {
        if s.is_zero() {
            return GaussJet::zero(self.residues());
        }
        self.map_terms(|_, t| t.scale(s))
    }

    pub fn add(&self, o: &GaussJet) -> GaussJet {
        assert_eq!(self.residues(), o.residues(), "sections of different modules");
        let classes = self
            .classes
            .iter()
            .zip(&o.classes)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        GaussJet::from_classes(classes)
    }

    pub fn sub(&self, o: &GaussJet) -> GaussJet {
        self.add(&o.scale(&SymbolicScalar::int(-1)))
    }

    /// d/dx
    pub fn derivative(&self) -> GaussJet {
        let two = SymbolicScalar::int(2);
        self.map_terms(|_, t| {
            let poly = add_polys(&t.derivative_poly(), &t.mul_affine(&(&two * &t.q2), &t.q1));
            JetTerm { poly, ..t.clone() }
        })
    }

    /// Multiplication by x.
    pub fn mul_x(&self) -> GaussJet {
        self.map_terms(|_, t| JetTerm {
            poly: t.mul_affine(&SymbolicScalar::one(), &SymbolicScalar::zero()),
            ..t.clone()
        })
    }

    /// Multiplication by exp(a1·x + a0) on every class.
    pub fn mul_exp_linear(&self, a1: &SymbolicScalar, a0: &SymbolicScalar) -> GaussJet {
        self.map_terms(|_, t| JetTerm {
            q1: &t.q1 + a1,
            q0: &t.q0 + a0,
            ..t.clone()
        })
    }

    /// x ↦ x + t on every class.
    pub fn translate(&self, t: &SymbolicScalar) -> GaussJet {
        self.map_terms(|_, term| term.translate(t))
    }

    /// f·U₁^p: (x, α) ↦ f(x + p·s, α − p).
    fn act_u1(&self, ch: &HeisenbergCharge, p: i64) -> GaussJet {
        if p == 0 {
            return self.clone();
        }
        let k = self.residues() as i64;
        let t = &ch.step() * &SymbolicScalar::int(p);
        let classes = (0..k)
            .map(|alpha| {
                let src = (alpha - p).rem_euclid(k) as usize;
                self.classes[src].iter().map(|term| term.translate(&t)).collect()
            })
            .collect();
        GaussJet::from_classes(classes)
    }

    /// f·U₂^q: multiply class α by exp(q·c·(x − αn/m)).
    fn act_u2(&self, ch: &HeisenbergCharge, q: i64) -> GaussJet {
        if q == 0 {
            return self.clone();
        }
        let qc = &SymbolicScalar::int(q) * &SymbolicScalar::unit(Unit::C);
        self.map_terms(|alpha, t| JetTerm {
            q1: &t.q1 + &qc,
            q0: &t.q0 + &(&qc * &ch.phase_offset(alpha)),
            ..t.clone()
        })
    }

    /// Evaluates the section at (x, α).
    pub fn evaluate(&self, alpha: usize, x: f64, a: &Assignment) -> Result<Complex<f64>> {
        let mut acc = Complex::new(0.0, 0.0);
        for t in &self.classes[alpha] {
            acc += t.eval(x, a)?;
        }
        Ok(acc)
    }
}

impl PartialEq for GaussJet {
    fn eq(&self, o: &GaussJet) -> bool {
        self.residues() == o.residues() && self.sub(o).is_zero()
    }
}

impl fmt::Display for GaussJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (alpha, terms) in self.classes.iter().enumerate() {
            for t in terms {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let poly: Vec<String> = t.poly.iter().map(|c| format!("[{c}]")).collect();
                write!(
                    f,
                    "1_{alpha}·({})·exp([{}]x² + [{}]x + [{}])",
                    poly.join(", "),
                    t.q2,
                    t.q1,
                    t.q0
                )?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn check_residues(f: &GaussJet, ch: &HeisenbergCharge) -> Result<()> {
    if f.residues() != ch.residues() {
        return Err(Error::DimensionMismatch(format!(
            "section has {} residue classes, charge ({}, {}) needs {}",
            f.residues(),
            ch.n,
            ch.m,
            ch.residues()
        )));
    }
    Ok(())
}

/// Right action f·a, extended linearly over the monomials of `a`.
pub fn act(f: &GaussJet, a: &NCElement, ch: &HeisenbergCharge) -> Result<GaussJet> {
    check_residues(f, ch)?;
    let mut out = GaussJet::zero(f.residues());
    for (&(p, q), s) in a.terms() {
        out = out.add(&f.act_u1(ch, p).act_u2(ch, q).scale(s));
    }
    Ok(out)
}

/// ∇_z f = df/dx + c(τμx + z)f with μ = m/(n + θm).
pub fn nabla_z_with(f: &GaussJet, ch: &HeisenbergCharge, z: &SymbolicScalar, tau: &SymbolicScalar) -> Result<GaussJet> {
    check_residues(f, ch)?;
    let c = SymbolicScalar::unit(Unit::C);
    let slope = &(&c * tau) * &ch.mu();
    let shift = &c * z;
    let mult = f.map_terms(|_, t| JetTerm {
        poly: t.mul_affine(&slope, &shift),
        ..t.clone()
    });
    Ok(f.derivative().add(&mult))
}

/// ∇_z with formal τ.
pub fn nabla_z(f: &GaussJet, ch: &HeisenbergCharge, z: &SymbolicScalar) -> Result<GaussJet> {
    nabla_z_with(f, ch, z, &SymbolicScalar::unit(Unit::Tau))
}

/// ∇_z(f·a) − ∇_z(f)·a − f·δ_τ(a); zero when ∇_z is a holomorphic structure.
pub fn leibniz_check_with(
    f: &GaussJet,
    a: &NCElement,
    ch: &HeisenbergCharge,
    z: &SymbolicScalar,
    tau: &SymbolicScalar,
) -> Result<GaussJet> {
    let lhs = nabla_z_with(&act(f, a, ch)?, ch, z, tau)?;
    let r1 = act(&nabla_z_with(f, ch, z, tau)?, a, ch)?;
    let r2 = act(f, &delta_tau_with(a, tau), ch)?;
    Ok(lhs.sub(&r1).sub(&r2))
}

pub fn leibniz_check(f: &GaussJet, a: &NCElement, ch: &HeisenbergCharge, z: &SymbolicScalar) -> Result<GaussJet> {
    leibniz_check_with(f, a, ch, z, &SymbolicScalar::unit(Unit::Tau))
}
