//! Parser for the inline expression syntax.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := NUMBER | IDENT | '(' expr ')'
//! ```
//!
//! Numbers are lexed greedily as `digits['/'digits]['i']`, so `1/2i` is the
//! Gaussian rational i/2 and `3/2` is a single literal. Identifiers: `i`, the
//! units `L` (λ), `th` (θ), `tau`, `z`, `c`, and the generators `U1`, `U2`.
//! Everything evaluates into an [`NCElement`]; a scalar is an element
//! supported at the origin.

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nctorus::{nc_mul, NCElement};
use crate::scalars::{GaussianRational, SymbolicScalar, Unit};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(GaussianRational),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>> {
        let mut lx = Lexer { src: src.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            let (p, t) = lx.next()?;
            let end = t == Tok::End;
            out.push((p, t));
            if end {
                return Ok(out);
            }
        }
    }

    fn digits(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .expect("digits")
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&ch) = self.src.get(self.pos) else {
            return Ok((start, Tok::End));
        };
        if ch.is_ascii_digit() {
            let num = self.digits();
            let mut den = BigInt::one();
            if self.src.get(self.pos) == Some(&b'/')
                && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
            {
                self.pos += 1;
                den = self.digits();
                if den.is_zero() {
                    return Err(Error::parse(start, "zero denominator in literal"));
                }
            }
            let value = BigRational::new(num, den);
            if self.src.get(self.pos) == Some(&b'i')
                && !self
                    .src
                    .get(self.pos + 1)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
            {
                self.pos += 1;
                return Ok((start, Tok::Num(GaussianRational::from_big(BigRational::zero(), value))));
            }
            return Ok((start, Tok::Num(GaussianRational::from_big(value, BigRational::zero()))));
        }
        if ch.is_ascii_alphabetic() || ch == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            return Ok((start, Tok::Ident(s.to_string())));
        }
        if b"+-*/^()".contains(&ch) {
            self.pos += 1;
            return Ok((start, Tok::Sym(ch as char)));
        }
        Err(Error::parse(start, format!("unexpected character `{}`", ch as char)))
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Tok::Sym(s) if s == c => Ok(()),
            _ => Err(Error::parse(self.pos(), format!("expected `{c}`"))),
        }
    }

    fn expr(&mut self) -> Result<NCElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCElement> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = nc_mul(&acc, &self.unary()?);
                }
                Tok::Sym('/') => {
                    self.bump();
                    let at = self.pos();
                    let d = self.unary()?;
                    let s = d
                        .as_scalar()
                        .ok_or_else(|| Error::parse(at, "can only divide by a scalar"))?;
                    let inv = s.inv().map_err(|_| Error::parse(at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<NCElement> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<NCElement> {
        let base = self.atom()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.pos();
        let neg = if self.peek() == &Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let e = match self.bump() {
            Tok::Num(n) => n
                .to_integer()
                .and_then(|k| i32::try_from(k).ok())
                .ok_or_else(|| Error::parse(at, "exponent must be an integer"))?,
            _ => return Err(Error::parse(at, "expected integer exponent")),
        };
        let e = if neg { -e } else { e };
        base.pow(e).map_err(|err| Error::parse(at, err.to_string()))
    }

    fn atom(&mut self) -> Result<NCElement> {
        let at = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(NCElement::scalar(n.into())),
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(NCElement::scalar(GaussianRational::i().into())),
                "U1" => Ok(NCElement::u1()),
                "U2" => Ok(NCElement::u2()),
                other => Unit::from_symbol(other)
                    .map(|u| NCElement::scalar(SymbolicScalar::unit(u)))
                    .ok_or_else(|| Error::parse(at, format!("unknown identifier `{other}`"))),
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => Err(Error::parse(at, "unexpected end of input")),
            Tok::Sym(c) => Err(Error::parse(at, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses an element of A_θ such as `U1^2*U2^-1 + (1/2)*U2`.
pub fn parse_element(src: &str) -> Result<NCElement> {
    let mut p = Parser { toks: Lexer::tokens(src)?, at: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// Parses a scalar such as `(3/2 + 1/2i) * L^-2 * th * c`.
pub fn parse_scalar(src: &str) -> Result<SymbolicScalar> {
    parse_element(src)?
        .as_scalar()
        .ok_or_else(|| Error::parse(0, "expected a scalar, found U1/U2 dependence"))
}

/// File row for one monomial `coeff · U₁^m U₂^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub m: i64,
    pub n: i64,
    pub coeff: String,
}

pub fn element_from_records(rows: &[MonomialRecord]) -> Result<NCElement> {
    let mut out = NCElement::zero();
    for (i, r) in rows.iter().enumerate() {
        let c = parse_scalar(&r.coeff).map_err(|e| Error::Format(format!("terms[{i}].coeff: {e}")))?;
        out = &out + &NCElement::monomial(r.m, r.n, c);
    }
    Ok(out)
}

pub fn element_records(a: &NCElement) -> Vec<MonomialRecord> {
    a.terms().map(|(&(m, n), c)| MonomialRecord { m, n, coeff: c.to_string() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Unit;

    #[test]
    fn scalar_syntax() {
        let s = parse_scalar("(3/2 + 1/2i) * L^-2 * th * c").unwrap();
        let coeff = parse_scalar("3/2 + 1/2i").unwrap();
        let expect = &(&(&coeff * &SymbolicScalar::lambda_pow(-2)) * &SymbolicScalar::unit(Unit::Theta))
            * &SymbolicScalar::unit(Unit::C);
        assert_eq!(s, expect);
        assert_eq!(s.to_string(), "(3/2 + 1/2i) * L^-2 * th * c");
    }

    #[test]
    fn element_syntax() {
        let e = parse_element("U1^2*U2^-1 + (1/2)*U2").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(2, -1), SymbolicScalar::one());
        let p = parse_element("U2*U1").unwrap();
        assert_eq!(p.to_string(), "L^-1 * U1*U2");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_element("U1 +").is_err());
        assert!(parse_element("U1 / U2").is_err());
        assert!(parse_element("(U1 + U2)^-1").is_err());
        assert!(parse_element("foo").is_err());
        assert!(parse_scalar("U1").is_err());
        assert!(parse_scalar("1/(th - th)").is_err());
    }

    #[test]
    fn rational_function_roundtrip() {
        let s = parse_scalar("(th + 2)/(th^2 - 3*tau) - L").unwrap();
        let back = parse_scalar(&s.to_string()).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn records_roundtrip() {
        let a = parse_element("U1^2*U2^-1 + (1/2 + th)*U2 - c").unwrap();
        let rows = element_records(&a);
        assert_eq!(rows.len(), 3);
        assert_eq!(element_from_records(&rows).unwrap(), a);
        let bad = vec![MonomialRecord { m: 0, n: 0, coeff: "th +".into() }];
        assert!(element_from_records(&bad).unwrap_err().to_string().contains("terms[0].coeff"));
    }
}
