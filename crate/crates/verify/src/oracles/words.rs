//! Products in A_θ by sorting letters: each U₂U₁ → λ⁻¹U₁U₂ swap is done
//! one letter pair at a time.

use nctorus_core::nctorus::NCElement;
use nctorus_core::scalars::SymbolicScalar;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Letter {
    U1(i64),
    U2(i64),
}

fn spell(m: i64, n: i64, out: &mut Vec<Letter>) {
    out.extend((0..m.abs()).map(|_| Letter::U1(m.signum())));
    out.extend((0..n.abs()).map(|_| Letter::U2(n.signum())));
}

/// Sorts U₁ letters before U₂ letters; returns (m, n, k) for λ^k U₁^m U₂^n.
fn sort(mut w: Vec<Letter>) -> (i64, i64, i64) {
    let mut k = 0;
    let mut swapped = true;
    while swapped {
        swapped = false;
        for i in 1..w.len() {
            if let (Letter::U2(e), Letter::U1(f)) = (w[i - 1], w[i]) {
                w.swap(i - 1, i);
                k -= e * f;
                swapped = true;
            }
        }
    }
    let m = w.iter().map(|l| if let Letter::U1(e) = l { *e } else { 0 }).sum();
    let n = w.iter().map(|l| if let Letter::U2(e) = l { *e } else { 0 }).sum();
    (m, n, k)
}

pub fn mul(a: &NCElement, b: &NCElement) -> NCElement {
    let mut out = NCElement::zero();
    for (&(m1, n1), s1) in a.terms() {
        for (&(m2, n2), s2) in b.terms() {
            let mut w = Vec::new();
            spell(m1, n1, &mut w);
            spell(m2, n2, &mut w);
            let (m, n, k) = sort(w);
            let c = &(s1 * s2) * &SymbolicScalar::lambda_pow(k as i32);
            out = &out + &NCElement::monomial(m, n, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nctorus_core::text::parse_element;

    #[test]
    fn single_swap() {
        let got = mul(&NCElement::u2(), &NCElement::u1());
        assert_eq!(got, parse_element("L^-1*U1*U2").unwrap());
        let got = mul(&parse_element("U2^-1").unwrap(), &parse_element("U1^2").unwrap());
        assert_eq!(got, parse_element("L^2*U1^2*U2^-1").unwrap());
    }
}
