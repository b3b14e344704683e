use nctorus_core::bundles::{
    act, leibniz_check, lift_connection, nabla_free, nabla_z, FreeConnection, GaussJet, HeisenbergCharge, JetTerm,
    NcMatrix,
};
use nctorus_core::nctorus::{nc_mul, NCElement};
use nctorus_core::scalars::{Assignment, SymbolicScalar, Unit};
use nctorus_core::text::{parse_element, parse_scalar};
use num::Complex;
use proptest::prelude::*;

const CHARGES: [(i64, i64); 6] = [(1, 1), (1, 2), (2, -1), (0, 1), (3, 2), (-1, 3)];

fn s(src: &str) -> SymbolicScalar {
    parse_scalar(src).unwrap()
}

fn small_scalar() -> impl Strategy<Value = SymbolicScalar> {
    prop::sample::select(vec!["0", "1", "-2", "1/2", "th", "tau", "1 + th", "i", "3/2 - tau", "L"]).prop_map(s)
}

fn term() -> impl Strategy<Value = JetTerm> {
    (
        prop::collection::vec(small_scalar(), 1..=3),
        prop::sample::select(vec!["0", "-1/2", "-1", "c * tau"]),
        small_scalar(),
        prop::sample::select(vec!["0", "1/3", "c/4", "th * c/2"]),
    )
        .prop_map(|(poly, q2, q1, q0)| JetTerm::new(poly, s(q2), q1, s(q0)))
}

fn section(residues: usize) -> impl Strategy<Value = GaussJet> {
    prop::collection::vec(prop::collection::vec(term(), 0..=2), residues).prop_map(GaussJet::from_classes)
}

fn charge_and_section() -> impl Strategy<Value = (HeisenbergCharge, GaussJet)> {
    prop::sample::select(CHARGES.to_vec()).prop_flat_map(|(n, m)| {
        let ch = HeisenbergCharge::new(n, m).unwrap();
        section(ch.residues()).prop_map(move |f| (ch, f))
    })
}

fn monomial() -> impl Strategy<Value = NCElement> {
    (-2i64..=2, -2i64..=2).prop_map(|(m, n)| NCElement::monomial(m, n, SymbolicScalar::one()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn leibniz_holds((ch, f) in charge_and_section(), a in monomial()) {
        let z = SymbolicScalar::unit(Unit::Z);
        let r = leibniz_check(&f, &a, &ch, &z).unwrap();
        prop_assert!(r.is_zero(), "residual {}", r);
        prop_assert!(act(&f, &a, &ch).unwrap().is_well_formed());
        prop_assert!(nabla_z(&f, &ch, &z).unwrap().is_well_formed());
    }

    #[test]
    fn module_law((ch, f) in charge_and_section(), a in monomial(), b in monomial()) {
        let lhs = act(&f, &nc_mul(&a, &b), &ch).unwrap();
        let rhs = act(&act(&f, &a, &ch).unwrap(), &b, &ch).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn central_difference(f: &GaussJet, alpha: usize, x: f64, asg: &Assignment) -> Complex<f64> {
    let h = 1e-5;
    (f.evaluate(alpha, x + h, asg).unwrap() - f.evaluate(alpha, x - h, asg).unwrap()) / (2.0 * h)
}

#[test]
fn nabla_matches_finite_differences() {
    let ch = HeisenbergCharge::new(1, 2).unwrap();
    let f = GaussJet::from_classes(vec![
        vec![JetTerm::new(vec![s("1"), s("th")], s("-1/2"), s("tau"), s("0"))],
        vec![JetTerm::new(vec![s("2"), s("0"), s("1/3")], s("-1"), s("1/2"), s("c/5"))],
    ]);
    let z = SymbolicScalar::unit(Unit::Z);
    let nf = nabla_z(&f, &ch, &z).unwrap();
    let (theta, tau, zv) = (0.3819660112501051, Complex::new(0.2, 1.1), Complex::new(0.4, -0.3));
    let asg = Assignment::coupled(theta, tau, zv);
    let mu = 2.0 / (1.0 + 2.0 * theta);
    let c = Complex::new(0.0, 2.0 * std::f64::consts::PI);
    for k in 0..10 {
        let x = -1.5 + 0.33 * k as f64;
        for alpha in 0..2 {
            let expect = central_difference(&f, alpha, x, &asg) + c * (tau * mu * x + zv) * f.evaluate(alpha, x, &asg).unwrap();
            let got = nf.evaluate(alpha, x, &asg).unwrap();
            assert!((got - expect).norm() <= 1e-6 * (1.0 + expect.norm()), "x = {x}: {got} vs {expect}");
        }
    }
}

#[test]
fn generators_on_the_gate_charges() {
    let z = SymbolicScalar::unit(Unit::Z);
    for (n, m) in [(1, 1), (1, 2), (2, -1), (0, 1)] {
        let ch = HeisenbergCharge::new(n, m).unwrap();
        let f = GaussJet::indicator(ch.residues(), 0).mul_exp_linear(&s("1/2"), &s("0"));
        for a in ["U1", "U2", "U1*U2", "1"] {
            assert!(leibniz_check(&f, &parse_element(a).unwrap(), &ch, &z).unwrap().is_zero());
        }
    }
}

#[test]
fn rank_two_free_connection_by_hand() {
    let b = NcMatrix::from_rows(vec![
        vec![parse_element("U1").unwrap(), parse_element("th").unwrap()],
        vec![NCElement::zero(), parse_element("c*z").unwrap()],
    ])
    .unwrap();
    let conn = FreeConnection::new(b).unwrap();
    let v = vec![parse_element("U2").unwrap(), parse_element("U1 + 1").unwrap()];
    let got = nabla_free(&v, &conn).unwrap();
    let expect = vec![
        parse_element("c*U2 + U1*U2 + th*U1 + th").unwrap(),
        parse_element("c*tau*U1 + c*z*U1 + c*z").unwrap(),
    ];
    assert_eq!(got, expect);
}

#[test]
fn lift_random_split_surjections() {
    // F = [I | X]·P for an invertible elementary P, S = P⁻¹·[I; 0].
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let pool = ["U1", "U2", "L*U1^-1", "th", "1/2*U1*U2", "c*z", "0", "1"];
    let pick = |rng: &mut rand_chacha::ChaCha8Rng| parse_element(pool[rng.gen_range(0..pool.len())]).unwrap();
    for _ in 0..25 {
        let q = rng.gen_range(1..=2);
        let p = q + rng.gen_range(0..=1);
        let mut f = NcMatrix::zero(q, p);
        let mut sec = NcMatrix::zero(p, q);
        for i in 0..q {
            f.set(i, i, NCElement::one());
            sec.set(i, i, NCElement::one());
            for j in q..p {
                f.set(i, j, pick(&mut rng));
            }
        }
        let mut b2 = NcMatrix::zero(q, q);
        for i in 0..q {
            for j in 0..q {
                b2.set(i, j, pick(&mut rng));
            }
        }
        let b1 = lift_connection(&f, &sec, &b2).unwrap();
        assert_eq!(f.mul(&b1).unwrap(), f.delta().add(&b2.mul(&f).unwrap()).unwrap());
    }
}
