//! The nine numbered suites. Each returns a [`Report`]; randomized suites
//! draw from a ChaCha stream seeded by `seed` and the suite number.

use std::cmp::Ordering;
use std::time::Instant;

use nctorus_core::bundles::{
    act, lift_connection, nabla_z, GaussJet, HeisenbergCharge, JetTerm, NcMatrix,
};
use nctorus_core::cyclic::{
    hc, hh, morita_check, shipped, AlgebraPresentation, CyclicModule, DgCategoryPresentation, Source,
    DEFAULT_BUDGET,
};
use nctorus_core::elliptic::{
    charge_to_heisenberg, classify, heart_member, hom_dim, in_ge1, in_le0, k0_class, splitting_check, truncate,
    truncate_at, truncation_adjunction_check, Charge, FormalObject, SlopeClass, StablePiece, Theta,
};
use nctorus_core::nctorus::{delta_tau, derivation_check, nc_mul, nc_trace, NCElement};
use nctorus_core::scalars::{Assignment, SymbolicScalar, Unit};
use nctorus_core::text::parse_scalar;
use num::Complex;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::oracles::{bar, decimal, words};

/// Budget for the matrix algebras of the Morita suite; M₃(ℚ[x]/x²) to
/// degree 3 needs 18⁵ words in the top degree.
pub const MORITA_BUDGET: usize = 2_000_000;

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "algebra"),
    (2, "derivation"),
    (3, "leibniz"),
    (4, "lifting"),
    (5, "cyclic-identities"),
    (6, "homology-values"),
    (7, "morita"),
    (8, "t-structure"),
    (9, "one-object"),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    /// Empty on success, otherwise the first failures.
    pub detail: String,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            match self.failures.len() {
                0..=4 => self.failures.push(what()),
                5 => self.failures.push("...".into()),
                _ => {}
            }
        }
    }

    fn fail(&mut self, what: String) {
        self.check(false, || what);
    }
}

pub fn run(id: u8, seed: u64) -> Option<Report> {
    let (_, name) = CRITERIA.iter().find(|(i, _)| *i == id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(id) << 56));
    let start = Instant::now();
    let mut t = Tally::default();
    match id {
        1 => algebra(&mut t, &mut rng),
        2 => derivation(&mut t, &mut rng),
        3 => leibniz(&mut t, &mut rng),
        4 => lifting(&mut t, &mut rng),
        5 => cyclic_identities(&mut t),
        6 => homology_values(&mut t),
        7 => morita(&mut t),
        8 => t_structure(&mut t, &mut rng),
        9 => one_object(&mut t),
        _ => unreachable!(),
    }
    let seconds = start.elapsed().as_secs_f64();
    let limit = match id {
        1 => Some(10.0),
        6 => Some(60.0),
        _ => None,
    };
    if let Some(limit) = limit {
        t.check(seconds < limit, || format!("took {seconds:.1} s, limit {limit} s"));
    }
    Some(Report {
        id,
        name: name.to_string(),
        passed: t.failures.is_empty(),
        checks: t.checks,
        detail: t.failures.join("; "),
        seconds,
    })
}

pub fn run_all(seed: u64) -> Vec<Report> {
    CRITERIA.iter().filter_map(|(id, _)| run(*id, seed)).collect()
}

fn s(src: &str) -> SymbolicScalar {
    parse_scalar(src).expect("built-in scalar")
}

const SCALARS: [&str; 16] = [
    "1", "-1", "2", "1/2", "-3/4", "i", "1 + i", "th", "tau", "z", "L", "L^-1", "th - 1/3", "2*tau + i", "c",
    "1/(1 + th)",
];

fn random_scalar(rng: &mut ChaCha8Rng) -> SymbolicScalar {
    s(SCALARS.choose(rng).expect("nonempty"))
}

/// Up to four terms with exponents in −3..=3.
fn random_element(rng: &mut ChaCha8Rng) -> NCElement {
    let k = rng.gen_range(1..=4);
    (0..k).fold(NCElement::zero(), |acc, _| {
        let m = NCElement::monomial(rng.gen_range(-3..=3), rng.gen_range(-3..=3), random_scalar(rng));
        &acc + &m
    })
}

fn algebra(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let one = NCElement::one();
    for _ in 0..500 {
        let (a, b, c) = (random_element(rng), random_element(rng), random_element(rng));
        let ab = nc_mul(&a, &b);
        t.check(nc_mul(&ab, &c) == nc_mul(&a, &nc_mul(&b, &c)), || format!("associativity: {a} | {b} | {c}"));
        t.check(nc_mul(&one, &a) == a && nc_mul(&a, &one) == a, || format!("unit: {a}"));
        t.check(
            nc_mul(&a, &(&b + &c)) == &ab + &nc_mul(&a, &c),
            || format!("left distributivity: {a} | {b} | {c}"),
        );
        t.check(
            nc_mul(&(&a + &b), &c) == &nc_mul(&a, &c) + &nc_mul(&b, &c),
            || format!("right distributivity: {a} | {b} | {c}"),
        );
        t.check(ab == words::mul(&a, &b), || format!("letter-sorting oracle: {a} | {b}"));
    }
}

fn derivation(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for _ in 0..500 {
        let (a, b) = (random_element(rng), random_element(rng));
        t.check(derivation_check(&a, &b).is_zero(), || format!("Leibniz for δ_τ: {a} | {b}"));
        t.check(
            nc_trace(&nc_mul(&a, &b)) == nc_trace(&nc_mul(&b, &a)),
            || format!("trace(ab) = trace(ba): {a} | {b}"),
        );
        t.check(nc_trace(&delta_tau(&a)).is_zero(), || format!("trace ∘ δ_τ: {a}"));
    }
}

const GATE_CHARGES: [(i64, i64); 4] = [(1, 1), (1, 2), (2, -1), (0, 1)];

fn random_term(rng: &mut ChaCha8Rng, decaying: bool) -> JetTerm {
    let deg = rng.gen_range(1..=3);
    let poly = (0..deg).map(|_| random_scalar_numeric(rng)).collect();
    let q2 = if decaying {
        s(["-1/2", "-1", "-1/3"].choose(rng).expect("nonempty"))
    } else {
        s(["0", "-1/2", "-1", "c*tau", "th"].choose(rng).expect("nonempty"))
    };
    let q1 = random_scalar_numeric(rng);
    let q0 = s(["0", "1/3", "c/4", "th*c/2", "i"].choose(rng).expect("nonempty"));
    JetTerm::new(poly, q2, q1, q0)
}

/// Scalars that evaluate to moderate numbers at the sample point.
fn random_scalar_numeric(rng: &mut ChaCha8Rng) -> SymbolicScalar {
    s(["0", "1", "-2", "1/2", "th", "tau", "1 + th", "i", "3/2 - tau", "L", "z"].choose(rng).expect("nonempty"))
}

fn random_section(rng: &mut ChaCha8Rng, ch: &HeisenbergCharge, decaying: bool) -> GaussJet {
    let classes = (0..ch.residues())
        .map(|_| (0..rng.gen_range(1..=2)).map(|_| random_term(rng, decaying)).collect())
        .collect();
    GaussJet::from_classes(classes)
}

fn leibniz(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let z = SymbolicScalar::unit(Unit::Z);
    let gens = [NCElement::u1(), NCElement::u2(), nc_mul(&NCElement::u1(), &NCElement::u2())];
    let theta = (5f64.sqrt() - 1.0) / 2.0;
    let (tau, zv) = (Complex::new(0.3, 1.2), Complex::new(-0.4, 0.25));
    let asg = Assignment::coupled(theta, tau, zv);
    let cc = Complex::new(0.0, 2.0 * std::f64::consts::PI);
    for (n, m) in GATE_CHARGES {
        let ch = HeisenbergCharge::new(n, m).expect("m ≠ 0");
        for _ in 0..50 {
            let f = random_section(rng, &ch, false);
            for a in &gens {
                match nctorus_core::bundles::leibniz_check(&f, a, &ch, &z) {
                    Ok(r) => t.check(r.is_zero(), || format!("({n},{m}), a = {a}, f = {f}: residual {r}")),
                    Err(e) => t.fail(format!("({n},{m}), a = {a}: {e}")),
                }
                let closed = act(&f, a, &ch).map(|g| g.is_well_formed()).unwrap_or(false);
                t.check(closed, || format!("f·a left the section class: ({n},{m}), a = {a}"));
            }
        }
        let mu = m as f64 / (n as f64 + theta * m as f64);
        for _ in 0..3 {
            let f = random_section(rng, &ch, true);
            let nf = match nabla_z(&f, &ch, &z) {
                Ok(g) => g,
                Err(e) => {
                    t.fail(format!("∇_z({n},{m}): {e}"));
                    continue;
                }
            };
            for k in 0..10 {
                let x = -1.5 + 0.31 * k as f64;
                for alpha in 0..ch.residues() {
                    let ev = |g: &GaussJet, x: f64| g.evaluate(alpha, x, &asg).expect("all units bound");
                    let h = 1e-5;
                    let fd = (ev(&f, x + h) - ev(&f, x - h)) / (2.0 * h);
                    let expect = fd + cc * (tau * mu * x + zv) * ev(&f, x);
                    let got = ev(&nf, x);
                    let rel = (got - expect).norm() / expect.norm().max(1e-12);
                    t.check(rel <= 1e-6, || format!("finite difference at ({n},{m}), α = {alpha}, x = {x}: rel {rel:e}"));
                }
            }
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, sparse: bool) -> NcMatrix {
    let mut m = NcMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if !sparse || rng.gen_bool(0.6) {
                let k = rng.gen_range(1..=2);
                let e = (0..k).fold(NCElement::zero(), |acc, _| {
                    &acc + &NCElement::monomial(rng.gen_range(-2..=2), rng.gen_range(-2..=2), random_scalar(rng))
                });
                m.set(i, j, e);
            }
        }
    }
    m
}

fn lifting(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for _ in 0..100 {
        let q = rng.gen_range(1..=3);
        let p = rng.gen_range(q..=3);
        // F = [I | X]·E and S = E⁻¹·[I; 0] with E = I + N, N strictly upper triangular.
        let x = random_matrix(rng, q, p - q, true);
        let mut top = NcMatrix::zero(q, p);
        let mut inc = NcMatrix::zero(p, q);
        for i in 0..q {
            top.set(i, i, NCElement::one());
            inc.set(i, i, NCElement::one());
            for j in q..p {
                top.set(i, j, x.get(i, j - q).clone());
            }
        }
        let mut nil = NcMatrix::zero(p, p);
        for i in 0..p {
            for j in i + 1..p {
                if rng.gen_bool(0.7) {
                    nil.set(i, j, random_element(rng));
                }
            }
        }
        let id = NcMatrix::identity(p);
        let e = id.add(&nil).expect("square");
        let n2 = nil.mul(&nil).expect("square");
        let e_inv = id.sub(&nil).and_then(|m| m.add(&n2)).expect("square");
        let f = top.mul(&e).expect("shapes");
        let sec = e_inv.mul(&inc).expect("shapes");
        t.check(f.mul(&sec).expect("shapes") == NcMatrix::identity(q), || "F·S ≠ I by construction".into());
        let b2 = random_matrix(rng, q, q, false);
        match lift_connection(&f, &sec, &b2) {
            Ok(b1) => {
                let lhs = f.mul(&b1).expect("shapes");
                let rhs = f.delta().add(&b2.mul(&f).expect("shapes")).expect("shapes");
                t.check(lhs == rhs, || format!("F·B₁ ≠ δ(F) + B₂·F for p = {p}, q = {q}"));
            }
            Err(e) => t.fail(format!("lift failed for p = {p}, q = {q}: {e}")),
        }
        if p > q {
            let mut bad = sec.clone();
            bad.set(p - 1, 0, &bad.get(p - 1, 0).clone() + &NCElement::one());
            if f.mul(&bad).expect("shapes") != NcMatrix::identity(q) {
                t.check(lift_connection(&f, &bad, &b2).is_err(), || "accepted a non-section".into());
            }
        }
    }
    for k in 1..=3 {
        let b2 = random_matrix(rng, k, k, false);
        let id = NcMatrix::identity(k);
        let ok = lift_connection(&id, &id, &b2).map(|b1| b1 == b2).unwrap_or(false);
        t.check(ok, || format!("identity surjection of rank {k} changed B₂"));
    }
}

fn cyclic_identities(t: &mut Tally) {
    let mut sources: Vec<(String, Result<CyclicModule, String>)> = Vec::new();
    for (name, a) in shipped::algebras() {
        sources.push((name.into(), CyclicModule::build(Source::Algebra(&a), 5, DEFAULT_BUDGET).map_err(|e| e.to_string())));
    }
    let g = shipped::graded_dual_numbers();
    sources.push((
        "graded-dual-numbers".into(),
        CyclicModule::build(Source::Category(&g), 5, DEFAULT_BUDGET).map_err(|e| e.to_string()),
    ));
    for (name, m) in sources {
        match m {
            Ok(m) => {
                for c in m.identity_report().checks {
                    t.check(c.holds, || format!("{name}: {} fails in degree {}", c.name, c.degree));
                }
            }
            Err(e) => t.fail(format!("{name}: {e}")),
        }
    }
}

fn table(r: nctorus_core::Result<nctorus_core::cyclic::HomologyResult>) -> Result<Vec<usize>, String> {
    r.map(|h| h.dims).map_err(|e| e.to_string())
}

fn homology_values(t: &mut Tally) {
    let q = shipped::field();
    let hh_q = table(hh(Source::Algebra(&q), 3, DEFAULT_BUDGET));
    t.check(hh_q == Ok(vec![1, 0, 0, 0]), || format!("HH(ℚ) = {hh_q:?}"));
    let hc_q = table(hc(Source::Algebra(&q), 2, DEFAULT_BUDGET));
    t.check(hc_q == Ok(vec![1, 0, 1]), || format!("HC(ℚ) = {hc_q:?}"));
    for (name, a) in shipped::algebras() {
        let h = table(hh(Source::Algebra(&a), 3, DEFAULT_BUDGET));
        let expect = bar::commutator_quotient(&a);
        t.check(h.as_ref().map(|d| d[0]) == Ok(expect), || format!("{name}: HH₀ {h:?}, dim A/[A,A] = {expect}"));
        if a.dim() <= 3 {
            let oracle = bar::normalized_hh(&a, 3);
            t.check(h == Ok(oracle.clone()), || format!("{name}: HH {h:?}, normalized bar {oracle:?}"));
            let c = table(hc(Source::Algebra(&a), 3, DEFAULT_BUDGET));
            let oracle = bar::connes_hc(&a, 3);
            t.check(c == Ok(oracle.clone()), || format!("{name}: HC {c:?}, Connes complex {oracle:?}"));
        }
    }
}

fn morita(t: &mut Tally) {
    let cases: [(&str, AlgebraPresentation, usize, usize); 4] = [
        ("field", shipped::field(), 2, 4),
        ("field", shipped::field(), 3, 4),
        ("dual-numbers", shipped::dual_numbers(), 2, 3),
        ("dual-numbers", shipped::dual_numbers(), 3, 3),
    ];
    for (name, a, n, deg) in cases {
        match morita_check(&a, n, deg, MORITA_BUDGET) {
            Ok(r) => t.check(r.equal, || format!("M_{n}({name}): {r:?}")),
            Err(e) => t.fail(format!("M_{n}({name}): {e}")),
        }
    }
}

/// Ten irrational slopes on both sides of several integers.
pub const THETAS: [&str; 10] = [
    "(-1+1*sqrt(5))/2",
    "(0+1*sqrt(2))/1",
    "(3-1*sqrt(13))/2",
    "(0-2*sqrt(3))/3",
    "(1+1*sqrt(7))/3",
    "(0-1*sqrt(5))/1",
    "(5-1*sqrt(2))/4",
    "(-7+2*sqrt(11))/5",
    "(0+3*sqrt(3))/2",
    "(1-1*sqrt(6))/2",
];

fn random_piece(rng: &mut ChaCha8Rng) -> StablePiece {
    loop {
        let (r, d) = (rng.gen_range(0..=4), rng.gen_range(-6..=6));
        if let Ok(c) = Charge::new(r, d) {
            if let Ok(p) = StablePiece::new(c, *["", "p", "q"].choose(rng).expect("nonempty")) {
                return p;
            }
        }
    }
}

fn random_object(rng: &mut ChaCha8Rng) -> FormalObject {
    let mut x = FormalObject::zero();
    for _ in 0..rng.gen_range(0..=6) {
        x.push(rng.gen_range(-3..=3), random_piece(rng), rng.gen_range(1..=3));
    }
    x
}

fn t_structure(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let thetas: Vec<Theta> = THETAS.iter().map(|s| s.parse().expect("irrational surd")).collect();
    for _ in 0..1000 {
        let x = random_object(rng);
        let y = random_object(rng);
        for theta in &thetas {
            let (x0, x1) = truncate(&x, theta);
            t.check(
                x0.direct_sum(&x1) == x && in_le0(&x0, theta) && in_ge1(&x1, theta),
                || format!("partition of {x} at θ = {theta}"),
            );
            t.check(in_le0(&x0.shift(1), theta) && in_ge1(&x1.shift(-1), theta), || {
                format!("shift stability of {x} at θ = {theta}")
            });
            let (n, sh) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            let (lo, hi) = truncate_at(&x, n, theta);
            t.check(
                truncate_at(&x.shift(sh), n - sh, theta) == (lo.shift(sh), hi.shift(sh)),
                || format!("truncation commutes with [{sh}] for {x} at θ = {theta}"),
            );
            let r = splitting_check(&x, theta);
            let (a, b) = (k0_class(&x0), k0_class(&x1));
            t.check(r.holds && (a.0 + b.0, a.1 + b.1) == k0_class(&x), || format!("K₀ split of {x}"));
            let (_, y1) = truncate(&y, theta);
            t.check(hom_dim(&x0, &y1, 0) == 0, || format!("Hom({x0}, {y1}) ≠ 0"));
            match truncation_adjunction_check(&lo, &y, n, theta) {
                Ok(r) => t.check(r.holds, || format!("adjunction at n = {n}: {lo} → {y}: {r:?}")),
                Err(e) => t.fail(format!("adjunction precondition: {e}")),
            }
            for (k, p, _) in x.summands() {
                let c = p.charge();
                let exact = classify(c, theta);
                let oracle = if c.is_torsion() {
                    Some(SlopeClass::Above)
                } else {
                    decimal::compare(theta.value(), c.d(), c.r()).map(|o| match o {
                        Ordering::Less => SlopeClass::Above,
                        _ => SlopeClass::AtMost,
                    })
                };
                t.check(oracle.is_none_or(|o| o == exact), || format!("classify({c:?}) at θ = {theta}"));
                let single = FormalObject::single(k, p.clone(), 1);
                if heart_member(&single, theta) {
                    match charge_to_heisenberg(k, p, theta) {
                        Ok(model) => {
                            let (n, m) = model.nm();
                            t.check(theta.value().sign_of_affine(n, m) == Ordering::Greater, || {
                                format!("dim_θ of ({n}, {m}) is not positive at θ = {theta}")
                            });
                        }
                        Err(e) => t.fail(format!("heart piece rejected: {e}")),
                    }
                }
            }
        }
    }
}

fn one_object(t: &mut Tally) {
    let mut pairs: Vec<(String, AlgebraPresentation, DgCategoryPresentation)> = shipped::algebras()
        .into_iter()
        .map(|(n, a)| {
            let c = DgCategoryPresentation::one_object(&a);
            (n.to_string(), a, c)
        })
        .collect();
    pairs.push(("path-a2 vs a2-quiver".into(), shipped::path_a2(), shipped::a2_category()));
    for (name, a, c) in pairs {
        let (ha, hcat) = (table(hh(Source::Algebra(&a), 3, DEFAULT_BUDGET)), table(hh(Source::Category(&c), 3, DEFAULT_BUDGET)));
        t.check(ha.is_ok() && ha == hcat, || format!("{name}: HH {ha:?} vs {hcat:?}"));
        let (ca, ccat) = (table(hc(Source::Algebra(&a), 3, DEFAULT_BUDGET)), table(hc(Source::Category(&c), 3, DEFAULT_BUDGET)));
        t.check(ca.is_ok() && ca == ccat, || format!("{name}: HC {ca:?} vs {ccat:?}"));
    }
}
