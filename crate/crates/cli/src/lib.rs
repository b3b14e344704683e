//! Command-line front end. [`execute`] runs a parsed command and returns the
//! records it produced; [`run`] renders them and picks the exit status.

pub mod records;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nctorus_core::bundles::{
    leibniz_check_with, lift_connection, matrix_from_text, matrix_to_text, LiftFile, SectionFile,
};
use nctorus_core::cyclic::{
    hc, hh, hp, morita_check, shipped, AlgebraFile, AlgebraPresentation, CategoryFile, DgCategoryPresentation,
    Source, DEFAULT_BUDGET,
};
use nctorus_core::elliptic::{
    hom_dim, in_ge1, in_le0, k0_class, splitting_check, truncate, truncation_adjunction_check, FormalObject,
    SummandRecord, Theta,
};
use nctorus_core::nctorus::{delta_tau_with, nc_mul, nc_trace, NCElement};
use nctorus_core::scalars::SymbolicScalar;
use nctorus_core::text::{element_from_records, parse_element, parse_scalar, MonomialRecord};
use nctorus_core::Error;
use serde::de::DeserializeOwned;

use records::Record;

#[derive(Debug, Parser)]
#[command(name = "nctorus", version, about = "Exact computations on the noncommutative torus, its holomorphic bundles and cyclic homology")]
pub struct Cli {
    /// Output mode.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Records,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-ordered product of one or more elements.
    NcMul {
        /// Inline expressions such as `U1^2*U2^-1 + (1/2)*U2`, or `@file.json`.
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// δ_τ of an element.
    NcDelta {
        element: String,
        #[command(flatten)]
        tau: TauArg,
    },
    /// δ_τ(ab) − δ_τ(a)b − aδ_τ(b) and the trace property.
    DerivationCheck {
        a: String,
        b: String,
        #[command(flatten)]
        tau: TauArg,
    },
    /// ∇_z(f·a) − ∇_z(f)·a − f·δ_τ(a) for a section of E_{n,m}.
    LeibnizCheck {
        /// Section file: {"charge": [n, m], "terms": [{alpha, poly, q2, q1, q0}]}.
        #[arg(long)]
        section: PathBuf,
        #[arg(long)]
        element: String,
        /// Value of z as a scalar expression.
        #[arg(long, default_value = "z")]
        z: String,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Lift a connection along a split surjection F with section S.
    Lift {
        /// File {"F": rows, "S": rows, "B2": rows} of element expressions.
        #[arg(long)]
        input: PathBuf,
    },
    /// τ^{≤0} and τ^{≥1} of an object with the K₀ splitting.
    HeartSplit {
        #[command(flatten)]
        theta: ThetaArg,
        #[arg(long)]
        object: PathBuf,
    },
    /// K₀ class (rank, degree) of an object.
    K0 {
        #[arg(long)]
        object: PathBuf,
    },
    /// dim Hom(X, τ^{≤n}Y) = dim Hom(X, Y) for X in D^{≤n}.
    AdjunctionCheck {
        #[command(flatten)]
        theta: ThetaArg,
        #[arg(long)]
        object: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
    },
    /// Weak t-structure axioms on τ^{≤0}X and τ^{≥1}Y.
    AxiomReport {
        #[command(flatten)]
        theta: ThetaArg,
        #[arg(long)]
        object: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Hochschild homology dimensions.
    Hh {
        #[command(flatten)]
        input: CyclicInput,
        #[command(flatten)]
        size: SizeArgs,
    },
    /// Cyclic homology dimensions.
    Hc {
        #[command(flatten)]
        input: CyclicInput,
        #[command(flatten)]
        size: SizeArgs,
    },
    /// Periodic cyclic homology from the S maps on HC_0..=max-degree.
    Hp {
        #[command(flatten)]
        input: CyclicInput,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// HH and HC of A against M_n(A).
    MoritaCheck {
        #[command(flatten)]
        input: CyclicInput,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        size: SizeArgs,
    },
    /// Runs the numbered acceptance suites.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run only these suites (1–9).
        #[arg(long)]
        only: Vec<u8>,
    },
}

#[derive(Debug, Args)]
pub struct TauArg {
    /// Value of τ as a scalar expression.
    #[arg(long, default_value = "tau")]
    pub tau: String,
}

#[derive(Debug, Args)]
pub struct ThetaArg {
    /// Irrational slope as `(p+q*sqrt(D))/r`.
    #[arg(long)]
    pub theta: String,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CyclicInput {
    /// Algebra file {basis, unit, mult}.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    /// Category file {objects, morphisms, identities, differential, composition}.
    #[arg(long)]
    pub category: Option<PathBuf>,
    /// Built-in: field, dual-numbers, product, matrix-2, path-a2, zero,
    /// graded-dual-numbers, a2-quiver.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct SizeArgs {
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    /// Largest number of basis words allowed in one degree.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

/// Failure before any contract could be checked.
#[derive(Debug)]
pub struct Failure {
    pub status: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if matches!(e, Error::Contract(_)) { 1 } else { 2 };
        Failure { status, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { status: 2, message }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn element(arg: &str) -> Result<NCElement, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let rows: Vec<MonomialRecord> = read_json(Path::new(path))?;
            element_from_records(&rows).map_err(|e| input_error(format!("{path}: {e}")))
        }
        None => parse_element(arg).map_err(|e| input_error(format!("`{arg}`: {e}"))),
    }
}

fn scalar(what: &str, arg: &str) -> Result<SymbolicScalar, Failure> {
    parse_scalar(arg).map_err(|e| input_error(format!("--{what} `{arg}`: {e}")))
}

fn theta(arg: &ThetaArg) -> Result<Theta, Failure> {
    arg.theta.parse().map_err(|e: Error| input_error(format!("--theta: {e}")))
}

fn object(path: &Path) -> Result<FormalObject, Failure> {
    read_json(path)
}

fn summands(x: &FormalObject) -> Vec<SummandRecord> {
    x.records()
}

fn check(name: &str, holds: bool) -> Record {
    Record::Check { name: name.into(), holds }
}

enum Loaded {
    Algebra(AlgebraPresentation),
    Category(DgCategoryPresentation),
}

impl Loaded {
    fn source(&self) -> Source<'_> {
        match self {
            Loaded::Algebra(a) => Source::Algebra(a),
            Loaded::Category(c) => Source::Category(c),
        }
    }
}

fn load(input: &CyclicInput) -> Result<Loaded, Failure> {
    if let Some(path) = &input.algebra {
        let file: AlgebraFile = read_json(path)?;
        return AlgebraPresentation::from_file(file)
            .map(Loaded::Algebra)
            .map_err(|e| input_error(format!("{}: {e}", path.display())));
    }
    if let Some(path) = &input.category {
        let file: CategoryFile = read_json(path)?;
        return DgCategoryPresentation::from_file(file)
            .map(Loaded::Category)
            .map_err(|e| input_error(format!("{}: {e}", path.display())));
    }
    let name = input.builtin.as_deref().expect("clap requires one input");
    if let Some(a) = shipped::algebra_by_name(name) {
        return Ok(Loaded::Algebra(a));
    }
    shipped::category_by_name(name)
        .map(Loaded::Category)
        .ok_or_else(|| input_error(format!("unknown built-in `{name}`")))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::NcMul { .. } => "nc-mul",
        Command::NcDelta { .. } => "nc-delta",
        Command::DerivationCheck { .. } => "derivation-check",
        Command::LeibnizCheck { .. } => "leibniz-check",
        Command::Lift { .. } => "lift",
        Command::HeartSplit { .. } => "heart-split",
        Command::K0 { .. } => "k0",
        Command::AdjunctionCheck { .. } => "adjunction-check",
        Command::AxiomReport { .. } => "axiom-report",
        Command::Hh { .. } => "hh",
        Command::Hc { .. } => "hc",
        Command::Hp { .. } => "hp",
        Command::MoritaCheck { .. } => "morita-check",
        Command::Selftest { .. } => "selftest",
    }
}

/// Runs one command; the header record is not included.
pub fn execute(command: &Command) -> Result<Vec<Record>, Failure> {
    let mut out = Vec::new();
    match command {
        Command::NcMul { elements } => {
            let mut acc = NCElement::one();
            for e in elements {
                acc = nc_mul(&acc, &element(e)?);
            }
            out.push(Record::Element { name: String::new(), value: acc.to_string() });
        }
        Command::NcDelta { element: e, tau } => {
            let d = delta_tau_with(&element(e)?, &scalar("tau", &tau.tau)?);
            out.push(Record::Element { name: String::new(), value: d.to_string() });
        }
        Command::DerivationCheck { a, b, tau } => {
            let (a, b, tau) = (element(a)?, element(b)?, scalar("tau", &tau.tau)?);
            let d = |x: &NCElement| delta_tau_with(x, &tau);
            let residual = &(&d(&nc_mul(&a, &b)) - &nc_mul(&d(&a), &b)) - &nc_mul(&a, &d(&b));
            out.push(Record::Element { name: "residual".into(), value: residual.to_string() });
            out.push(check("derivation", residual.is_zero()));
            out.push(check("trace(ab) = trace(ba)", nc_trace(&nc_mul(&a, &b)) == nc_trace(&nc_mul(&b, &a))));
        }
        Command::LeibnizCheck { section, element: e, z, tau } => {
            let file: SectionFile = read_json(section)?;
            let (ch, f) = file.decode().map_err(|err| input_error(format!("{}: {err}", section.display())))?;
            let a = element(e)?;
            let r = leibniz_check_with(&f, &a, &ch, &scalar("z", z)?, &scalar("tau", &tau.tau)?)?;
            out.push(Record::Section { name: "residual".into(), section: SectionFile::new(&r, &ch) });
            out.push(check("Leibniz", r.is_zero()));
        }
        Command::Lift { input } => {
            let file: LiftFile = read_json(input)?;
            let at = |e: Error| input_error(format!("{}: {e}", input.display()));
            let f = matrix_from_text(&file.f, "F").map_err(at)?;
            let s = matrix_from_text(&file.s, "S").map_err(at)?;
            let b2 = matrix_from_text(&file.b2, "B2").map_err(at)?;
            let b1 = lift_connection(&f, &s, &b2)?;
            let lhs = f.mul(&b1)?;
            let rhs = f.delta().add(&b2.mul(&f)?)?;
            out.push(Record::Matrix { name: "B1".into(), rows: matrix_to_text(&b1) });
            out.push(check("F·B1 = delta(F) + B2·F", lhs == rhs));
        }
        Command::HeartSplit { theta: t, object: path } => {
            let (theta, x) = (theta(t)?, object(path)?);
            let r = splitting_check(&x, &theta);
            out.push(Record::Object { name: "X0".into(), summands: summands(&r.x0) });
            out.push(Record::Object { name: "X1".into(), summands: summands(&r.x1) });
            for (name, (rk, dg)) in [("X", r.k0), ("X0", r.k0_x0), ("X1", r.k0_x1)] {
                out.push(Record::K0 { name: name.into(), r: rk, d: dg });
            }
            out.push(check("X = X0 + X1 with X0 in D<=0, X1 in D>=1", r.partition));
            out.push(check("[X] = [X0] + [X1]", r.holds));
        }
        Command::K0 { object: path } => {
            let (r, d) = k0_class(&object(path)?);
            out.push(Record::K0 { name: "X".into(), r, d });
        }
        Command::AdjunctionCheck { theta: t, object: xp, target: yp, n } => {
            let (theta, x, y) = (theta(t)?, object(xp)?, object(yp)?);
            let r = truncation_adjunction_check(&x, &y, *n, &theta)?;
            out.push(Record::Hom { name: format!("Hom(X, tau<={n} Y)"), dim: r.hom_to_truncation });
            out.push(Record::Hom { name: "Hom(X, Y)".into(), dim: r.hom_to_object });
            out.push(check("adjunction", r.holds));
        }
        Command::AxiomReport { theta: t, object: xp, target: yp } => {
            let (theta, x, y) = (theta(t)?, object(xp)?, object(yp)?);
            let (x0, x1) = truncate(&x, &theta);
            let (_, y1) = truncate(&y, &theta);
            out.push(Record::Object { name: "tau<=0 X".into(), summands: summands(&x0) });
            out.push(Record::Object { name: "tau>=1 Y".into(), summands: summands(&y1) });
            out.push(check("D<=0[1] in D<=0", in_le0(&x0.shift(1), &theta)));
            out.push(check("D>=1[-1] in D>=1", in_ge1(&x1.shift(-1), &theta)));
            let hom = hom_dim(&x0, &y1, 0);
            out.push(Record::Hom { name: "Hom(tau<=0 X, tau>=1 Y)".into(), dim: hom });
            out.push(Record::Hom { name: "Hom(tau<=0 X, (tau>=1 Y)[1])".into(), dim: hom_dim(&x0, &y1, 1) });
            out.push(check("Hom(D<=0, D>=1) = 0", hom == 0));
            let split = x0.direct_sum(&x1) == x;
            out.push(check("X = tau<=0 X + tau>=1 X", split));
        }
        Command::Hh { input, size } => {
            let src = load(input)?;
            let r = hh(src.source(), size.max_degree, size.budget)?;
            out.push(Record::Dims { invariant: "HH".into(), dims: r.dims });
        }
        Command::Hc { input, size } => {
            let src = load(input)?;
            let r = hc(src.source(), size.max_degree, size.budget)?;
            out.push(Record::Dims { invariant: "HC".into(), dims: r.dims });
        }
        Command::Hp { input, max_degree, budget } => {
            let src = load(input)?;
            let r = hp(src.source(), *max_degree, *budget)?;
            out.push(Record::Dims { invariant: "HC".into(), dims: r.hc.clone() });
            out.push(Record::Periodic { window: r.window, even: r.even, odd: r.odd });
        }
        Command::MoritaCheck { input, n, size } => {
            let Loaded::Algebra(a) = load(input)? else {
                return Err(input_error("morita-check needs an algebra".into()));
            };
            let r = morita_check(&a, *n, size.max_degree, size.budget)?;
            out.push(Record::Dims { invariant: "HH(A)".into(), dims: r.hh_a });
            out.push(Record::Dims { invariant: format!("HH(M{n}(A))"), dims: r.hh_matrix });
            out.push(Record::Dims { invariant: "HC(A)".into(), dims: r.hc_a });
            out.push(Record::Dims { invariant: format!("HC(M{n}(A))"), dims: r.hc_matrix });
            out.push(check("Morita invariance", r.equal));
        }
        Command::Selftest { seed, only } => {
            let ids: Vec<u8> = if only.is_empty() {
                nctorus_verify::CRITERIA.iter().map(|(id, _)| *id).collect()
            } else {
                only.clone()
            };
            for id in ids {
                let r = nctorus_verify::run(id, *seed)
                    .ok_or_else(|| input_error(format!("no suite numbered {id}")))?;
                out.push(Record::Suite { id: r.id, name: r.name, passed: r.passed, checks: r.checks, detail: r.detail });
            }
        }
    }
    Ok(out)
}

/// Exit status for a finished command: 1 if any contract failed.
pub fn status(records: &[Record]) -> i32 {
    let failed = records.iter().any(|r| {
        matches!(r, Record::Check { holds: false, .. } | Record::Suite { passed: false, .. })
    });
    i32::from(failed)
}

pub fn render(format: Format, command: &str, records: &[Record], out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Human => {
            for r in records {
                writeln!(out, "{}", r.human())?;
            }
        }
        Format::Records => {
            writeln!(out, "{}", serde_json::to_string(&Record::header(command)).expect("records serialize"))?;
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r).expect("records serialize"))?;
            }
        }
    }
    Ok(())
}

/// Runs a parsed command line, writing results to `out` and diagnostics to
/// `err`; returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let name = command_name(&cli.command);
    match execute(&cli.command) {
        Ok(records) => match render(cli.format, name, &records, out) {
            Ok(()) => status(&records),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                2
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}
