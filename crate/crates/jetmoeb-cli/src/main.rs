//! Command-line front end for jetmoeb-core: JSON documents in, one JSON
//! document out, suitable for scripting.
//!
//! Every subcommand reads its input from a positional file argument ("-"
//! for standard input), runs one library operation, and prints the result
//! on standard output. Exit codes: 0 on success, 2 on a domain error (the
//! library rejected semantically invalid data; the error name is printed
//! as JSON on standard output), 1 on malformed input (bad JSON, bad flag
//! values, unreadable files; the message goes to standard error).

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use jetmoeb_core::branching::{
    act_on_branched, class_of, diff_classes, divisor_diff, divisor_translate, normal_form,
    translate_class, BranchedJet, BranchingClass, BranchingError, ClassDelta, DiffMode,
    DivisorClassData, DivisorDelta, OneFormDelta, QuadDiffDelta,
};
use jetmoeb_core::fuchs::{
    obstruction_polynomial, obstruction_value, solve_schwarzian, FuchsError, QuadDiffLaurent,
};
use jetmoeb_core::moebius::{Moebius, PointCP1};
use jetmoeb_core::series::{to_c64, Coefficient, ComplexExact, C64};
use jetmoeb_core::verify::{run_all, run_suite, SUITE_NAMES};

#[derive(Parser)]
#[command(name = "jetmoeb", version, about = "Jets of holomorphic maps under the Moebius group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Branching class of a branched jet.
    Class(InputArgs),
    /// Canonical branched-jet representative of a branching class.
    NormalForm(InputArgs),
    /// Moebius action on a branched jet.
    Act(InputArgs),
    /// Difference of two classes, or of two divisor data sets, as a delta.
    Diff(InputArgs),
    /// Translation of a class or divisor data set by a delta.
    Translate(InputArgs),
    /// Branched solution of the Schwarzian equation S(f) = phi.
    Solve(SolveArgs),
    /// Obstruction value of candidate Schwarzian data.
    Obstruction(InputArgs),
    /// The obstruction polynomial P_n in monomial form.
    ObstructionPoly(PolyArgs),
    /// Seeded deterministic property suites over the library.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    /// Exact complex rationals; scalars are strings like "3/2" or
    /// {"re": "1/2", "im": "-2"}.
    Exact,
    /// Double-precision complex floats; scalars are {"re": 1.5, "im": 0.0}.
    Float,
}

#[derive(Args)]
struct InputArgs {
    /// Input JSON document; "-" reads standard input.
    #[arg(default_value = "-")]
    input: String,
    /// Scalar arithmetic backend.
    #[arg(long, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    common: InputArgs,
    /// Free parameter delta_n as a complex rational literal such as "0",
    /// "3/2", or "1/2-3/4i".
    #[arg(long = "delta-n", default_value = "0")]
    delta_n: String,
}

#[derive(Args)]
struct PolyArgs {
    /// Branch order n.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run: one of the module names, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Seed of the deterministic generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Truncation order of the generated jets.
    #[arg(long, default_value_t = 8)]
    order: usize,
    /// Scalar arithmetic backend.
    #[arg(long, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
}

/// Failure of a subcommand, split by exit code.
enum CliError {
    /// Exit 1: the input never reached the library.
    Malformed(String),
    /// Exit 2: the library rejected the data; the payload is the complete
    /// JSON error document.
    Domain(String),
}

#[derive(Serialize)]
struct ErrorOut<'a> {
    error: &'a str,
    detail: String,
}

fn domain_error(name: &str, detail: String) -> CliError {
    CliError::Domain(
        serde_json::to_string(&ErrorOut {
            error: name,
            detail,
        })
        .expect("error documents serialize"),
    )
}

impl From<BranchingError> for CliError {
    fn from(e: BranchingError) -> Self {
        domain_error(e.error_name(), e.to_string())
    }
}

impl From<FuchsError> for CliError {
    fn from(e: FuchsError) -> Self {
        domain_error(e.error_name(), e.to_string())
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("library types serialize")
}

fn parse<'a, T: Deserialize<'a>>(input: &'a str) -> Result<T, CliError> {
    serde_json::from_str(input).map_err(|e| CliError::Malformed(format!("invalid input: {e}")))
}

// Raw input mirrors. Parsing validates only JSON structure; the semantic
// invariants are checked by the library constructors so that violations
// surface as domain errors, not parse errors.

#[derive(Deserialize)]
#[serde(bound(deserialize = ""))]
struct JetIn<C: Coefficient> {
    n: usize,
    value: PointCP1<C>,
    a: Vec<C>,
}

impl<C: Coefficient> JetIn<C> {
    fn build(self) -> Result<BranchedJet<C>, CliError> {
        Ok(BranchedJet::new(self.n, self.value, self.a)?)
    }
}

#[derive(Deserialize)]
#[serde(bound(deserialize = ""))]
struct ClassIn<C: Coefficient> {
    n: usize,
    c: Vec<C>,
}

impl<C: Coefficient> ClassIn<C> {
    fn build(self) -> Result<BranchingClass<C>, CliError> {
        Ok(BranchingClass::new(self.n, self.c)?)
    }
}

#[derive(Deserialize)]
#[serde(bound(deserialize = ""))]
struct ActIn<C: Coefficient> {
    moebius: Moebius<C>,
    jet: JetIn<C>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = ""))]
struct DeltaIn<C: Coefficient> {
    n: usize,
    #[serde(default)]
    eta: Option<Vec<C>>,
    #[serde(default)]
    beta: Option<Vec<C>>,
}

impl<C: Coefficient> DeltaIn<C> {
    fn build(self) -> Result<ClassDelta<C>, CliError> {
        let delta = match (self.eta, self.beta) {
            (Some(eta), None) => ClassDelta::OneForm(OneFormDelta { n: self.n, eta }),
            (None, Some(beta)) => ClassDelta::QuadDiff(QuadDiffDelta { n: self.n, beta }),
            _ => {
                return Err(CliError::Malformed(
                    "a delta must carry exactly one of \"eta\" or \"beta\"".to_string(),
                ))
            }
        };
        if delta.n() == 0 || delta.components().len() != delta.n() {
            return Err(BranchingError::OrderMismatch.into());
        }
        Ok(delta)
    }
}

#[derive(Deserialize)]
#[serde(bound(deserialize = ""))]
struct DivisorPointIn<C: Coefficient> {
    label: String,
    n: usize,
    class: Vec<C>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = ""))]
struct DivisorIn<C: Coefficient> {
    points: Vec<DivisorPointIn<C>>,
}

impl<C: Coefficient> DivisorIn<C> {
    fn build(self) -> Result<DivisorClassData<C>, CliError> {
        let points = self
            .points
            .into_iter()
            .map(|p| Ok((p.label, BranchingClass::new(p.n, p.class)?)))
            .collect::<Result<Vec<_>, BranchingError>>()?;
        Ok(DivisorClassData::new(points)?)
    }
}

#[derive(Deserialize)]
#[serde(bound(deserialize = ""))]
struct DivisorDeltaPointIn<C: Coefficient> {
    label: String,
    #[serde(flatten)]
    delta: DeltaIn<C>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = ""))]
struct DivisorDeltaIn<C: Coefficient> {
    points: Vec<DivisorDeltaPointIn<C>>,
}

impl<C: Coefficient> DivisorDeltaIn<C> {
    fn build(self) -> Result<DivisorDelta<C>, CliError> {
        let points = self
            .points
            .into_iter()
            .map(|p| Ok((p.label, p.delta.build()?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(DivisorDelta::new(points)?)
    }
}

#[derive(Deserialize)]
#[serde(bound(deserialize = ""), untagged)]
enum OperandIn<C: Coefficient> {
    Class(ClassIn<C>),
    Divisor(DivisorIn<C>),
}

#[derive(Deserialize)]
#[serde(bound(deserialize = ""))]
struct DiffIn<C: Coefficient> {
    mode: DiffMode,
    to: OperandIn<C>,
    from: OperandIn<C>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = ""), untagged)]
enum TranslateIn<C: Coefficient> {
    Class {
        class: ClassIn<C>,
        delta: DeltaIn<C>,
    },
    Divisor {
        divisor: DivisorIn<C>,
        delta: DivisorDeltaIn<C>,
    },
}

#[derive(Serialize)]
#[serde(bound(serialize = ""))]
struct ValueOut<C: Coefficient> {
    value: C,
}

// Subcommand bodies, generic over the scalar backend.

fn run_class<C: Coefficient>(input: &str) -> Result<String, CliError> {
    let jet = parse::<JetIn<C>>(input)?.build()?;
    Ok(to_json(&class_of(&jet)))
}

fn run_normal_form<C: Coefficient>(input: &str) -> Result<String, CliError> {
    let class = parse::<ClassIn<C>>(input)?.build()?;
    Ok(to_json(&normal_form(&class)))
}

fn run_act<C: Coefficient>(input: &str) -> Result<String, CliError> {
    let raw: ActIn<C> = parse(input)?;
    let jet = raw.jet.build()?;
    Ok(to_json(&act_on_branched(&raw.moebius, &jet)?))
}

fn run_diff<C: Coefficient>(input: &str) -> Result<String, CliError> {
    let raw: DiffIn<C> = parse(input)?;
    match (raw.to, raw.from) {
        (OperandIn::Class(to), OperandIn::Class(from)) => Ok(to_json(&diff_classes(
            &to.build()?,
            &from.build()?,
            raw.mode,
        )?)),
        (OperandIn::Divisor(to), OperandIn::Divisor(from)) => Ok(to_json(&divisor_diff(
            &to.build()?,
            &from.build()?,
            raw.mode,
        )?)),
        _ => Err(BranchingError::DivisorMismatch.into()),
    }
}

fn run_translate<C: Coefficient>(input: &str) -> Result<String, CliError> {
    match parse::<TranslateIn<C>>(input)? {
        TranslateIn::Class { class, delta } => Ok(to_json(&translate_class(
            &class.build()?,
            &delta.build()?,
        )?)),
        TranslateIn::Divisor { divisor, delta } => Ok(to_json(&divisor_translate(
            &divisor.build()?,
            &delta.build()?,
        )?)),
    }
}

fn run_solve<C: Coefficient>(input: &str, delta_n: C) -> Result<String, CliError> {
    let phi: QuadDiffLaurent<C> = parse(input)?;
    Ok(to_json(&solve_schwarzian(&phi, delta_n)?))
}

fn run_obstruction<C: Coefficient>(input: &str) -> Result<String, CliError> {
    let phi: QuadDiffLaurent<C> = parse(input)?;
    let value = obstruction_value(&phi)?;
    Ok(to_json(&ValueOut { value }))
}

fn run_obstruction_poly(n: usize) -> Result<String, CliError> {
    Ok(to_json(&obstruction_polynomial(n)?))
}

#[derive(Serialize)]
struct VerifyFailureOut {
    error: &'static str,
    suites: Vec<jetmoeb_core::verify::SuiteReport>,
}

fn run_verify<C: Coefficient>(suite: &str, seed: u64, order: usize) -> Result<String, CliError> {
    let reports = if suite == "all" {
        run_all::<C>(seed, order)
    } else {
        vec![run_suite::<C>(suite, seed, order).ok_or_else(|| {
            CliError::Malformed(format!(
                "unknown suite `{suite}`; expected one of {} or \"all\"",
                SUITE_NAMES.join(", ")
            ))
        })?]
    };
    if reports.iter().any(|r| r.failures > 0) {
        Err(CliError::Domain(to_json(&VerifyFailureOut {
            error: "VerificationFailed",
            suites: reports,
        })))
    } else {
        Ok(to_json(&reports))
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Malformed(format!("cannot read standard input: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Malformed(format!("cannot read {path}: {e}")))
    }
}

fn parse_delta_n(s: &str) -> Result<ComplexExact, CliError> {
    ComplexExact::parse(s).map_err(|e| CliError::Malformed(format!("invalid --delta-n: {e}")))
}

/// Runs one backend-generic body on the backend the flags selected.
macro_rules! with_backend {
    ($backend:expr, $runner:ident ( $($arg:expr),* )) => {
        match $backend {
            Backend::Exact => $runner::<ComplexExact>($($arg),*),
            Backend::Float => $runner::<C64>($($arg),*),
        }
    };
}

fn dispatch(command: Command) -> Result<String, CliError> {
    match command {
        Command::Class(args) => {
            let input = read_input(&args.input)?;
            with_backend!(args.backend, run_class(&input))
        }
        Command::NormalForm(args) => {
            let input = read_input(&args.input)?;
            with_backend!(args.backend, run_normal_form(&input))
        }
        Command::Act(args) => {
            let input = read_input(&args.input)?;
            with_backend!(args.backend, run_act(&input))
        }
        Command::Diff(args) => {
            let input = read_input(&args.input)?;
            with_backend!(args.backend, run_diff(&input))
        }
        Command::Translate(args) => {
            let input = read_input(&args.input)?;
            with_backend!(args.backend, run_translate(&input))
        }
        Command::Solve(args) => {
            let input = read_input(&args.common.input)?;
            let delta_n = parse_delta_n(&args.delta_n)?;
            match args.common.backend {
                Backend::Exact => run_solve::<ComplexExact>(&input, delta_n),
                Backend::Float => run_solve::<C64>(&input, to_c64(&delta_n)),
            }
        }
        Command::Obstruction(args) => {
            let input = read_input(&args.input)?;
            with_backend!(args.backend, run_obstruction(&input))
        }
        Command::ObstructionPoly(args) => run_obstruction_poly(args.n),
        Command::Verify(args) => {
            with_backend!(args.backend, run_verify(&args.suite, args.seed, args.order))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match dispatch(cli.command) {
        Ok(json) => {
            println!("{json}");
            ExitCode::SUCCESS
        }
        Err(CliError::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(json)) => {
            println!("{json}");
            ExitCode::from(2)
        }
    }
}
