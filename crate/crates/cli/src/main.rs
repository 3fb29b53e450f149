use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use energized::calculus::{cartesian_product, disjoint_union, verify_tensor_representation, Energized};
use energized::energize::{build_bundle, canonical, Energy, EnergySpec, Scalar, Which};
use energized::exact::{parse_rational, Matrix, RealScalar};
use energized::graphs::multigraphs_with_energy;
use energized::io::{parse_system, system_to_json, SystemFile};
use energized::param::{
    build_param_with, deform_throttled, deformation, eval_list, eval_param, verify_deformation, verify_green_star,
    verify_param_det, verify_param_energy, LtForm, Side,
};
use energized::report::{Check, Report};
use energized::setsys::{
    complete_complex, cycle_complex, decorated_path, downward_closure, grid_whitney, random_sets,
};
use energized::spectra::{
    eig1_multiplicity, eig_sym, ihara_zeta, quadratic_form_values, spectral_zeta, theta_truncated,
};
use energized::verify::{run_suite, Suite};
use energized::Error;

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_NOINPUT: u8 = 66;

/// Energized sets of sets: connection matrices and their identities.
#[derive(Parser)]
#[command(name = "energized", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a set-system JSON file.
    Generate(GenerateArgs),
    /// Emit one connection matrix.
    Matrices {
        file: PathBuf,
        #[arg(long)]
        energy: Option<String>,
        #[arg(long, value_enum, default_value = "mm")]
        which: WhichArg,
        #[arg(long, value_enum, default_value = "json")]
        format: MatrixFormat,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        file: PathBuf,
        #[arg(long)]
        energy: Option<String>,
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Spectral quantities of a connection matrix.
    Spectra(SpectraArgs),
    /// Export the multigraph of `L--` or `L++`.
    Multigraph {
        file: PathBuf,
        #[arg(long)]
        energy: Option<String>,
        #[arg(long, value_enum, default_value = "mm")]
        which: GraphSide,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
    /// The parameter energy `-t^|x|` and the two-parameter deformation.
    Param(ParamArgs),
    /// Disjoint union and Cartesian product of energized systems.
    Ring(RingArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long, value_name = "N")]
    complete: Option<u32>,
    #[arg(long, value_name = "N")]
    cycle: Option<u32>,
    #[arg(long, num_args = 2, value_names = ["W", "H"])]
    grid: Option<Vec<u32>>,
    #[arg(long, value_name = "FILE")]
    closure: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    random: Option<Vec<u32>>,
    /// Pendant-edge pattern such as 0110.
    #[arg(long, value_name = "BITS")]
    decorated: Option<String>,
}

#[derive(Args)]
struct SpectraArgs {
    file: PathBuf,
    #[arg(long)]
    energy: Option<String>,
    #[arg(long, value_enum, default_value = "mm")]
    which: WhichArg,
    #[command(flatten)]
    query: SpectraQuery,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpectraQuery {
    #[arg(long)]
    eigs: bool,
    #[arg(long)]
    charpoly: bool,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    zeta: Option<Vec<f64>>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    ihara: Option<Vec<f64>>,
    #[arg(long, num_args = 3, value_names = ["RE", "IM", "M"], allow_negative_numbers = true)]
    theta: Option<Vec<f64>>,
    #[arg(long)]
    eig1mult: bool,
    #[arg(long, num_args = 2, value_names = ["CB", "VB"])]
    qform: Option<Vec<u64>>,
}

#[derive(Args)]
struct ParamArgs {
    file: PathBuf,
    #[command(flatten)]
    mode: ParamMode,
    /// Use `t^{-dim(x∩y)}(1 - f)` for `L_t` instead of `1 - f/t^|x∩y|`.
    #[arg(long)]
    text_form: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ParamMode {
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    deform: bool,
    #[arg(long, value_name = "T", allow_negative_numbers = true)]
    eval: Option<String>,
}

#[derive(Args)]
struct RingArgs {
    #[command(flatten)]
    op: RingOp,
    #[arg(long, requires = "product")]
    verify_tensor: bool,
    /// Energy for both operands, overriding their files.
    #[arg(long)]
    energy: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct RingOp {
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    union: Option<Vec<PathBuf>>,
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    product: Option<Vec<PathBuf>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    Mm,
    Pp,
    Pm,
    Mp,
    G,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Which {
        match w {
            WhichArg::Mm => Which::Mm,
            WhichArg::Pp => Which::Pp,
            WhichArg::Pm => Which::Pm,
            WhichArg::Mp => Which::Mp,
            WhichArg::G => Which::G,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphSide {
    Mm,
    Pp,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

enum Failure {
    Usage(String),
    NoInput(String),
    Data(Error),
    Lib(Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EX_USAGE,
            Failure::NoInput(_) => EX_NOINPUT,
            Failure::Data(_) => EX_DATAERR,
            Failure::Lib(Error::PreconditionViolation(_)) => 3,
            Failure::Lib(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::NoInput(m) => f.write_str(m),
            Failure::Data(e) | Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EX_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("energized: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command) -> Out {
    match cmd {
        Command::Generate(a) => generate(a),
        Command::Matrices {
            file,
            energy,
            which,
            format,
        } => matrices(&file, energy.as_deref(), which.into(), format),
        Command::Verify { file, energy, suite } => verify(&file, energy.as_deref(), &suite),
        Command::Spectra(a) => spectra(a),
        Command::Multigraph {
            file,
            energy,
            which,
            format,
        } => multigraph(&file, energy.as_deref(), which, format),
        Command::Param(a) => param(a),
        Command::Ring(a) => ring(a),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::NoInput(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn load(path: &Path) -> Result<SystemFile, Failure> {
    parse_system(&read_input(path)?).map_err(Failure::Data)
}

/// The `--energy` flag wins over the file's energy block; the default is 1.
fn energy_of(file: &SystemFile, flag: Option<&str>) -> Result<Energy, Failure> {
    let spec = match flag {
        Some(s) => EnergySpec::parse(s).map_err(|e| Failure::Usage(e.to_string()))?,
        None => file.energy.clone().unwrap_or(EnergySpec::parse("constant:1").expect("valid spec")),
    };
    spec.load()
        .map_err(|e| Failure::NoInput(e.to_string()))?
        .resolve(&file.system)
        .map_err(Failure::Data)
}

/// Writes to stdout; a closed pipe downstream is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

fn report_json(report: &Report, extra: Value) -> Value {
    let mut v = json!({
        "exit": report.exit_code(),
        "checks": serde_json::to_value(&report.checks).expect("serializable"),
    });
    if let Value::Object(m) = extra {
        for (k, x) in m {
            v[k] = x;
        }
    }
    v
}

macro_rules! with_scalar {
    ($energy:expr, $h:ident => $body:expr) => {
        match $energy {
            Energy::Int($h) => $body,
            Energy::Rat($h) => $body,
            Energy::Laurent($h) => $body,
        }
    };
}

macro_rules! with_real {
    ($energy:expr, $h:ident => $body:expr) => {
        match $energy {
            Energy::Int($h) => $body,
            Energy::Rat($h) => $body,
            Energy::Laurent(_) => Err(Failure::Usage("this query needs a numeric energy".into())),
        }
    };
}

fn generate(a: GenerateArgs) -> Out {
    let bad = |e: Error| Failure::Usage(e.to_string());
    let s = a.source;
    let sys = if let Some(n) = s.complete {
        complete_complex(n).map_err(bad)?
    } else if let Some(n) = s.cycle {
        cycle_complex(n).map_err(bad)?
    } else if let Some(g) = s.grid {
        grid_whitney(g[0], g[1]).map_err(bad)?
    } else if let Some(path) = s.closure {
        downward_closure(load(&path)?.system.cells())?
    } else if let Some(r) = s.random {
        random_sets(r[0], r[1] as usize, a.seed).map_err(bad)?
    } else if let Some(bits) = s.decorated {
        let bits = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Failure::Usage(format!("decorated bits must be 0 or 1, got {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        decorated_path(&bits).map_err(bad)?
    } else {
        unreachable!("clap requires one source")
    };
    print_json(&system_to_json(&sys, None));
    Ok(0)
}

fn matrix_text<R: Scalar>(m: &Matrix<R>, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Json => serde_json::to_string_pretty(&m.to_json()).expect("serializable") + "\n",
        MatrixFormat::Csv => m.to_csv(),
    }
}

fn matrices(path: &Path, energy: Option<&str>, which: Which, format: MatrixFormat) -> Out {
    let file = load(path)?;
    let e = energy_of(&file, energy)?;
    let text = with_scalar!(&e, h => matrix_text(build_bundle(&file.system, h)?.matrix(which), format));
    emit(&text);
    Ok(0)
}

fn verify(path: &Path, energy: Option<&str>, suite: &str) -> Out {
    let suite: Suite = suite.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let file = load(path)?;
    let e = energy_of(&file, energy)?;
    let report = run_suite(&file.system, &e, suite)?;
    print_json(&report_json(
        &report,
        json!({"suite": suite.name(), "cells": file.system.len(), "ring": e.ring()}),
    ));
    Ok(report.exit_code() as u8)
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn spectra_of<R: Scalar + RealScalar>(m: &Matrix<R>, q: &SpectraQuery) -> Result<Value, Failure> {
    let s = |v: &[f64]| Complex64::new(v[0], v[1]);
    let sorted = || -> Result<Vec<f64>, Failure> {
        let mut eigs = eig_sym(m)?.eigenvalues;
        eigs.sort_by(f64::total_cmp);
        Ok(eigs)
    };
    Ok(if q.eigs {
        json!(sorted()?)
    } else if q.charpoly {
        json!(m.charpoly().iter().map(ToString::to_string).collect::<Vec<_>>())
    } else if let Some(v) = &q.zeta {
        pair(spectral_zeta(&sorted()?, s(v))?)
    } else if let Some(v) = &q.ihara {
        pair(ihara_zeta(&m.charpoly(), s(v))?)
    } else if let Some(v) = &q.theta {
        if v[2] < 0.0 || v[2].fract() != 0.0 {
            return Err(Failure::Usage("theta box size must be a non-negative integer".into()));
        }
        pair(theta_truncated(m, s(v), v[2] as u32)?)
    } else {
        unreachable!("handled by the caller")
    })
}

fn spectra(a: SpectraArgs) -> Out {
    let file = load(&a.file)?;
    let q = &a.query;
    if q.eig1mult {
        print_json(&json!(eig1_multiplicity(&file.system)?));
        return Ok(0);
    }
    let e = energy_of(&file, a.energy.as_deref())?;
    let which: Which = a.which.into();
    if let Some(b) = &q.qform {
        let Energy::Int(h) = &e else {
            return Err(Failure::Usage("--qform needs integer energy".into()));
        };
        let values = quadratic_form_values(build_bundle(&file.system, h)?.matrix(which), b[0] as u32, b[1])?;
        print_json(&json!(values));
        return Ok(0);
    }
    let v = with_real!(&e, h => spectra_of(build_bundle(&file.system, h)?.matrix(which), q))?;
    print_json(&v);
    Ok(0)
}

fn multigraph(path: &Path, energy: Option<&str>, which: GraphSide, format: GraphFormat) -> Out {
    let file = load(path)?;
    let Energy::Int(h) = energy_of(&file, energy)? else {
        return Err(Failure::Usage("multigraphs need integer energy".into()));
    };
    let (sys, h) = canonical(&file.system, &h);
    let (mm, pp) = multigraphs_with_energy(&sys, &h)?;
    let g = match which {
        GraphSide::Mm => mm,
        GraphSide::Pp => pp,
    };
    match format {
        GraphFormat::Dot => emit(&g.to_dot("G")),
        GraphFormat::Json => print_json(&g.to_json()),
    }
    Ok(0)
}

fn param(a: ParamArgs) -> Out {
    let file = load(&a.file)?;
    let sys = &file.system;
    let form = if a.text_form { LtForm::Text } else { LtForm::Code };
    if a.mode.verify {
        let mut report = Report::new();
        if sys.is_simplicial() {
            report.extend(verify_green_star(sys)?);
            report.extend(verify_param_energy(sys)?);
            report.extend(verify_param_det(sys)?);
        } else {
            report.push(Check::not_applicable("param", "-", "the parameter energy needs a simplicial complex"));
        }
        report.extend(verify_deformation(sys)?);
        print_json(&report_json(&report, json!({"cells": sys.len()})));
        return Ok(report.exit_code() as u8);
    }
    if a.mode.deform {
        let d = deformation(sys)?;
        let strs = |v: Vec<_>| v.iter().map(ToString::to_string).collect::<Vec<String>>();
        print_json(&json!({
            "mm": deform_throttled(sys, Side::Mm)?.to_json(),
            "pp": deform_throttled(sys, Side::Pp)?.to_json(),
            "p": d.p.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "q": d.q.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "p11": strs(eval_list(&d.p, 1, 1)),
            "p00": strs(eval_list(&d.p, 0, 0)),
        }));
        return Ok(0);
    }
    let raw = a.mode.eval.expect("clap requires one mode");
    let t = parse_rational(&Value::String(raw.clone())).map_err(|e| Failure::Usage(e.to_string()))?;
    let p = build_param_with(sys, form)?;
    let (g, l) = eval_param(&p, &t)?;
    let mut eigs = eig_sym(&g)?.eigenvalues;
    eigs.sort_by(f64::total_cmp);
    print_json(&json!({
        "t": t.to_string(),
        "g": g.to_json(),
        "L": l.to_json(),
        "energy": g.sum_entries().to_string(),
        "eigenvalues_g": eigs,
    }));
    Ok(0)
}

fn energized_operand(path: &Path, flag: Option<&str>) -> Result<Energized<num_rational::BigRational>, Failure> {
    let file = load(path)?;
    let e = energy_of(&file, flag)?;
    let h = e
        .as_rationals()
        .ok_or_else(|| Failure::Usage("ring operations need numeric energy".into()))?;
    Ok(Energized::new(file.system, h)?)
}

fn ring(a: RingArgs) -> Out {
    let flag = a.energy.as_deref();
    let (paths, product) = match (&a.op.union, &a.op.product) {
        (Some(p), _) => (p, false),
        (_, Some(p)) => (p, true),
        _ => unreachable!("clap requires one operation"),
    };
    let x = energized_operand(&paths[0], flag)?;
    let y = energized_operand(&paths[1], flag)?;
    let r = if product { cartesian_product(&x, &y)? } else { disjoint_union(&x, &y)? };
    let out = system_to_json(&r.system, Some(&EnergySpec::Explicit(r.h.clone())));
    if a.verify_tensor {
        let report = verify_tensor_representation(&x, &y)?;
        print_json(&report_json(&report, json!({"product": out})));
        return Ok(report.exit_code() as u8);
    }
    print_json(&out);
    Ok(0)
}
