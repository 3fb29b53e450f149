//! Energy functions on set systems, the connection matrices they induce, and
//! the exact identities relating them.

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Determinant, EntryCodec, ExactDiv, Laurent, Matrix, Ring};
use crate::report::{Check, Report, Status};
use crate::setsys::SetSystem;

/// Ring bound shared by the verification routines.
pub trait Scalar: Ring + Determinant + ExactDiv + EntryCodec {}

impl<R: Ring + Determinant + ExactDiv + EntryCodec> Scalar for R {}

/// How per-cell energies are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum EnergySpec {
    Constant(BigRational),
    Omega,
    Spin(Vec<i8>),
    Explicit(Vec<BigRational>),
    /// Values still to be read from a file.
    ExplicitFile(PathBuf),
    /// `h(x) = -t^|x|`, so that `E[A] = 1 - f_A(t)`.
    Param,
}

impl EnergySpec {
    /// Parses `constant:c`, `omega`, `spin:+-+`, `explicit:path` or `param`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        match (kind, arg) {
            ("constant", Some(c)) => Ok(EnergySpec::Constant(parse_rational(&Value::String(c.into()))?)),
            ("constant", None) => Ok(EnergySpec::Constant(BigRational::one())),
            ("omega", None) => Ok(EnergySpec::Omega),
            ("spin", Some(signs)) => signs
                .chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    other => Err(Error::Parse(format!("spin signs must be + or -, got {other:?}"))),
                })
                .collect::<Result<Vec<i8>>>()
                .map(EnergySpec::Spin),
            ("explicit", Some(path)) if !path.is_empty() => Ok(EnergySpec::ExplicitFile(PathBuf::from(path))),
            ("param", None) => Ok(EnergySpec::Param),
            _ => Err(Error::Parse(format!("unrecognized energy spec {s:?}"))),
        }
    }

    /// Reads the `{"kind": ..., "values": [...]}` block.
    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("energy block needs \"kind\"".into()))?;
        let values = || -> Result<Vec<BigRational>> {
            v.get("values")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("energy kind {kind:?} needs \"values\"")))?
                .iter()
                .map(parse_rational)
                .collect()
        };
        match kind {
            "constant" => match v.get("values") {
                None => Ok(EnergySpec::Constant(BigRational::one())),
                Some(_) => {
                    let vals = values()?;
                    match vals.as_slice() {
                        [c] => Ok(EnergySpec::Constant(c.clone())),
                        _ => Err(Error::Parse("constant energy takes exactly one value".into())),
                    }
                }
            },
            "omega" => Ok(EnergySpec::Omega),
            "spin" => values()?
                .into_iter()
                .map(|r| {
                    if r == BigRational::one() {
                        Ok(1)
                    } else if r == -BigRational::one() {
                        Ok(-1)
                    } else {
                        Err(Error::InvalidInput(format!("spin value {r} is not +1 or -1")))
                    }
                })
                .collect::<Result<Vec<i8>>>()
                .map(EnergySpec::Spin),
            "explicit" => Ok(EnergySpec::Explicit(values()?)),
            "param" => Ok(EnergySpec::Param),
            other => Err(Error::Parse(format!("unknown energy kind {other:?}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        let strs = |v: &[BigRational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>();
        match self {
            EnergySpec::Constant(c) => json!({"kind": "constant", "values": [c.to_string()]}),
            EnergySpec::Omega => json!({"kind": "omega"}),
            EnergySpec::Spin(s) => json!({"kind": "spin", "values": s}),
            EnergySpec::Explicit(v) => json!({"kind": "explicit", "values": strs(v)}),
            EnergySpec::ExplicitFile(p) => json!({"kind": "explicit", "file": p.display().to_string()}),
            EnergySpec::Param => json!({"kind": "param"}),
        }
    }

    /// Replaces an [`EnergySpec::ExplicitFile`] with its values. The file holds a
    /// JSON array, a `{"values": [...]}` object, or a system file with an energy block.
    pub fn load(self) -> Result<Self> {
        let EnergySpec::ExplicitFile(path) = self else {
            return Ok(self);
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        let arr = match &v {
            Value::Array(a) => a.clone(),
            _ => match v.get("values").or_else(|| v.get("energy").and_then(|e| e.get("values"))) {
                Some(Value::Array(a)) => a.clone(),
                _ => return Err(Error::Parse("explicit energy file needs a values array".into())),
            },
        };
        Ok(EnergySpec::Explicit(arr.iter().map(parse_rational).collect::<Result<_>>()?))
    }

    /// One value per cell of `sys`, in the system's order.
    pub fn resolve(&self, sys: &SetSystem) -> Result<Energy> {
        let n = sys.len();
        let check_len = |k: usize| {
            if k == n {
                Ok(())
            } else {
                Err(Error::SizeMismatch(n, k))
            }
        };
        match self {
            EnergySpec::Constant(c) => Ok(Energy::from_rationals(vec![c.clone(); n])),
            EnergySpec::Omega => Ok(Energy::Int(sys.cells().iter().map(|c| BigInt::from(c.omega())).collect())),
            EnergySpec::Spin(s) => {
                check_len(s.len())?;
                Ok(Energy::Int(s.iter().map(|&v| BigInt::from(v)).collect()))
            }
            EnergySpec::Explicit(v) => {
                check_len(v.len())?;
                Ok(Energy::from_rationals(v.clone()))
            }
            EnergySpec::ExplicitFile(_) => self.clone().load()?.resolve(sys),
            EnergySpec::Param => Ok(Energy::Laurent(param_energy(sys))),
        }
    }
}

/// `h_t(x) = -t^|x|`.
pub fn param_energy(sys: &SetSystem) -> Vec<Laurent> {
    sys.cells().iter().map(|c| Laurent::monomial(-1, c.len() as i64)).collect()
}

/// Resolved per-cell energies in the narrowest ring that holds them.
#[derive(Debug, Clone, PartialEq)]
pub enum Energy {
    Int(Vec<BigInt>),
    Rat(Vec<BigRational>),
    Laurent(Vec<Laurent>),
}

impl Energy {
    pub fn from_rationals(v: Vec<BigRational>) -> Self {
        if v.iter().all(BigRational::is_integer) {
            Energy::Int(v.into_iter().map(|r| r.to_integer()).collect())
        } else {
            Energy::Rat(v)
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Energy::Int(v) => v.len(),
            Energy::Rat(v) => v.len(),
            Energy::Laurent(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ring(&self) -> &'static str {
        match self {
            Energy::Int(_) => BigInt::TAG,
            Energy::Rat(_) => BigRational::TAG,
            Energy::Laurent(_) => Laurent::TAG,
        }
    }

    /// Values as rationals, if the energy is numeric.
    pub fn as_rationals(&self) -> Option<Vec<BigRational>> {
        match self {
            Energy::Int(v) => Some(v.iter().map(|x| BigRational::from_integer(x.clone())).collect()),
            Energy::Rat(v) => Some(v.clone()),
            Energy::Laurent(_) => None,
        }
    }

    /// Every value equals 1.
    pub fn is_unit_constant(&self) -> bool {
        matches!(self, Energy::Int(v) if v.iter().all(One::is_one))
    }
}

fn sum<R: Ring>(it: impl IntoIterator<Item = R>) -> R {
    it.into_iter().fold(R::zero(), |a, b| a + b)
}

/// Total energy `E[A]` of a list of cells of `sys`.
pub fn energy_of<R: Ring>(sys: &SetSystem, h: &[R], cells: &[crate::setsys::Cell]) -> Result<R> {
    cells
        .iter()
        .map(|c| {
            sys.position(c)
                .map(|i| h[i].clone())
                .ok_or_else(|| Error::NotFound(format!("cell {c} is not in the system")))
        })
        .try_fold(R::zero(), |acc, v| Ok(acc + v?))
}

pub fn total_energy<R: Ring>(h: &[R]) -> R {
    sum(h.iter().cloned())
}

/// Fermi characteristic `∏ h(x)`.
pub fn fermi<R: Ring>(h: &[R]) -> R {
    h.iter().fold(R::one(), |acc, v| acc * v.clone())
}

/// The connection matrices of one energized system, in the system's order.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle<R: Ring> {
    pub system: SetSystem,
    pub h: Vec<R>,
    pub lmm: Matrix<R>,
    pub lpp: Matrix<R>,
    pub lpm: Matrix<R>,
    pub lmp: Matrix<R>,
    pub s: Matrix<R>,
    pub g: Matrix<R>,
}

/// Which matrix of a bundle to select.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Mm,
    Pp,
    Pm,
    Mp,
    G,
}

impl std::str::FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mm" => Ok(Which::Mm),
            "pp" => Ok(Which::Pp),
            "pm" => Ok(Which::Pm),
            "mp" => Ok(Which::Mp),
            "g" => Ok(Which::G),
            other => Err(Error::Parse(format!("unknown matrix {other:?}; expected mm|pp|pm|mp|g"))),
        }
    }
}

impl<R: Ring> Bundle<R> {
    pub fn matrix(&self, which: Which) -> &Matrix<R> {
        match which {
            Which::Mm => &self.lmm,
            Which::Pp => &self.lpp,
            Which::Pm => &self.lpm,
            Which::Mp => &self.lmp,
            Which::G => &self.g,
        }
    }

    pub fn total_energy(&self) -> R {
        total_energy(&self.h)
    }
}

/// Builds `L⁻⁻, L⁺⁺, L⁺⁻, L⁻⁺, S` and `g = S L⁺⁺ S`.
///
/// Each cell `z` contributes `h(z)` to `L⁻⁻` on star(z)×star(z), to `L⁺⁺` on
/// core(z)×core(z) and to `L⁺⁻` on core(z)×star(z). The matrices do not depend
/// on how the system is ordered beyond the basis they are written in.
pub fn build_bundle<R: Ring>(sys: &SetSystem, h: &[R]) -> Result<Bundle<R>> {
    let n = sys.len();
    if h.len() != n {
        return Err(Error::SizeMismatch(n, h.len()));
    }
    let mut lmm = Matrix::<R>::zeros(n);
    let mut lpp = Matrix::<R>::zeros(n);
    let mut lpm = Matrix::<R>::zeros(n);
    for z in 0..n {
        if h[z].is_zero() {
            continue;
        }
        let star = sys.star_indices(z);
        let core = sys.core_indices(z);
        for &x in &star {
            for &y in &star {
                lmm.set(x, y, lmm.get(x, y).clone() + h[z].clone());
            }
        }
        for &x in &core {
            for &y in &core {
                lpp.set(x, y, lpp.get(x, y).clone() + h[z].clone());
            }
            for &y in &star {
                lpm.set(x, y, lpm.get(x, y).clone() + h[z].clone());
            }
        }
    }
    let omega: Vec<i64> = sys.cells().iter().map(|c| c.omega()).collect();
    let s = Matrix::diagonal(&omega.iter().map(|&w| R::from_i64(w)).collect::<Vec<_>>());
    let g = Matrix::from_fn(n, |i, j| {
        let v = lpp.get(i, j).clone();
        if omega[i] * omega[j] < 0 {
            -v
        } else {
            v
        }
    });
    Ok(Bundle {
        system: sys.clone(),
        h: h.to_vec(),
        lmp: lpm.transpose(),
        lmm,
        lpp,
        lpm,
        s,
        g,
    })
}

/// `Σ (S L⁻⁻ S)(x,y)`; with `h = ω` on a complex this is the Wu characteristic.
pub fn wu_sum<R: Ring>(b: &Bundle<R>) -> R {
    let n = b.system.len();
    let mut acc = R::zero();
    for i in 0..n {
        for j in 0..n {
            let v = b.lmm.get(i, j).clone();
            acc = if b.system.cell(i).omega() * b.system.cell(j).omega() < 0 { acc - v } else { acc + v };
        }
    }
    acc
}

/// The system and energies reordered canonically.
pub fn canonical<R: Ring>(sys: &SetSystem, h: &[R]) -> (SetSystem, Vec<R>) {
    let perm = sys.canonical_permutation();
    (sys.reordered(&perm), perm.iter().map(|&i| h[i].clone()).collect())
}

fn fmt_vec<R: std::fmt::Display>(v: &[R]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn is_spin<R: Ring>(h: &[R]) -> bool {
    h.iter().all(|v| v.is_one() || (-v.clone()).is_one())
}

fn first_violation<R: Ring>(m: &Matrix<R>, bad: impl Fn(usize, usize, &R) -> bool) -> Option<String> {
    let n = m.order();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| bad(i, j, m.get(i, j)))
        .map(|(i, j)| format!("entry ({i},{j}) = {}", m.get(i, j)))
}

const SIMPLICIAL_ONLY: &str = "requires a simplicial complex";
const EMPTY_CELL: &str = "system contains the empty cell; computed but not asserted";

/// Marks every assertion informational when the system contains the empty cell.
fn guard_empty(sys: &SetSystem, checks: Vec<Check>) -> Report {
    if sys.contains_empty_cell() {
        checks
            .into_iter()
            .map(|c| c.informational().with_detail(EMPTY_CELL))
            .collect::<Vec<_>>()
            .into()
    } else {
        checks.into()
    }
}

/// `L⁻⁻ g` is lower triangular with diagonal `h(x)²` on a simplicial complex
/// listed subsets-first.
pub fn verify_product<R: Ring>(sys: &SetSystem, h: &[R]) -> Result<Report> {
    const ID: &str = "product-lower-triangular";
    const ANCHOR: &str = "L g lower triangular, diag h(x)^2";
    if !sys.is_simplicial() {
        return Ok(vec![Check::not_applicable(ID, ANCHOR, SIMPLICIAL_ONLY)].into());
    }
    let (sys, h) = canonical(sys, h);
    let b = build_bundle(&sys, &h)?;
    let p = b.lmm.mat_mul(&b.g)?;
    let upper = first_violation(&p, |i, j, v| j > i && !v.is_zero());
    let mut checks = vec![Check::boolean(ID, ANCHOR, upper.is_none(), upper.as_deref().unwrap_or("lower triangular"))];
    let diag: Vec<R> = (0..p.order()).map(|i| p.get(i, i).clone()).collect();
    let squares: Vec<R> = h.iter().map(|v| v.clone() * v.clone()).collect();
    checks.push(Check::compare("product-diagonal", "diag(L g) = h^2", &fmt_vec(&squares), &fmt_vec(&diag)));
    let lower: Vec<String> = (0..p.order())
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .filter(|&(i, j)| !p.get(i, j).is_zero())
        .map(|(i, j)| format!("({i},{j})={}", p.get(i, j)))
        .collect();
    let mut strict = Check::new("product-strictly-lower", "entries below the diagonal", "-", lower.len(), Status::Info);
    if !lower.is_empty() {
        strict = strict.with_detail(lower.join(" "));
    }
    checks.push(strict);
    Ok(guard_empty(&sys, checks))
}

/// `det L⁻⁻ = det L⁺⁺ = det L⁺⁻ = det L⁻⁺ = det g = ∏ h`, for any set of sets.
pub fn verify_determinant<R: Scalar>(sys: &SetSystem, h: &[R]) -> Result<Report> {
    let b = build_bundle(sys, h)?;
    let expected = fermi(h);
    let mut checks = Vec::new();
    for (id, m) in [
        ("det-Lmm", &b.lmm),
        ("det-Lpp", &b.lpp),
        ("det-Lpm", &b.lpm),
        ("det-Lmp", &b.lmp),
        ("det-g", &b.g),
    ] {
        checks.push(Check::compare(id, "det = product of h(x)", &expected, &m.det()));
    }
    if is_spin(h) {
        let unimodular = [&b.lmm, &b.lpp, &b.g].iter().all(|m| is_spin(&[m.det()]));
        checks.push(Check::boolean("unimodular", "spin energy gives det = ±1", unimodular, unimodular));
    }
    Ok(guard_empty(sys, checks))
}

/// With `h(x) ∈ {-1, 1}`, `g` is the inverse of `L⁻⁻`. Asserted on simplicial
/// complexes; recorded as a finding on other sets of sets.
pub fn verify_inverse_spin<R: Ring>(sys: &SetSystem, h: &[R]) -> Result<Report> {
    const ANCHOR: &str = "spin energy: g = L^-1";
    if !is_spin(h) {
        return Ok(vec![Check::not_applicable("spin-inverse", ANCHOR, "energy is not ±1-valued")].into());
    }
    let b = build_bundle(sys, h)?;
    let left = b.g.mat_mul(&b.lmm)?;
    let right = b.lmm.mat_mul(&b.g)?;
    let describe = |m: &Matrix<R>| {
        first_violation(m, |i, j, v| if i == j { !v.is_one() } else { !v.is_zero() }).unwrap_or_else(|| "identity".into())
    };
    let mut checks = vec![
        Check::boolean("spin-inverse-gL", ANCHOR, left.is_identity(), describe(&left)),
        Check::boolean("spin-inverse-Lg", ANCHOR, right.is_identity(), describe(&right)),
    ];
    if !sys.is_simplicial() {
        checks = checks
            .into_iter()
            .map(|c| c.informational().with_detail("set of sets (not simplicial)"))
            .collect();
    }
    Ok(guard_empty(sys, checks))
}

/// Both sides of `Σ g(x,y) = E[G]` and `str(g) = E[G]`, plus the per-row
/// identity `Σ_y g(x,y) = ω(x) g(x,x)`.
fn energy_checks<R: Ring>(b: &Bundle<R>) -> Vec<Check> {
    let e = b.total_energy();
    let mut checks = vec![Check::compare("energy", "sum of g = E[G]", &e, &b.g.sum_entries())];
    let rows_ok = (0..b.g.order()).find(|&i| {
        let diag = b.g.get(i, i).clone();
        let want = if b.system.cell(i).omega() < 0 { -diag } else { diag };
        b.g.row_sum(i) != want
    });
    checks.push(Check::boolean(
        "energy-row",
        "row sum of g = ω(x) g(x,x)",
        rows_ok.is_none(),
        rows_ok.map_or("all rows".to_string(), |i| format!("row {i} differs")),
    ));
    checks
}

fn strace_check<R: Ring>(b: &Bundle<R>) -> Check {
    let str_g = b.s.mat_mul(&b.g).expect("same order").trace();
    Check::compare("super-trace", "tr(S g) = E[G]", &b.total_energy(), &str_g)
}

/// Values are computed for any input; on non-simplicial systems the checks are
/// marked not-applicable (with both sides still shown).
fn mark_simplicial_only(sys: &SetSystem, checks: Vec<Check>) -> Report {
    if sys.is_simplicial() {
        guard_empty(sys, checks)
    } else {
        checks
            .into_iter()
            .map(|mut c| {
                c.detail = Some(format!("{SIMPLICIAL_ONLY}; holds: {}", c.status == Status::Pass));
                c.status = Status::NotApplicable;
                c
            })
            .collect::<Vec<_>>()
            .into()
    }
}

pub fn verify_energy_theorem<R: Ring>(sys: &SetSystem, h: &[R]) -> Result<Report> {
    let b = build_bundle(sys, h)?;
    Ok(mark_simplicial_only(sys, energy_checks(&b)))
}

pub fn verify_strace<R: Ring>(sys: &SetSystem, h: &[R]) -> Result<Report> {
    let b = build_bundle(sys, h)?;
    Ok(mark_simplicial_only(sys, vec![strace_check(&b)]))
}

/// Boolean duality: with energies carried over by complementation, the dual's
/// `L⁻⁻` is the original `L⁺⁺` and vice versa.
pub fn verify_dual<R: Ring>(sys: &SetSystem, h: &[R]) -> Result<Report> {
    let b = build_bundle(sys, h)?;
    let d = build_bundle(&sys.boolean_dual(), h)?;
    Ok(vec![
        Check::boolean("dual-Lmm", "dual L-- = L++", d.lmm == b.lpp, d.lmm == b.lpp),
        Check::boolean("dual-Lpp", "dual L++ = L--", d.lpp == b.lmm, d.lpp == b.lmm),
    ]
    .into())
}

/// `(negative, zero, positive)` counts of the energy values.
pub fn sign_counts<R: crate::exact::RealScalar>(h: &[R]) -> (usize, usize, usize) {
    let neg = h.iter().filter(|v| v.signum_i8() < 0).count();
    let zero = h.iter().filter(|v| v.signum_i8() == 0).count();
    (neg, zero, h.len() - neg - zero)
}
