//! Named groups of checks run against one energized system.

use std::str::FromStr;

use crate::calculus::{default_phi, verify_gauss_bonnet, verify_poincare_hopf, verify_tensor_representation, Energized};
use crate::energize::{
    verify_determinant, verify_dual, verify_energy_theorem, verify_inverse_spin, verify_product, verify_strace,
    Energy, Scalar,
};
use crate::error::{Error, Result};
use crate::exact::RealScalar;
use crate::param::{verify_green_star, verify_param_det, verify_param_energy};
use crate::report::{Check, Report};
use crate::setsys::SetSystem;
use crate::spectra::{verify_isospectral, verify_sign_theorem};

/// Systems above this size skip the self-product in the tensor suite.
pub const TENSOR_MAX_CELLS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Product,
    Det,
    Inverse,
    Energy,
    Strace,
    Signs,
    Isospectral,
    Palindrome,
    Dual,
    Tensor,
    GaussBonnet,
    Ph,
}

impl Suite {
    pub const EACH: [Suite; 12] = [
        Suite::Product,
        Suite::Det,
        Suite::Inverse,
        Suite::Energy,
        Suite::Strace,
        Suite::Signs,
        Suite::Isospectral,
        Suite::Palindrome,
        Suite::Dual,
        Suite::Tensor,
        Suite::GaussBonnet,
        Suite::Ph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Product => "product",
            Suite::Det => "det",
            Suite::Inverse => "inverse",
            Suite::Energy => "energy",
            Suite::Strace => "strace",
            Suite::Signs => "signs",
            Suite::Isospectral => "isospectral",
            Suite::Palindrome => "palindrome",
            Suite::Dual => "dual",
            Suite::Tensor => "tensor",
            Suite::GaussBonnet => "gaussbonnet",
            Suite::Ph => "ph",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Runs `suite` on `sys` with the resolved energy.
pub fn run_suite(sys: &SetSystem, energy: &Energy, suite: Suite) -> Result<Report> {
    if energy.len() != sys.len() {
        return Err(Error::SizeMismatch(sys.len(), energy.len()));
    }
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut report = Report::new();
    for s in suites {
        report.extend(match energy {
            Energy::Int(h) => numeric(sys, h, energy, s)?,
            Energy::Rat(h) => numeric(sys, h, energy, s)?,
            Energy::Laurent(_) => param(sys, s)?,
        });
    }
    Ok(report)
}

fn na(suite: Suite, reason: &str) -> Report {
    vec![Check::not_applicable(suite.name(), "-", reason)].into()
}

fn numeric<R: Scalar + RealScalar>(sys: &SetSystem, h: &[R], energy: &Energy, suite: Suite) -> Result<Report> {
    Ok(match suite {
        Suite::All => unreachable!("expanded by run_suite"),
        Suite::Product => verify_product(sys, h)?,
        Suite::Det => verify_determinant(sys, h)?,
        Suite::Inverse => verify_inverse_spin(sys, h)?,
        Suite::Energy => verify_energy_theorem(sys, h)?,
        Suite::Strace => verify_strace(sys, h)?,
        Suite::Signs => verify_sign_theorem(sys, h)?,
        Suite::Isospectral | Suite::Palindrome if !energy.is_unit_constant() => na(suite, "needs constant energy 1"),
        Suite::Isospectral => {
            let mut r = verify_isospectral(sys)?;
            r.checks.retain(|c| c.identity != "palindrome");
            r
        }
        Suite::Palindrome => {
            let r = verify_isospectral(sys)?;
            r.checks.into_iter().filter(|c| c.identity == "palindrome").collect::<Vec<_>>().into()
        }
        Suite::Dual => verify_dual(sys, h)?,
        Suite::Tensor if sys.len() > TENSOR_MAX_CELLS => na(suite, "system too large for the self-product"),
        Suite::Tensor if sys.contains_empty_cell() => na(suite, "products need non-empty cells"),
        Suite::Tensor => {
            let e = Energized::new(sys.clone(), h.to_vec())?;
            verify_tensor_representation(&e, &e)?
        }
        Suite::GaussBonnet => {
            let q = energy.as_rationals().expect("numeric energy");
            verify_gauss_bonnet(sys, &q)?
        }
        Suite::Ph => verify_poincare_hopf(sys, h, &default_phi(sys))?,
    })
}

fn param(sys: &SetSystem, suite: Suite) -> Result<Report> {
    if !sys.is_simplicial() {
        return Ok(na(suite, "the parameter energy needs a simplicial complex"));
    }
    Ok(match suite {
        Suite::Inverse => verify_green_star(sys)?,
        Suite::Energy | Suite::Strace => {
            let strace = suite == Suite::Strace;
            let r = verify_param_energy(sys)?;
            r.checks.into_iter().filter(|c| (c.identity == "param-super-trace") == strace).collect::<Vec<_>>().into()
        }
        Suite::Det => verify_param_det(sys)?,
        _ => na(suite, "not defined for the parameter energy"),
    })
}
