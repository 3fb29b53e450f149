//! Redistributing energy onto atoms, and the ring structure of energized
//! systems under disjoint union and Cartesian product.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::energize::{build_bundle, total_energy, Scalar};
use crate::error::{Error, Result};
use crate::exact::Ring;
use crate::report::{Check, Report, Status};
use crate::setsys::{Cell, SetSystem};

/// A set system together with one energy value per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Energized<R> {
    pub system: SetSystem,
    pub h: Vec<R>,
}

impl<R: Ring> Energized<R> {
    pub fn new(system: SetSystem, h: Vec<R>) -> Result<Self> {
        if system.len() != h.len() {
            return Err(Error::SizeMismatch(system.len(), h.len()));
        }
        Ok(Energized { system, h })
    }

    pub fn total_energy(&self) -> R {
        total_energy(&self.h)
    }
}

/// Indices of the atoms (minimal cells) contained in each cell.
fn atoms_below(sys: &SetSystem) -> (Vec<Cell>, Vec<Vec<usize>>) {
    let atoms = sys.atoms();
    let below = sys
        .cells()
        .iter()
        .map(|x| (0..atoms.len()).filter(|&a| atoms[a].is_subset(x)).collect())
        .collect();
    (atoms, below)
}

/// Each cell's energy split equally among the atoms it contains.
pub fn curvature(sys: &SetSystem, h: &[BigRational]) -> Result<Vec<(Cell, BigRational)>> {
    if h.len() != sys.len() {
        return Err(Error::SizeMismatch(sys.len(), h.len()));
    }
    let (atoms, below) = atoms_below(sys);
    let mut k = vec![BigRational::from_integer(BigInt::from(0)); atoms.len()];
    for (x, under) in below.iter().enumerate() {
        let share = h[x].clone() / BigRational::from_integer(BigInt::from(under.len()));
        for &a in under {
            k[a] += share.clone();
        }
    }
    Ok(atoms.into_iter().zip(k).collect())
}

/// `Σ_a K(a) = E[G]`.
pub fn verify_gauss_bonnet(sys: &SetSystem, h: &[BigRational]) -> Result<Report> {
    let k = curvature(sys, h)?;
    let sum = k.iter().fold(BigRational::from_integer(BigInt::from(0)), |acc, (_, v)| acc + v.clone());
    Ok(vec![Check::compare("gauss-bonnet", "sum of curvatures = E[G]", &total_energy(h), &sum)].into())
}

/// Each cell's energy credited to its φ-maximal atom. `phi` is indexed like
/// [`SetSystem::atoms`] and must be injective.
pub fn poincare_hopf_index<R: Ring>(sys: &SetSystem, h: &[R], phi: &[f64]) -> Result<Vec<(Cell, R)>> {
    if h.len() != sys.len() {
        return Err(Error::SizeMismatch(sys.len(), h.len()));
    }
    let (atoms, below) = atoms_below(sys);
    if phi.len() != atoms.len() {
        return Err(Error::SizeMismatch(atoms.len(), phi.len()));
    }
    let mut sorted = phi.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) || phi.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidInput("φ must be injective on atoms".into()));
    }
    let mut idx = vec![R::zero(); atoms.len()];
    for (x, under) in below.iter().enumerate() {
        let top = under
            .iter()
            .copied()
            .max_by(|&a, &b| phi[a].total_cmp(&phi[b]))
            .expect("every cell contains an atom");
        idx[top] = idx[top].clone() + h[x].clone();
    }
    Ok(atoms.into_iter().zip(idx).collect())
}

/// `Σ_a i_φ(a) = E[G]`.
pub fn verify_poincare_hopf<R: Ring>(sys: &SetSystem, h: &[R], phi: &[f64]) -> Result<Report> {
    let idx = poincare_hopf_index(sys, h, phi)?;
    let sum = idx.iter().fold(R::zero(), |acc, (_, v)| acc + v.clone());
    Ok(vec![Check::compare("poincare-hopf", "sum of indices = E[G]", &total_energy(h), &sum)].into())
}

/// `φ(a)` = position of the atom in the atom list.
pub fn default_phi(sys: &SetSystem) -> Vec<f64> {
    (0..sys.atoms().len()).map(|i| i as f64).collect()
}

fn rank_map(ground: &[u32]) -> HashMap<u32, u32> {
    ground.iter().enumerate().map(|(i, &a)| (a, i as u32)).collect()
}

/// `A + B`: B's atoms are moved past A's, cells of A first.
pub fn disjoint_union<R: Ring>(a: &Energized<R>, b: &Energized<R>) -> Result<Energized<R>> {
    let offset = a.system.ground().last().map_or(0, |&m| m + 1);
    let ranks = rank_map(b.system.ground());
    let relabel = |c: &Cell| Cell::new(c.atoms().iter().map(|x| offset + ranks[x]));
    let mut cells = a.system.cells().to_vec();
    cells.extend(b.system.cells().iter().map(relabel));
    let mut ground = a.system.ground().to_vec();
    ground.extend(b.system.ground().iter().map(|x| offset + ranks[x]));
    let system = SetSystem::with_ground(cells, ground)?;
    let h = a.h.iter().chain(&b.h).cloned().collect();
    Energized::new(system, h)
}

/// `A * B`: cells `x × y` in pair-lexicographic order, with atom pairs `(p, q)`
/// encoded as `1 + rank(p)·|ground B| + rank(q)`; energy `h(x)·k(y)`.
pub fn cartesian_product<R: Ring>(a: &Energized<R>, b: &Energized<R>) -> Result<Energized<R>> {
    if a.system.contains_empty_cell() || b.system.contains_empty_cell() {
        return Err(Error::InvalidInput("products are defined for non-empty cells only".into()));
    }
    let ra = &rank_map(a.system.ground());
    let rb = &rank_map(b.system.ground());
    let width = b.system.ground().len() as u32;
    let mut cells = Vec::with_capacity(a.system.len() * b.system.len());
    let mut h = Vec::with_capacity(cells.capacity());
    for (x, hx) in a.system.cells().iter().zip(&a.h) {
        for (y, ky) in b.system.cells().iter().zip(&b.h) {
            cells.push(Cell::new(
                x.atoms().iter().flat_map(|p| y.atoms().iter().map(move |q| 1 + ra[p] * width + rb[q])),
            ));
            h.push(hx.clone() * ky.clone());
        }
    }
    Energized::new(SetSystem::new(cells)?, h)
}

/// `L(A*B) = L(A) ⊗ L(B)` for both `L⁻⁻` and `L⁺⁺`, energy additive under
/// union and multiplicative under product, and the Kronecker determinant rule.
pub fn verify_tensor_representation<R: Scalar>(a: &Energized<R>, b: &Energized<R>) -> Result<Report> {
    let p = cartesian_product(a, b)?;
    let u = disjoint_union(a, b)?;
    let ba = build_bundle(&a.system, &a.h)?;
    let bb = build_bundle(&b.system, &b.h)?;
    let bp = build_bundle(&p.system, &p.h)?;
    let tm = ba.lmm.tensor(&bb.lmm);
    let tp = ba.lpp.tensor(&bb.lpp);
    let pow = |x: R, k: usize| (0..k).fold(R::one(), |acc, _| acc * x.clone());
    let det_expected = pow(ba.lmm.det(), b.system.len()) * pow(bb.lmm.det(), a.system.len());
    let mut checks = vec![
        Check::boolean("tensor-Lmm", "L--(A*B) = L--(A) ⊗ L--(B)", bp.lmm == tm, bp.lmm == tm),
        Check::boolean("tensor-Lpp", "L++(A*B) = L++(A) ⊗ L++(B)", bp.lpp == tp, bp.lpp == tp),
        Check::compare("energy-union", "E[A+B] = E[A] + E[B]", &(a.total_energy() + b.total_energy()), &u.total_energy()),
        Check::compare("energy-product", "E[A*B] = E[A] E[B]", &(a.total_energy() * b.total_energy()), &p.total_energy()),
        Check::compare("det-product", "det L(A*B) = det L(A)^|B| det L(B)^|A|", &det_expected, &bp.lmm.det()),
    ];
    if !p.system.is_simplicial() {
        checks.push(Check::new("product-simplicial", "products of complexes", "-", false, Status::Info));
    }
    Ok(checks.into())
}
