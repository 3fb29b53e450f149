//! Finite sets of sets: cells, orderings, stars and cores, Boolean duals and
//! the named families used throughout the crate.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Ring;

/// A finite set of atom labels, stored sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Cell(Vec<u32>);

impl Cell {
    pub fn new(atoms: impl IntoIterator<Item = u32>) -> Self {
        let set: BTreeSet<u32> = atoms.into_iter().collect();
        Cell(set.into_iter().collect())
    }

    pub fn empty() -> Self {
        Cell(Vec::new())
    }

    pub fn atoms(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|x| - 1`; the empty cell has dimension -1.
    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    /// `(-1)^dim`: +1 for odd cardinality, -1 for even (including the empty cell).
    pub fn omega(&self) -> i64 {
        if self.0.len() % 2 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn contains_atom(&self, a: u32) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    /// Merge-based inclusion test.
    pub fn is_subset(&self, other: &Cell) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for a in &self.0 {
            for b in it.by_ref() {
                if b == a {
                    continue 'outer;
                }
                if b > a {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_proper_subset(&self, other: &Cell) -> bool {
        self.0.len() < other.0.len() && self.is_subset(other)
    }

    pub fn intersection(&self, other: &Cell) -> Cell {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Cell(out)
    }

    pub fn complement_in(&self, ground: &[u32]) -> Cell {
        Cell(ground.iter().copied().filter(|a| !self.contains_atom(*a)).collect())
    }

    /// All non-empty subsets.
    pub fn nonempty_subsets(&self) -> Vec<Cell> {
        let k = self.0.len();
        assert!(k < 31, "cell too large to enumerate subsets");
        (1u32..(1 << k))
            .map(|mask| Cell((0..k).filter(|b| mask >> b & 1 == 1).map(|b| self.0[b]).collect()))
            .collect()
    }

    /// Stable node name used in exports, e.g. `s{1,2}`.
    pub fn node_name(&self) -> String {
        format!("s{self}")
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&[u32]> for Cell {
    fn from(v: &[u32]) -> Self {
        Cell::new(v.iter().copied())
    }
}

impl<const N: usize> From<[u32; N]> for Cell {
    fn from(v: [u32; N]) -> Self {
        Cell::new(v)
    }
}

/// Canonical sort key: cardinality first, then lexicographic atoms.
fn canonical_key(c: &Cell) -> (usize, &[u32]) {
    (c.len(), c.atoms())
}

/// An ordered finite collection of distinct cells.
///
/// The order is the basis in which every matrix is written. The ground set
/// defaults to the union of the atoms; Boolean duals keep the ground set of
/// the system they came from so that dualizing twice is the identity.
#[derive(Clone)]
pub struct SetSystem {
    cells: Vec<Cell>,
    ground: Vec<u32>,
    simplicial: bool,
    index: HashMap<Cell, usize>,
}

impl PartialEq for SetSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells && self.ground == other.ground
    }
}

impl Eq for SetSystem {}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.cells).finish()
    }
}

impl SetSystem {
    /// Builds a system in the given order. Cells must be distinct and non-empty.
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        if let Some(pos) = cells.iter().position(Cell::is_empty) {
            return Err(Error::InvalidInput(format!("cell {pos} is empty")));
        }
        let ground: BTreeSet<u32> = cells.iter().flat_map(|c| c.atoms().iter().copied()).collect();
        Self::with_ground(cells, ground.into_iter().collect())
    }

    /// Like [`SetSystem::new`] but with an explicit ground set (a superset of
    /// the atoms used). The empty cell is allowed here.
    pub fn with_ground(cells: Vec<Cell>, ground: Vec<u32>) -> Result<Self> {
        let mut index = HashMap::with_capacity(cells.len());
        for (i, c) in cells.iter().enumerate() {
            if index.insert(c.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate cell {c}")));
            }
        }
        let ground: Vec<u32> = ground.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(c) = cells.iter().find(|c| c.atoms().iter().any(|a| ground.binary_search(a).is_err())) {
            return Err(Error::InvalidInput(format!("cell {c} leaves the ground set")));
        }
        let simplicial = cells
            .iter()
            .all(|c| !c.is_empty() && c.nonempty_subsets().iter().all(|s| index.contains_key(s)));
        Ok(SetSystem {
            cells,
            ground,
            simplicial,
            index,
        })
    }

    pub fn from_atoms(cells: &[&[u32]]) -> Result<Self> {
        Self::new(cells.iter().map(|c| Cell::from(*c)).collect())
    }

    pub fn empty() -> Self {
        Self::new(Vec::new()).expect("empty system is valid")
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn ground(&self) -> &[u32] {
        &self.ground
    }

    /// Every non-empty subset of every cell is present (and no cell is empty).
    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    pub fn contains_empty_cell(&self) -> bool {
        self.index.contains_key(&Cell::empty())
    }

    pub fn position(&self, x: &Cell) -> Option<usize> {
        self.index.get(x).copied()
    }

    fn require(&self, x: &Cell) -> Result<usize> {
        self.position(x).ok_or_else(|| Error::NotFound(format!("cell {x} is not in the system")))
    }

    /// Permutation `perm` with `perm[new] = old` that sorts cells by (cardinality, lexicographic).
    pub fn canonical_permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.cells.len()).collect();
        perm.sort_by(|&a, &b| canonical_key(&self.cells[a]).cmp(&canonical_key(&self.cells[b])));
        perm
    }

    pub fn canonical_order(&self) -> SetSystem {
        self.reordered(&self.canonical_permutation())
    }

    /// Cells in the order `perm[new] = old`.
    pub fn reordered(&self, perm: &[usize]) -> SetSystem {
        let cells = perm.iter().map(|&i| self.cells[i].clone()).collect();
        SetSystem::with_ground(cells, self.ground.clone()).expect("permutation of a valid system")
    }

    pub fn is_canonical(&self) -> bool {
        self.cells.windows(2).all(|w| canonical_key(&w[0]) < canonical_key(&w[1]))
    }

    /// Every strict subset of a cell appears before it.
    pub fn respects_inclusion(&self) -> bool {
        (0..self.cells.len()).all(|i| (i + 1..self.cells.len()).all(|j| !self.cells[j].is_proper_subset(&self.cells[i])))
    }

    /// Indices of the cells containing cell `i` (including `i`).
    pub fn star_indices(&self, i: usize) -> Vec<usize> {
        let x = &self.cells[i];
        (0..self.cells.len()).filter(|&j| x.is_subset(&self.cells[j])).collect()
    }

    /// Indices of the cells contained in cell `i` (including `i`).
    pub fn core_indices(&self, i: usize) -> Vec<usize> {
        let x = &self.cells[i];
        (0..self.cells.len()).filter(|&j| self.cells[j].is_subset(x)).collect()
    }

    pub fn star(&self, x: &Cell) -> Result<Vec<Cell>> {
        let i = self.require(x)?;
        Ok(self.star_indices(i).into_iter().map(|j| self.cells[j].clone()).collect())
    }

    pub fn core(&self, x: &Cell) -> Result<Vec<Cell>> {
        let i = self.require(x)?;
        Ok(self.core_indices(i).into_iter().map(|j| self.cells[j].clone()).collect())
    }

    /// Complements of the cells within the ground set, in the same order.
    pub fn boolean_dual(&self) -> SetSystem {
        let cells = self.cells.iter().map(|c| c.complement_in(&self.ground)).collect();
        SetSystem::with_ground(cells, self.ground.clone()).expect("complements of distinct cells are distinct")
    }

    /// `f[k]` = number of cells of cardinality `k + 1`, for `k + 1` up to the largest cardinality.
    pub fn f_vector(&self) -> Vec<u64> {
        let max = self.cells.iter().map(Cell::len).max().unwrap_or(0);
        let mut f = vec![0u64; max];
        for c in self.cells.iter().filter(|c| !c.is_empty()) {
            f[c.len() - 1] += 1;
        }
        f
    }

    /// `1 + Σ_k f_k t^k`. The empty cell does not contribute, so `{∅}` gives 1.
    pub fn f_poly_eval<R: Ring>(&self, t: &R) -> R {
        let mut acc = R::zero();
        for &fk in self.f_vector().iter().rev() {
            acc = (acc + R::from_i64(fk as i64)) * t.clone();
        }
        acc + R::one()
    }

    /// Cells with no proper non-empty subset among the cells of the system.
    pub fn atoms(&self) -> Vec<Cell> {
        self.cells
            .iter()
            .filter(|x| !self.cells.iter().any(|y| !y.is_empty() && y.is_proper_subset(x)))
            .cloned()
            .collect()
    }
}

/// All non-empty subsets of the generators, deduplicated, in canonical order.
pub fn downward_closure(generators: &[Cell]) -> Result<SetSystem> {
    if generators.iter().any(Cell::is_empty) {
        return Err(Error::InvalidInput("generator cells must be non-empty".into()));
    }
    let mut all = BTreeSet::new();
    for g in generators {
        if g.len() > 24 {
            return Err(Error::ResourceLimit(format!("generator {g} has too many subsets")));
        }
        all.extend(g.nonempty_subsets());
    }
    Ok(SetSystem::new(all.into_iter().collect())?.canonical_order())
}

/// Every non-empty subset of `{1, ..., n}`.
pub fn complete_complex(n: u32) -> Result<SetSystem> {
    if n == 0 {
        return Err(Error::InvalidInput("complete complex needs n >= 1".into()));
    }
    downward_closure(&[Cell::new(1..=n)])
}

/// Vertices and edges of the cycle graph on `{1, ..., n}`.
pub fn cycle_complex(n: u32) -> Result<SetSystem> {
    if n < 3 {
        return Err(Error::InvalidInput("cycle complex needs n >= 3".into()));
    }
    let edges: Vec<Cell> = (1..=n).map(|i| Cell::new([i, i % n + 1])).collect();
    downward_closure(&edges)
}

/// Whitney complex of the `w x h` grid graph: vertices and edges only.
pub fn grid_whitney(w: u32, h: u32) -> Result<SetSystem> {
    if w < 2 || h < 2 {
        return Err(Error::InvalidInput("grid needs w, h >= 2".into()));
    }
    let label = |i: u32, j: u32| 1 + i + w * j;
    let mut gens = Vec::new();
    for j in 0..h {
        for i in 0..w {
            if i + 1 < w {
                gens.push(Cell::new([label(i, j), label(i + 1, j)]));
            }
            if j + 1 < h {
                gens.push(Cell::new([label(i, j), label(i, j + 1)]));
            }
        }
    }
    downward_closure(&gens)
}

/// Seeded random simplicial complex: `m` random cells over `{1, ..., n}`, each
/// made of `1 + uniform(0, n-1)` atom draws with repeats removed, closed downward.
pub fn random_sets(n: u32, m: usize, seed: u64) -> Result<SetSystem> {
    if n == 0 {
        return Err(Error::InvalidInput("random_sets needs n >= 1".into()));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let gens: Vec<Cell> = (0..m)
        .map(|_| {
            let k = 1 + rng.gen_range(0..n);
            Cell::new((0..k).map(|_| rng.gen_range(1..=n)))
        })
        .collect();
    downward_closure(&gens)
}

/// Seeded random set of sets (not closed under subsets): up to `max_cells`
/// distinct non-empty subsets of `{1, ..., atoms}`, in canonical order.
pub fn random_family(atoms: u32, max_cells: usize, seed: u64) -> Result<SetSystem> {
    if atoms == 0 || atoms > 20 || max_cells == 0 {
        return Err(Error::InvalidInput("random_family needs 1 <= atoms <= 20 and max_cells >= 1".into()));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let target = rng.gen_range(1..=max_cells);
    let mut seen = BTreeSet::new();
    for _ in 0..target {
        let mask: u32 = rng.gen_range(1..(1u32 << atoms));
        seen.insert(Cell::new((0..atoms).filter(|b| mask >> b & 1 == 1).map(|b| b + 1)));
    }
    Ok(SetSystem::new(seen.into_iter().collect())?.canonical_order())
}

/// Path on `1..=bits.len()` with a pendant edge at vertex `i + 1` whenever `bits[i]` is set.
pub fn decorated_path(bits: &[bool]) -> Result<SetSystem> {
    if bits.is_empty() {
        return Err(Error::InvalidInput("decorated path needs at least one position".into()));
    }
    let n = bits.len() as u32;
    let mut gens: Vec<Cell> = (1..n).map(|i| Cell::new([i, i + 1])).collect();
    if n == 1 {
        gens.push(Cell::new([1]));
    }
    let mut next = n + 1;
    for (i, &b) in bits.iter().enumerate() {
        if b {
            gens.push(Cell::new([i as u32 + 1, next]));
            next += 1;
        }
    }
    downward_closure(&gens)
}
