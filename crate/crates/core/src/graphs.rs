//! Multigraphs whose adjacency matrices are `L⁻⁻` and `L⁺⁺` at constant energy 1.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::energize::{build_bundle, Which};
use crate::error::{Error, Result};
use crate::exact::Matrix;
use crate::report::{Check, Report};
use crate::setsys::{Cell, SetSystem};
use crate::spectra::palindrome_check;

/// Nodes are cells; `mult[i][j]` edges join nodes `i` and `j`, diagonal entries count loops.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Multigraph {
    pub nodes: Vec<Cell>,
    pub mult: Vec<Vec<u64>>,
}

impl Multigraph {
    /// Reads multiplicities off a symmetric non-negative integer matrix.
    pub fn from_matrix(nodes: Vec<Cell>, m: &Matrix<BigInt>) -> Result<Self> {
        if nodes.len() != m.order() {
            return Err(Error::SizeMismatch(nodes.len(), m.order()));
        }
        if !m.is_symmetric() {
            return Err(Error::InvalidInput("adjacency matrix is not symmetric".into()));
        }
        let mult = m
            .rows()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        if v.is_negative() {
                            Err(Error::InvalidInput(format!("negative multiplicity {v}")))
                        } else {
                            v.to_u64().ok_or_else(|| Error::InvalidInput(format!("multiplicity {v} too large")))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Multigraph { nodes, mult })
    }

    pub fn adjacency(&self) -> Matrix<BigInt> {
        Matrix::from_fn(self.nodes.len(), |i, j| BigInt::from(self.mult[i][j]))
    }

    pub fn charpoly(&self) -> Vec<BigInt> {
        self.adjacency().charpoly()
    }

    /// Undirected DOT with one `--` line per unit of multiplicity; loops are self-edges.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for c in &self.nodes {
            writeln!(out, "  \"{}\";", c.node_name()).expect("string write");
        }
        for i in 0..self.nodes.len() {
            for j in i..self.nodes.len() {
                for _ in 0..self.mult[i][j] {
                    writeln!(out, "  \"{}\" -- \"{}\";", self.nodes[i].node_name(), self.nodes[j].node_name())
                        .expect("string write");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let g: Multigraph = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let n = g.nodes.len();
        if g.mult.len() != n || g.mult.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("multiplicity matrix does not match the node list".into()));
        }
        if (0..n).any(|i| (0..n).any(|j| g.mult[i][j] != g.mult[j][i])) {
            return Err(Error::Parse("multiplicity matrix is not symmetric".into()));
        }
        Ok(g)
    }
}

/// `(Γ⁻⁻, Γ⁺⁺)` for constant energy 1, nodes in the system's order.
pub fn multigraphs_from(sys: &SetSystem) -> Result<(Multigraph, Multigraph)> {
    multigraphs_with_energy(sys, &vec![BigInt::one(); sys.len()])
}

/// As [`multigraphs_from`] with explicit energies; negative entries are rejected.
pub fn multigraphs_with_energy(sys: &SetSystem, h: &[BigInt]) -> Result<(Multigraph, Multigraph)> {
    let b = build_bundle(sys, h)?;
    let nodes = sys.cells().to_vec();
    Ok((
        Multigraph::from_matrix(nodes.clone(), b.matrix(Which::Mm))?,
        Multigraph::from_matrix(nodes, b.matrix(Which::Pp))?,
    ))
}

/// `tr(A^k)` for `k = 1..=kmax`: closed walks of length `k`.
pub fn closed_walk_counts(g: &Multigraph, kmax: u32) -> Vec<BigInt> {
    let a = g.adjacency();
    let mut p = Matrix::identity(a.order());
    (1..=kmax)
        .map(|_| {
            p = p.mat_mul(&a).expect("same order");
            p.trace()
        })
        .collect()
}

/// Classifies the characteristic polynomial of the multigraph.
pub fn path_symmetry_check(g: &Multigraph) -> Report {
    vec![palindrome_check(&g.charpoly())].into()
}

/// `Γ⁻⁻` and `Γ⁺⁺` share characteristic polynomial and closed-walk counts up to `kmax`.
pub fn verify_multigraphs(sys: &SetSystem, kmax: u32) -> Result<Report> {
    let (mm, pp) = multigraphs_from(sys)?;
    let show = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    Ok(vec![
        Check::compare("multigraph-charpoly", "Γ-- and Γ++ isospectral", &show(&mm.charpoly()), &show(&pp.charpoly())),
        Check::compare(
            "multigraph-walks",
            "equal closed walk counts",
            &show(&closed_walk_counts(&mm, kmax)),
            &show(&closed_walk_counts(&pp, kmax)),
        ),
    ]
    .into())
}
