//! Matrix representations of `M(N)` from boundary data.
//!
//! Coordinates are the interior vertices followed by a homogenizing
//! coordinate `h`. Each boundary edge reads its boundary value from the block
//! it lies in, so different blocks may reuse field elements.

use serde::Serialize;
use thiserror::Error;

use crate::dirichlet::dirichlet_matroid;
use crate::edgeset::EdgeSet;
use crate::field::{rank, Field, Scalar};
use crate::matroid::{Matroid, MatroidError};
use crate::network::{Network, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinRepError {
    #[error("{field} has {size} elements but some block has {needed} boundary nodes")]
    FieldTooSmall { field: Field, size: u64, needed: usize },
    #[error("boundary data has {got} values for a block with {expected} boundary nodes")]
    ShapeMismatch { expected: usize, got: usize },
}

/// Boundary values per block: `values[b][i]` belongs to the `i`-th boundary
/// node of block `b`, in [`Network::block_boundaries`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryData {
    pub field: Field,
    pub values: Vec<Vec<Scalar>>,
}

impl BoundaryData {
    /// One map `∂B → K` shared by every block; `u[j]` is the value of the
    /// `j`-th boundary node.
    pub fn global(n: &Network, field: Field, u: &[Scalar]) -> BoundaryData {
        let position: Vec<usize> = {
            let mut pos = vec![usize::MAX; n.vertex_count()];
            for (j, b) in n.boundary_vertices().enumerate() {
                pos[b] = j;
            }
            pos
        };
        let values = n.block_boundaries().iter().map(|bs| bs.iter().map(|&b| u[position[b]].clone()).collect()).collect();
        BoundaryData { field, values }
    }

    /// Injective on the boundary nodes of every block.
    pub fn is_block_injective(&self) -> bool {
        self.values.iter().all(|vs| vs.iter().enumerate().all(|(i, a)| vs[..i].iter().all(|b| a != b)))
    }

    /// The single map `∂B → K` these values come from, if there is one.
    pub fn as_global(&self, n: &Network) -> Option<Vec<Scalar>> {
        let mut u: Vec<Option<Scalar>> = vec![None; n.vertex_count()];
        for (bs, vs) in n.block_boundaries().iter().zip(&self.values) {
            for (&b, v) in bs.iter().zip(vs) {
                match &u[b] {
                    Some(old) if old != v => return None,
                    _ => u[b] = Some(v.clone()),
                }
            }
        }
        n.boundary_vertices().map(|b| u[b].clone()).collect()
    }

    /// `u ↦ a·u + t` in every block.
    pub fn affine(&self, a: &Scalar, t: &Scalar) -> BoundaryData {
        let values = self.values.iter().map(|vs| vs.iter().map(|v| a.mul(v).add(t)).collect()).collect();
        BoundaryData { field: self.field, values }
    }

    fn value(&self, n: &Network, block: usize, b: VertexId) -> &Scalar {
        let i = n.block_boundaries()[block].iter().position(|&x| x == b).expect("boundary node of its block");
        &self.values[block][i]
    }
}

/// Block-injective boundary data over `field`. A single global map is used
/// when one exists with the field's elements (backtracking colouring of the
/// graph joining boundary nodes that share a block); otherwise each block
/// numbers its boundary nodes `0, 1, 2, …`.
pub fn block_injective_u(n: &Network, field: Field) -> Result<BoundaryData, LinRepError> {
    let needed = n.max_block_boundary();
    if let Some(size) = field.size() {
        if (size as usize) < needed {
            return Err(LinRepError::FieldTooSmall { field, size, needed });
        }
    }
    let colours = field.size().map_or(needed, |s| (s as usize).min(n.boundary_count()));
    let adj = crossing_graph(n);
    if let Some(c) = colour_with(&adj, colours) {
        let u: Vec<Scalar> = c.iter().map(|&i| field.element(i as u64).expect("colour within field")).collect();
        return Ok(BoundaryData::global(n, field, &u));
    }
    let values = n
        .block_boundaries()
        .iter()
        .map(|bs| (0..bs.len()).map(|i| field.element(i as u64).expect("field holds every block")).collect())
        .collect();
    Ok(BoundaryData { field, values })
}

/// Adjacency on boundary positions: `i ~ j` when some path meets `∂B`
/// exactly in `{i, j}`, equivalently when they share a block.
pub fn crossing_graph(n: &Network) -> Vec<Vec<bool>> {
    let boundary: Vec<VertexId> = n.boundary_vertices().collect();
    let pos = |v: VertexId| boundary.iter().position(|&b| b == v).expect("boundary node");
    let mut adj = vec![vec![false; boundary.len()]; boundary.len()];
    for bs in n.block_boundaries() {
        for &a in &bs {
            for &b in &bs {
                if a != b {
                    adj[pos(a)][pos(b)] = true;
                }
            }
        }
    }
    adj
}

/// A proper colouring with at most `k` colours, by backtracking.
fn colour_with(adj: &[Vec<bool>], k: usize) -> Option<Vec<usize>> {
    fn go(adj: &[Vec<bool>], k: usize, c: &mut Vec<usize>) -> bool {
        let v = c.len();
        if v == adj.len() {
            return true;
        }
        for colour in 0..k {
            if (0..v).all(|w| !adj[v][w] || c[w] != colour) {
                c.push(colour);
                if go(adj, k, c) {
                    return true;
                }
                c.pop();
            }
        }
        false
    }
    let mut c = Vec::new();
    go(adj, k, &mut c).then_some(c)
}

pub fn chromatic_number(adj: &[Vec<bool>]) -> usize {
    (0..=adj.len()).find(|&k| colour_with(adj, k).is_some()).unwrap_or(adj.len())
}

/// Columns indexed by `E ∪ {eh}`, rows by interior vertices then `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    pub field: Field,
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub columns: Vec<Vec<Scalar>>,
}

impl RepMatrix {
    pub fn rank(&self, cols: EdgeSet) -> usize {
        let picked: Vec<&[Scalar]> = cols.iter().map(|c| self.columns[c].as_slice()).collect();
        rank(self.field, &picked)
    }

    pub fn matroid(&self) -> Matroid {
        let me = self.clone();
        Matroid::from_fn(self.column_labels.clone(), move |x| me.rank(x)).expect("at most 64 columns")
    }

    /// Row-major entries as exact strings.
    pub fn dump(&self) -> Vec<Vec<String>> {
        (0..self.row_labels.len()).map(|r| self.columns.iter().map(|c| c[r].to_string()).collect()).collect()
    }
}

/// The matrix of the arrangement `A(Γ, u)` and its cone: interior edge `ij`
/// gives `δᵢ − δⱼ`, boundary edge `ij` with `j ∈ ∂B` gives `δᵢ − u(j)·δ_h`,
/// and `eh` gives `δ_h`.
pub fn representation_matrix(n: &Network, u: &BoundaryData) -> Result<RepMatrix, LinRepError> {
    let blocks = n.block_boundaries();
    for (bs, vs) in blocks.iter().zip(&u.values) {
        if bs.len() != vs.len() {
            return Err(LinRepError::ShapeMismatch { expected: bs.len(), got: vs.len() });
        }
    }
    if blocks.len() != u.values.len() {
        return Err(LinRepError::ShapeMismatch { expected: blocks.len(), got: u.values.len() });
    }
    let f = u.field;
    let interior: Vec<VertexId> = n.interior_vertices().collect();
    let row = |v: VertexId| interior.iter().position(|&w| w == v).expect("interior vertex");
    let h = interior.len();
    let edge_blocks = n.edge_blocks();
    let mut columns = Vec::with_capacity(n.edge_count() + 1);
    for (i, e) in n.edges().iter().enumerate() {
        let mut col = vec![f.zero(); h + 1];
        let (a, b) = e.ends;
        match (n.is_boundary(a), n.is_boundary(b)) {
            (false, false) => {
                col[row(a)] = f.one();
                col[row(b)] = f.one().neg();
            }
            (true, false) | (false, true) => {
                let (bd, inner) = if n.is_boundary(a) { (a, b) } else { (b, a) };
                col[row(inner)] = f.one();
                col[h] = u.value(n, edge_blocks[i], bd).neg();
            }
            (true, true) => unreachable!("validated networks have no boundary edges"),
        }
        columns.push(col);
    }
    let mut eh = vec![f.zero(); h + 1];
    eh[h] = f.one();
    columns.push(eh);
    let mut row_labels: Vec<String> = interior.iter().map(|&v| n.vertex_label(v).to_string()).collect();
    row_labels.push("h".into());
    Ok(RepMatrix { field: f, row_labels, column_labels: n.ground_labels(), columns })
}

/// A deletion/contraction exhibiting `U_{2,s+1}` inside `M(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub block: usize,
    pub s: usize,
    pub delete: Vec<String>,
    pub contract: Vec<String>,
    /// Whether the minor was checked to be `U_{2,s+1}`.
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub enum Representability {
    Representable { u: BoundaryData, matrix: RepMatrix, verified: bool },
    NotRepresentable(MinorWitness),
}

impl Representability {
    pub fn is_representable(&self) -> bool {
        matches!(self, Representability::Representable { .. })
    }
}

/// Decides representability over `field` by the largest block boundary.
/// Positive answers carry a matrix checked against `M(N)` on every subset when
/// the ground set is within the matroid limit; negative answers carry a
/// verified `U_{2,s+1}` minor.
pub fn representability(n: &Network, field: Field) -> Result<Representability, MatroidError> {
    let m = dirichlet_matroid(n);
    match block_injective_u(n, field) {
        Ok(u) => {
            let matrix = representation_matrix(n, &u).expect("shape from the network");
            let verified = m.check_limit().is_ok() && matrix.matroid().same_rank_function(&m)?;
            Ok(Representability::Representable { u, matrix, verified })
        }
        Err(_) => Ok(Representability::NotRepresentable(uniform_minor(n, &m)?)),
    }
}

/// Keep the edges of the largest block, one edge per boundary node, and
/// contract the interior edges: a star on `s + 1` vertices remains.
pub fn uniform_minor(n: &Network, m: &Matroid) -> Result<MinorWitness, MatroidError> {
    let boundaries = n.block_boundaries();
    let (block, s) = boundaries.iter().enumerate().map(|(i, b)| (i, b.len())).max_by_key(|&(i, l)| (l, std::cmp::Reverse(i))).expect("a block");
    let edge_blocks = n.edge_blocks();
    let mut keep = EdgeSet::EMPTY;
    let mut contract = EdgeSet::EMPTY;
    let mut seen = vec![false; n.vertex_count()];
    for (i, e) in n.edges().iter().enumerate().filter(|(i, _)| edge_blocks[*i] == block) {
        let (a, b) = e.ends;
        match (n.is_boundary(a), n.is_boundary(b)) {
            (false, false) => contract.insert(i),
            _ => {
                let bd = if n.is_boundary(a) { a } else { b };
                if !seen[bd] {
                    seen[bd] = true;
                    keep.insert(i);
                }
            }
        }
    }
    let delete = n.all_edges().difference(keep).difference(contract);
    let verified = if m.len() <= m.limit() {
        let minor = m.minor(delete, contract)?;
        minor.same_rank_function(&Matroid::uniform(2, s + 1).with_labels(minor.labels().to_vec()))?
    } else {
        false
    };
    Ok(MinorWitness { block, s, delete: n.set_labels(delete), contract: n.set_labels(contract), verified })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSizeReport {
    /// `max_U |U ∩ ∂B|`.
    pub min_size: usize,
    /// Chromatic number of [`crossing_graph`].
    pub crossing_chromatic: usize,
    pub agree: bool,
}

pub fn min_field_size(n: &Network) -> FieldSizeReport {
    let min_size = n.max_block_boundary();
    let crossing_chromatic = chromatic_number(&crossing_graph(n));
    FieldSizeReport { min_size, crossing_chromatic, agree: min_size == crossing_chromatic }
}
