//! Blocks, tracts, crossings and groves.

use std::collections::BTreeSet;

use super::{sort_family, Network, VertexId};
use crate::edgeset::EdgeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroveMode {
    /// Σ₀: groves containing no crossing.
    NoCrossing,
    /// Σ₁: groves containing exactly one crossing.
    OneCrossing,
    All,
}

/// Union-find small enough to clone at every recursion step.
#[derive(Clone)]
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu((0..n).collect())
    }

    fn find(&self, mut v: usize) -> usize {
        while self.0[v] != v {
            v = self.0[v];
        }
        v
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl Network {
    /// Connected components of `Γ ∖ ∂B`, each sorted, ordered by least vertex.
    pub fn interior_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in self.interior_vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in self.neighbors(v) {
                    if !self.is_boundary(w) && comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Index into [`Network::interior_components`] for every interior vertex.
    pub fn interior_component_index(&self) -> Vec<Option<usize>> {
        let mut idx = vec![None; self.vertex_count()];
        for (i, comp) in self.interior_components().iter().enumerate() {
            for &v in comp {
                idx[v] = Some(i);
            }
        }
        idx
    }

    /// Blocks: each interior component together with its adjacent boundary nodes.
    pub fn blocks(&self) -> Vec<Vec<VertexId>> {
        self.interior_components()
            .into_iter()
            .map(|comp| {
                let mut set: BTreeSet<VertexId> = comp.iter().copied().collect();
                for &v in &comp {
                    set.extend(self.neighbors(v).iter().map(|&(w, _)| w).filter(|&w| self.is_boundary(w)));
                }
                set.into_iter().collect()
            })
            .collect()
    }

    /// `U ∩ ∂B` for every block `U`, in block order.
    pub fn block_boundaries(&self) -> Vec<Vec<VertexId>> {
        self.blocks().into_iter().map(|b| b.into_iter().filter(|&v| self.is_boundary(v)).collect()).collect()
    }

    /// `max_U |U ∩ ∂B|`.
    pub fn max_block_boundary(&self) -> usize {
        self.block_boundaries().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Block index of each edge. Every edge has an interior end since the
    /// boundary induces no edges.
    pub fn edge_blocks(&self) -> Vec<usize> {
        let idx = self.interior_component_index();
        self.edges()
            .iter()
            .map(|e| idx[e.ends.0].or(idx[e.ends.1]).expect("edge with two boundary ends"))
            .collect()
    }

    /// Tracts: the edges meeting each interior component.
    pub fn tracts(&self) -> Vec<EdgeSet> {
        let mut tracts = vec![EdgeSet::EMPTY; self.interior_components().len()];
        for (e, b) in self.edge_blocks().into_iter().enumerate() {
            tracts[b].insert(e);
        }
        tracts
    }

    /// Every crossing: edge sets of simple paths joining two distinct boundary
    /// nodes through interior vertices only. Sorted.
    pub fn crossings(&self) -> Vec<EdgeSet> {
        let mut out = Vec::new();
        let mut on_path = vec![false; self.vertex_count()];
        for b in self.boundary_vertices() {
            on_path[b] = true;
            for &(w, e) in self.neighbors(b) {
                self.extend_crossings(b, w, EdgeSet::singleton(e), &mut on_path, &mut out);
            }
            on_path[b] = false;
        }
        sort_family(&mut out);
        out
    }

    fn extend_crossings(&self, start: VertexId, v: VertexId, path: EdgeSet, on_path: &mut [bool], out: &mut Vec<EdgeSet>) {
        if self.is_boundary(v) {
            // Each path is found from both ends; keep the one starting at the smaller node.
            if v > start {
                out.push(path);
            }
            return;
        }
        on_path[v] = true;
        for &(w, e) in self.neighbors(v) {
            if !on_path[w] {
                self.extend_crossings(start, w, path.with(e), on_path, out);
            }
        }
        on_path[v] = false;
    }

    /// Whether the subgraph with edges `x` contains a crossing, i.e. joins two
    /// boundary nodes through interior vertices.
    pub fn contains_crossing(&self, x: EdgeSet) -> bool {
        let mut dsu = Dsu::new(self.vertex_count());
        for e in x {
            let (a, b) = self.edge(e).ends;
            if !self.is_boundary(a) && !self.is_boundary(b) {
                dsu.union(a, b);
            }
        }
        let mut attached: Vec<Option<VertexId>> = vec![None; self.vertex_count()];
        for e in x {
            let (a, b) = self.edge(e).ends;
            let (bd, inner) = match (self.is_boundary(a), self.is_boundary(b)) {
                (true, false) => (a, b),
                (false, true) => (b, a),
                _ => continue,
            };
            let root = dsu.find(inner);
            match attached[root] {
                None => attached[root] = Some(bd),
                Some(prev) if prev != bd => return true,
                _ => {}
            }
        }
        false
    }

    /// Number of crossings contained in a forest `f`: `Σ C(t, 2)` over its
    /// components, with `t` the boundary nodes in the component.
    pub fn forest_crossing_count(&self, f: EdgeSet) -> usize {
        let mut dsu = Dsu::new(self.vertex_count());
        for e in f {
            let (a, b) = self.edge(e).ends;
            dsu.union(a, b);
        }
        let mut per_root = vec![0usize; self.vertex_count()];
        for b in self.boundary_vertices() {
            per_root[dsu.find(b)] += 1;
        }
        per_root.iter().map(|&t| t * t.saturating_sub(1) / 2).sum()
    }

    pub fn is_forest(&self, f: EdgeSet) -> bool {
        let mut dsu = Dsu::new(self.vertex_count());
        f.iter().all(|e| {
            let (a, b) = self.edge(e).ends;
            dsu.union(a, b)
        })
    }

    /// A forest covering every interior vertex in which every component meets `∂B`.
    pub fn is_grove(&self, f: EdgeSet) -> bool {
        if !self.is_forest(f) {
            return false;
        }
        let mut dsu = Dsu::new(self.vertex_count());
        for e in f {
            let (a, b) = self.edge(e).ends;
            dsu.union(a, b);
        }
        let mut anchored = vec![false; self.vertex_count()];
        for b in self.boundary_vertices() {
            anchored[dsu.find(b)] = true;
        }
        self.interior_vertices().all(|v| anchored[dsu.find(v)])
    }

    /// Component representative of every vertex in the spanning subgraph `(V, x)`.
    pub fn component_labels(&self, x: EdgeSet) -> Vec<VertexId> {
        let mut dsu = Dsu::new(self.vertex_count());
        for e in x {
            let (a, b) = self.edge(e).ends;
            dsu.union(a, b);
        }
        (0..self.vertex_count()).map(|v| dsu.find(v)).collect()
    }

    /// Per-vertex degree in the subgraph with edges `x`, and whether those
    /// edges form a single connected piece.
    fn degrees_and_connected(&self, x: EdgeSet) -> (Vec<usize>, bool) {
        let mut deg = vec![0; self.vertex_count()];
        let mut dsu = Dsu::new(self.vertex_count());
        for e in x {
            let (a, b) = self.edge(e).ends;
            deg[a] += 1;
            deg[b] += 1;
            dsu.union(a, b);
        }
        let mut roots = deg.iter().enumerate().filter(|(_, &d)| d > 0).map(|(v, _)| dsu.find(v));
        let first = roots.next();
        let connected = roots.all(|r| Some(r) == first);
        (deg, connected)
    }

    /// Whether `x` is the edge set of a circle of `Γ`.
    pub fn is_circle(&self, x: EdgeSet) -> bool {
        let (deg, connected) = self.degrees_and_connected(x);
        !x.is_empty() && connected && deg.iter().all(|&d| d == 0 || d == 2)
    }

    /// Whether `x` is exactly a crossing.
    pub fn is_crossing(&self, x: EdgeSet) -> bool {
        let (deg, connected) = self.degrees_and_connected(x);
        if x.is_empty() || !connected {
            return false;
        }
        let mut ends = 0;
        for (v, &d) in deg.iter().enumerate() {
            match (d, self.is_boundary(v)) {
                (0, _) | (2, false) => {}
                (1, true) => ends += 1,
                _ => return false,
            }
        }
        ends == 2
    }

    /// Boundary nodes met by `x`.
    pub fn boundary_met(&self, x: EdgeSet) -> usize {
        self.vertices_met(x).iter().enumerate().filter(|&(v, &m)| m && self.is_boundary(v)).count()
    }

    /// Length of a shortest crossing.
    pub fn min_crossing_len(&self) -> usize {
        self.crossings().iter().map(|c| c.len()).min().expect("a network always has a crossing")
    }

    /// Groves by recursive forest extension over the edges in index order.
    ///
    /// Two union-finds run in parallel: one on `Γ` rejects cycles, one with the
    /// boundary pre-merged counts cycles of `oΓ`, each of which closes at least
    /// one new crossing. That count prunes the Σ₀ and Σ₁ searches, and a vertex
    /// whose last incident edge has been passed uncovered prunes all modes.
    /// Worst case remains `2^|E|`.
    pub fn groves(&self, mode: GroveMode) -> Vec<EdgeSet> {
        let n = self.vertex_count();
        let mut last_edge = vec![None; n];
        for (i, e) in self.edges().iter().enumerate() {
            last_edge[e.ends.0] = Some(i);
            last_edge[e.ends.1] = Some(i);
        }
        let mut merged = Dsu::new(n);
        let boundary: Vec<_> = self.boundary_vertices().collect();
        for w in boundary.windows(2) {
            merged.union(w[0], w[1]);
        }
        let search = GroveSearch { net: self, mode, last_edge };
        let mut out = Vec::new();
        search.extend(0, EdgeSet::EMPTY, vec![false; n], Dsu::new(n), merged, 0, &mut out);
        sort_family(&mut out);
        out
    }
}

struct GroveSearch<'a> {
    net: &'a Network,
    mode: GroveMode,
    last_edge: Vec<Option<usize>>,
}

impl GroveSearch<'_> {
    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        i: usize,
        chosen: EdgeSet,
        covered: Vec<bool>,
        plain: Dsu,
        merged: Dsu,
        o_cycles: usize,
        out: &mut Vec<EdgeSet>,
    ) {
        let limit = match self.mode {
            GroveMode::NoCrossing => 0,
            GroveMode::OneCrossing => 1,
            GroveMode::All => usize::MAX,
        };
        if o_cycles > limit {
            return;
        }
        // An interior vertex none of whose edges can still be chosen is lost.
        let stranded = self
            .net
            .interior_vertices()
            .any(|v| !covered[v] && self.last_edge[v].is_none_or(|last| last < i));
        if stranded {
            return;
        }
        if i == self.net.edge_count() {
            if self.net.is_grove(chosen) {
                let crossings = self.net.forest_crossing_count(chosen);
                let keep = match self.mode {
                    GroveMode::NoCrossing => crossings == 0,
                    GroveMode::OneCrossing => crossings == 1,
                    GroveMode::All => true,
                };
                if keep {
                    out.push(chosen);
                }
            }
            return;
        }
        self.extend(i + 1, chosen, covered.clone(), plain.clone(), merged.clone(), o_cycles, out);
        let (a, b) = self.net.edge(i).ends;
        let mut plain = plain;
        if !plain.union(a, b) {
            return;
        }
        let mut merged = merged;
        let closes = !merged.union(a, b);
        let mut covered = covered;
        covered[a] = true;
        covered[b] = true;
        self.extend(i + 1, chosen.with(i), covered, plain, merged, o_cycles + closes as usize, out);
    }
}
