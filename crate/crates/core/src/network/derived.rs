//! Multigraphs and the graphs derived from a network: `oΓ` and `∇Γ`.

use std::collections::HashSet;

use super::{Network, NetworkError};
use crate::edgeset::EdgeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiEdge {
    pub ends: (usize, usize),
    pub label: String,
}

impl MultiEdge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }
}

/// A graph with loops and parallel edges allowed and unique edge labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<String>,
    edges: Vec<MultiEdge>,
    marked: Option<usize>,
}

impl MultiGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<MultiEdge>, marked: Option<usize>) -> Result<MultiGraph, NetworkError> {
        let mut seen = HashSet::new();
        for e in &edges {
            if !seen.insert(e.label.as_str()) {
                return Err(NetworkError::DuplicateLabel(e.label.clone()));
            }
            if e.ends.0 >= vertices.len() || e.ends.1 >= vertices.len() {
                return Err(NetworkError::UnknownVertex(format!("#{}", e.ends.0.max(e.ends.1))));
            }
        }
        if edges.len() > crate::edgeset::MAX_ELEMENTS {
            return Err(NetworkError::TooManyEdges(edges.len()));
        }
        Ok(MultiGraph { vertices, edges, marked })
    }

    /// Builds from `(u, v)` index pairs labelled `e0, e1, ...`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> MultiGraph {
        let vertices = (0..n).map(|i| format!("v{i}")).collect();
        let edges = pairs.iter().enumerate().map(|(i, &ends)| MultiEdge { ends, label: format!("e{i}") }).collect();
        MultiGraph::new(vertices, edges, None).expect("well-formed pairs")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &MultiEdge {
        &self.edges[e]
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    /// The identified vertex `v̄` of `oΓ`, when this graph is one.
    pub fn marked(&self) -> Option<usize> {
        self.marked
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(MultiEdge::is_loop)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges.iter().all(|e| !e.is_loop() && seen.insert((e.ends.0.min(e.ends.1), e.ends.0.max(e.ends.1))))
    }

    /// Component label per vertex of the spanning subgraph with edges `x`, and the count.
    pub fn components(&self, x: EdgeSet) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        for e in x {
            let (a, b) = self.edges[e].ends;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut out = vec![0; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            out[v] = label[r];
        }
        (out, count)
    }

    pub fn component_count(&self, x: EdgeSet) -> usize {
        self.components(x).1
    }

    /// Rank in the cycle matroid: `|V| − c(X)`.
    pub fn graphic_rank(&self, x: EdgeSet) -> usize {
        self.vertex_count() - self.component_count(x)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count(self.all_edges()) <= 1
    }

    /// Every circle (edge set of a simple closed walk), loops and digons
    /// included. Sorted.
    pub fn circles(&self) -> Vec<EdgeSet> {
        let n = self.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adjacency[e.ends.0].push((e.ends.1, i));
                adjacency[e.ends.1].push((e.ends.0, i));
            }
        }
        let mut found = HashSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                found.insert(EdgeSet::singleton(i));
            }
        }
        // Each circle is found from its least vertex, in both directions.
        let mut on_path = vec![false; n];
        for s in 0..n {
            on_path[s] = true;
            circle_dfs(&adjacency, s, s, EdgeSet::EMPTY, None, &mut on_path, &mut found);
            on_path[s] = false;
        }
        let mut out: Vec<_> = found.into_iter().collect();
        super::sort_family(&mut out);
        out
    }

    /// Contracts non-loop edge `e`. Remaining edges keep their relative order.
    pub fn contract(&self, e: usize) -> MultiGraph {
        let (a, b) = self.edges[e].ends;
        let (keep, gone) = (a.min(b), a.max(b));
        let remap = |v: usize| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        let mut vertices = self.vertices.clone();
        vertices[keep] = format!("{}+{}", self.vertices[keep], self.vertices[gone]);
        vertices.remove(gone);
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, x)| MultiEdge { ends: (remap(x.ends.0), remap(x.ends.1)), label: x.label.clone() })
            .collect();
        let marked = self.marked.map(remap);
        MultiGraph { vertices, edges, marked }
    }

    /// Removes the edges in `x`, keeping all vertices.
    pub fn delete(&self, x: EdgeSet) -> MultiGraph {
        MultiGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().enumerate().filter(|(i, _)| !x.contains(*i)).map(|(_, e)| e.clone()).collect(),
            marked: self.marked,
        }
    }

    /// Smallest vertex set of size below `k` whose removal disconnects the
    /// graph, if any. Graphs without such a set are `k`-connected; complete
    /// graphs are therefore `k`-connected for every `k`.
    pub fn separating_set(&self, k: usize) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut adjacency = vec![0u64; n];
        for e in &self.edges {
            if !e.is_loop() {
                adjacency[e.ends.0] |= 1 << e.ends.1;
                adjacency[e.ends.1] |= 1 << e.ends.0;
            }
        }
        let all = EdgeSet::full(n);
        for size in 0..k.min(n) {
            let mut candidates: Vec<EdgeSet> = all.subsets().filter(|s| s.len() == size).collect();
            super::sort_family(&mut candidates);
            for removed in candidates {
                let rest = all.difference(removed);
                if rest.len() >= 2 && !induced_connected(&adjacency, rest) {
                    return Some(removed.iter().collect());
                }
            }
        }
        None
    }

    pub fn is_k_connected(&self, k: usize) -> bool {
        self.is_connected() && self.separating_set(k).is_none()
    }
}

fn induced_connected(adjacency: &[u64], set: EdgeSet) -> bool {
    let Some(start) = set.min() else { return true };
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adjacency[v] & set.bits() & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == set.bits()
}

fn circle_dfs(
    adjacency: &[Vec<(usize, usize)>],
    start: usize,
    v: usize,
    path: EdgeSet,
    first: Option<usize>,
    on_path: &mut [bool],
    found: &mut HashSet<EdgeSet>,
) {
    for &(w, e) in &adjacency[v] {
        if path.contains(e) || w < start {
            continue;
        }
        if w == start {
            if first != Some(e) {
                found.insert(path.with(e));
            }
        } else if !on_path[w] {
            on_path[w] = true;
            circle_dfs(adjacency, start, w, path.with(e), first.or(Some(e)), on_path, found);
            on_path[w] = false;
        }
    }
}

/// Label of the identified vertex of `oΓ`.
pub const IDENTIFIED_VERTEX: &str = "v*";

impl Network {
    /// `oΓ`: all boundary nodes identified to one vertex `v̄`, placed last.
    /// Edge `i` of the result is edge `i` of the network.
    pub fn identify_boundary(&self) -> MultiGraph {
        let mut index = vec![0; self.vertex_count()];
        let mut vertices = Vec::new();
        for v in self.interior_vertices() {
            index[v] = vertices.len();
            vertices.push(self.vertex_label(v).to_string());
        }
        let bar = vertices.len();
        vertices.push(IDENTIFIED_VERTEX.to_string());
        for v in self.boundary_vertices() {
            index[v] = bar;
        }
        let edges = self
            .edges()
            .iter()
            .map(|e| MultiEdge { ends: (index[e.ends.0], index[e.ends.1]), label: e.label.clone() })
            .collect();
        MultiGraph::new(vertices, edges, Some(bar)).expect("labels inherited from a valid network")
    }

    /// `Γ` itself as a multigraph with the network's labels.
    pub fn graph(&self) -> MultiGraph {
        let edges = self.edges().iter().map(|e| MultiEdge { ends: e.ends, label: e.label.clone() }).collect();
        MultiGraph::new(self.vertex_labels().to_vec(), edges, None).expect("labels inherited from a valid network")
    }

    /// `∇Γ`: the network graph with a clique on `∂B`. Edges `0..|E|` are the
    /// network's; the added edges follow in lexicographic order of their ends.
    pub fn add_clique(&self) -> MultiGraph {
        let taken: HashSet<&str> = self.edges().iter().map(|e| e.label.as_str()).collect();
        let mut edges: Vec<MultiEdge> =
            self.edges().iter().map(|e| MultiEdge { ends: e.ends, label: e.label.clone() }).collect();
        let boundary: Vec<_> = self.boundary_vertices().collect();
        for (i, &a) in boundary.iter().enumerate() {
            for &b in &boundary[i + 1..] {
                let mut label = format!("+{}-{}", self.vertex_label(a), self.vertex_label(b));
                while taken.contains(label.as_str()) {
                    label.push('\'');
                }
                edges.push(MultiEdge { ends: (a, b), label });
            }
        }
        MultiGraph::new(self.vertex_labels().to_vec(), edges, None).expect("clique labels are fresh")
    }
}
