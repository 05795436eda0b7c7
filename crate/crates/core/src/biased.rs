//! Biased graphs: a multigraph with a theta-closed class of balanced circles.

use std::collections::HashMap;

use thiserror::Error;

use crate::edgeset::EdgeSet;
use crate::matroid::Matroid;
use crate::network::{MultiEdge, MultiGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BiasedError {
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(String),
    #[error("graph with {size} edges exceeds the limit of {limit}")]
    GraphTooLarge { size: usize, limit: usize },
    #[error("{0:?} is not a circle of the graph")]
    NotACircle(EdgeSet),
}

#[derive(Clone, Debug)]
pub struct BiasedGraph {
    graph: MultiGraph,
    circles: Vec<EdgeSet>,
    balanced: Vec<bool>,
    unbalanced: Vec<EdgeSet>,
}

/// A theta (three circles pairwise sharing a path) whose balanced circles do
/// not form a linear subclass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaViolation {
    pub balanced: [EdgeSet; 2],
    pub unbalanced: EdgeSet,
}

impl BiasedGraph {
    /// Enumerates the circles of `graph` and marks each by `is_balanced`.
    pub fn new(graph: MultiGraph, is_balanced: impl Fn(EdgeSet) -> bool) -> BiasedGraph {
        let circles = graph.circles();
        let balanced = circles.iter().map(|&c| is_balanced(c)).collect();
        BiasedGraph::assemble(graph, circles, balanced)
    }

    /// Balanced circles listed explicitly; all others are unbalanced.
    pub fn from_balanced(graph: MultiGraph, balanced: &[EdgeSet]) -> Result<BiasedGraph, BiasedError> {
        let circles = graph.circles();
        if let Some(&bad) = balanced.iter().find(|b| !circles.contains(b)) {
            return Err(BiasedError::NotACircle(bad));
        }
        Ok(BiasedGraph::new(graph, |c| balanced.contains(&c)))
    }

    fn assemble(graph: MultiGraph, circles: Vec<EdgeSet>, balanced: Vec<bool>) -> BiasedGraph {
        let unbalanced = circles.iter().zip(&balanced).filter(|(_, &b)| !b).map(|(&c, _)| c).collect();
        BiasedGraph { graph, circles, balanced, unbalanced }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn circles(&self) -> &[EdgeSet] {
        &self.circles
    }

    pub fn balanced_circles(&self) -> Vec<EdgeSet> {
        self.circles.iter().zip(&self.balanced).filter(|(_, &b)| b).map(|(&c, _)| c).collect()
    }

    pub fn unbalanced_circles(&self) -> &[EdgeSet] {
        &self.unbalanced
    }

    /// Whether every circle inside `x` is balanced.
    pub fn is_balanced(&self, x: EdgeSet) -> bool {
        self.unbalanced.iter().all(|c| !c.is_subset(x))
    }

    /// `b(X)`: components of the spanning subgraph `(V, X)` containing no
    /// unbalanced circle. Isolated vertices count as balanced components.
    pub fn balanced_components(&self, x: EdgeSet) -> usize {
        let (comp, count) = self.graph.components(x);
        let mut spoiled = vec![false; count];
        for c in self.unbalanced.iter().filter(|c| c.is_subset(x)) {
            let e = c.iter().next().expect("circles are nonempty");
            spoiled[comp[self.graph.edge(e).ends.0]] = true;
        }
        count - spoiled.iter().filter(|&&s| s).count()
    }

    /// Frame matroid rank `|V| − b(X)`.
    pub fn frame_rank(&self, x: EdgeSet) -> usize {
        self.graph.vertex_count() - self.balanced_components(x)
    }

    /// Complete lift rank on `E ∪ {e₀}` with `e₀` at index `|E|`:
    /// `|V| − c(X)` for balanced `X ⊆ E`, otherwise `|V| + 1 − c(X ∖ e₀)`.
    pub fn lift0_rank(&self, x: EdgeSet) -> usize {
        let extra = self.graph.edge_count();
        let xe = x.without(extra);
        let c = self.graph.component_count(xe);
        let n = self.graph.vertex_count();
        if x.contains(extra) || !self.is_balanced(xe) {
            n + 1 - c
        } else {
            n - c
        }
    }

    /// `G(Ω)` on the graph's edge labels.
    pub fn frame_matroid(&self) -> Matroid {
        let me = self.clone();
        Matroid::from_fn(self.graph.edge_labels(), move |x| me.frame_rank(x)).expect("graph edges fit an edge set")
    }

    /// `L₀(Ω)` with the extra element labelled `extra_label`.
    pub fn lift0_matroid(&self, extra_label: &str) -> Matroid {
        let me = self.clone();
        let mut labels = self.graph.edge_labels();
        labels.push(extra_label.to_string());
        Matroid::from_fn(labels, move |x| me.lift0_rank(x)).expect("graph edges fit an edge set")
    }

    /// Adds an unbalanced loop at vertex `v` as the last edge.
    pub fn with_unbalanced_loop(&self, v: usize, label: &str) -> BiasedGraph {
        let mut edges = self.graph.edges().to_vec();
        let e = edges.len();
        edges.push(MultiEdge { ends: (v, v), label: label.to_string() });
        let graph = MultiGraph::new(self.graph.vertex_labels().to_vec(), edges, self.graph.marked()).expect("fresh loop label");
        let mut circles = self.circles.clone();
        let mut balanced = self.balanced.clone();
        circles.push(EdgeSet::singleton(e));
        balanced.push(false);
        BiasedGraph::assemble(graph, circles, balanced)
    }

    /// `Ω/e`: a circle `C` of the contracted graph is balanced iff `C` or
    /// `C ∪ e` is a balanced circle of `Ω`. Edges after `e` shift down by one.
    pub fn contract(&self, e: usize) -> Result<BiasedGraph, BiasedError> {
        if self.graph.edge(e).is_loop() {
            return Err(BiasedError::LoopContraction(self.graph.edge(e).label.clone()));
        }
        let status: HashMap<EdgeSet, bool> = self.circles.iter().copied().zip(self.balanced.iter().copied()).collect();
        let lift = |c: EdgeSet| -> EdgeSet { c.iter().map(|i| if i >= e { i + 1 } else { i }).collect() };
        let graph = self.graph.contract(e);
        Ok(BiasedGraph::new(graph, |c| {
            let old = lift(c);
            status.get(&old).copied().unwrap_or(false) || status.get(&old.with(e)).copied().unwrap_or(false)
        }))
    }

    /// Checks theta closure over every pair of circles sharing an edge whose
    /// symmetric difference is again a circle. Returns the first violation.
    pub fn theta_violation(&self, limit: usize) -> Result<Option<ThetaViolation>, BiasedError> {
        if self.graph.edge_count() > limit {
            return Err(BiasedError::GraphTooLarge { size: self.graph.edge_count(), limit });
        }
        let status: HashMap<EdgeSet, bool> = self.circles.iter().copied().zip(self.balanced.iter().copied()).collect();
        for (i, &c1) in self.circles.iter().enumerate() {
            for &c2 in &self.circles[i + 1..] {
                if c1.is_disjoint(c2) {
                    continue;
                }
                let Some(&b3) = status.get(&c1.symmetric_difference(c2)) else { continue };
                let c3 = c1.symmetric_difference(c2);
                let trio = [(c1, status[&c1]), (c2, status[&c2]), (c3, b3)];
                if trio.iter().filter(|t| t.1).count() == 2 {
                    let bal: Vec<EdgeSet> = trio.iter().filter(|t| t.1).map(|t| t.0).collect();
                    let unb = trio.iter().find(|t| !t.1).unwrap().0;
                    return Ok(Some(ThetaViolation { balanced: [bal[0], bal[1]], unbalanced: unb }));
                }
            }
        }
        Ok(None)
    }

    pub fn verify_linear_subclass(&self, limit: usize) -> Result<bool, BiasedError> {
        Ok(self.theta_violation(limit)?.is_none())
    }

    /// Vertices met by the edges of `x`.
    pub fn vertices_met(&self, x: EdgeSet) -> EdgeSet {
        x.iter()
            .fold(EdgeSet::EMPTY, |acc, e| {
                let (a, b) = self.graph.edge(e).ends;
                acc.with(a).with(b)
            })
    }
}
