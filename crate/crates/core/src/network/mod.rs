//! Networks: connected simple graphs with a designated independent boundary set.

mod derived;
pub mod generate;
mod structure;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edgeset::EdgeSet;

pub use derived::{MultiEdge, MultiGraph};
pub use structure::GroveMode;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Label of the extra ground element of a Dirichlet matroid (the cone hyperplane).
pub const EH_LABEL: &str = "eh";

/// Networks are capped so that `E ∪ {eh}` fits a 64-bit [`EdgeSet`].
pub const MAX_NETWORK_EDGES: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("network is disconnected")]
    Disconnected,
    #[error("loop or multiple edge between {0} and {1}")]
    LoopOrMultiEdge(String, String),
    #[error("boundary must contain at least 2 vertices, got {0}")]
    BoundaryTooSmall(usize),
    #[error("boundary must be a proper subset of the vertices")]
    NoInteriorVertex,
    #[error("edge {0}-{1} joins two boundary nodes")]
    BoundaryEdge(String, String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge label {0}")]
    DuplicateLabel(String),
    #[error("edge label {0} is reserved")]
    ReservedLabel(String),
    #[error("{0} edges exceeds the supported maximum of {MAX_NETWORK_EDGES}")]
    TooManyEdges(usize),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: (VertexId, VertexId),
    pub label: String,
}

impl Edge {
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }
}

/// Raw JSON description of a network.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NetworkSpec {
    pub vertices: Vec<String>,
    pub boundary: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeSpec {
    Labeled(String, String, String),
    Pair(String, String),
}

impl EdgeSpec {
    fn ends(&self) -> (&str, &str) {
        match self {
            EdgeSpec::Labeled(u, v, _) | EdgeSpec::Pair(u, v) => (u, v),
        }
    }

    fn label(&self) -> String {
        match self {
            EdgeSpec::Labeled(_, _, l) => l.clone(),
            EdgeSpec::Pair(u, v) => default_edge_label(u, v),
        }
    }
}

/// `"u-v"` with endpoints in lexicographic order.
pub fn default_edge_label(u: &str, v: &str) -> String {
    if u <= v {
        format!("{u}-{v}")
    } else {
        format!("{v}-{u}")
    }
}

/// Rotation system and boundary order of a disk embedding, as read from JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSpec {
    /// Vertex label to incident edge labels in clockwise order.
    pub rotation: BTreeMap<String, Vec<String>>,
    /// Boundary node labels in clockwise order along the disk boundary.
    pub boundary_order: Vec<String>,
}

/// A validated network `(Γ, ∂B)`.
///
/// Edges are stored in natural label order, so edge indices (and every
/// [`EdgeSet`] over them) enumerate in label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    vertices: Vec<String>,
    boundary: Vec<bool>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Network {
    /// Checks every network invariant and builds the network.
    pub fn validate(spec: &NetworkSpec) -> Result<Network, NetworkError> {
        let mut index: HashMap<&str, VertexId> = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(NetworkError::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |label: &str| index.get(label).copied().ok_or_else(|| NetworkError::UnknownVertex(label.to_string()));

        let mut boundary = vec![false; spec.vertices.len()];
        for b in &spec.boundary {
            let v = lookup(b)?;
            if boundary[v] {
                return Err(NetworkError::DuplicateVertex(b.clone()));
            }
            boundary[v] = true;
        }

        let mut edges = Vec::with_capacity(spec.edges.len());
        let mut seen_pairs = HashSet::new();
        let mut seen_labels = HashSet::new();
        for e in &spec.edges {
            let (a, b) = e.ends();
            let (u, v) = (lookup(a)?, lookup(b)?);
            if u == v || !seen_pairs.insert((u.min(v), u.max(v))) {
                return Err(NetworkError::LoopOrMultiEdge(a.to_string(), b.to_string()));
            }
            let label = e.label();
            if label == EH_LABEL {
                return Err(NetworkError::ReservedLabel(label));
            }
            if !seen_labels.insert(label.clone()) {
                return Err(NetworkError::DuplicateLabel(label));
            }
            edges.push(Edge { ends: (u, v), label });
        }

        let m = boundary.iter().filter(|&&b| b).count();
        if m < 2 {
            return Err(NetworkError::BoundaryTooSmall(m));
        }
        if m == spec.vertices.len() {
            return Err(NetworkError::NoInteriorVertex);
        }
        if let Some(e) = edges.iter().find(|e| boundary[e.ends.0] && boundary[e.ends.1]) {
            return Err(NetworkError::BoundaryEdge(
                spec.vertices[e.ends.0].clone(),
                spec.vertices[e.ends.1].clone(),
            ));
        }
        if edges.len() > MAX_NETWORK_EDGES {
            return Err(NetworkError::TooManyEdges(edges.len()));
        }

        edges.sort_by(|a, b| natural_cmp(&a.label, &b.label));
        let mut adjacency = vec![Vec::new(); spec.vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            adjacency[e.ends.0].push((e.ends.1, i));
            adjacency[e.ends.1].push((e.ends.0, i));
        }
        let net = Network { vertices: spec.vertices.clone(), boundary, edges, adjacency };
        if !net.is_connected() {
            return Err(NetworkError::Disconnected);
        }
        Ok(net)
    }

    pub fn from_json(text: &str) -> Result<(Network, NetworkSpec), crate::Error> {
        let spec: NetworkSpec = serde_json::from_str(text)?;
        let net = Network::validate(&spec)?;
        Ok((net, spec))
    }

    /// The JSON description of this network (without an embedding).
    pub fn to_spec(&self) -> NetworkSpec {
        NetworkSpec {
            vertices: self.vertices.clone(),
            boundary: self.boundary_vertices().map(|v| self.vertices[v].clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    EdgeSpec::Labeled(self.vertices[e.ends.0].clone(), self.vertices[e.ends.1].clone(), e.label.clone())
                })
                .collect(),
            embedding: None,
        }
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `m = |∂B|`.
    pub fn boundary_count(&self) -> usize {
        self.boundary.iter().filter(|&&b| b).count()
    }

    pub fn interior_count(&self) -> usize {
        self.vertex_count() - self.boundary_count()
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.boundary[v]
    }

    pub fn boundary_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).filter(|&v| self.boundary[v])
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).filter(|&v| !self.boundary[v])
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_label(&self, e: EdgeId) -> &str {
        &self.edges[e].label
    }

    pub fn edge_index(&self, label: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.label == label)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adjacency[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    /// Ground-set index of `eh` in `E ∪ {eh}`: always `|E|`.
    pub fn eh(&self) -> usize {
        self.edge_count()
    }

    /// Labels of `E ∪ {eh}` in ground-set order.
    pub fn ground_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).chain(std::iter::once(EH_LABEL.to_string())).collect()
    }

    /// Edges meeting the boundary (`∂E`).
    pub fn boundary_edges(&self) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| self.boundary[e.ends.0] || self.boundary[e.ends.1])
            .map(|(i, _)| i)
            .collect()
    }

    /// Vertices met by the edges of `set`.
    pub fn vertices_met(&self, set: EdgeSet) -> Vec<bool> {
        let mut met = vec![false; self.vertex_count()];
        for e in set {
            let (a, b) = self.edges[e].ends;
            met[a] = true;
            met[b] = true;
        }
        met
    }

    /// Parses a set of edge labels (`eh` allowed when `allow_eh`).
    pub fn parse_edge_set<S: AsRef<str>>(&self, labels: &[S], allow_eh: bool) -> Result<EdgeSet, crate::Error> {
        let mut set = EdgeSet::EMPTY;
        for l in labels {
            let l = l.as_ref();
            if allow_eh && l == EH_LABEL {
                set.insert(self.eh());
            } else {
                let e = self.edge_index(l).ok_or_else(|| crate::Error::UnknownLabel(l.to_string()))?;
                set.insert(e);
            }
        }
        Ok(set)
    }

    /// Labels of a subset of `E ∪ {eh}`, in ground order.
    pub fn set_labels(&self, set: EdgeSet) -> Vec<String> {
        set.iter()
            .map(|i| if i == self.eh() { EH_LABEL.to_string() } else { self.edges[i].label.clone() })
            .collect()
    }
}

/// Orders strings by comparing digit runs numerically, so `e2 < e10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut ai, mut bi) = (a.char_indices().peekable(), b.char_indices().peekable());
    loop {
        match (ai.peek().copied(), bi.peek().copied()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((i, ca)), Some((j, cb))) => {
                if ca.is_ascii_digit() && cb.is_ascii_digit() {
                    let ea = a[i..].find(|c: char| !c.is_ascii_digit()).map_or(a.len(), |k| i + k);
                    let eb = b[j..].find(|c: char| !c.is_ascii_digit()).map_or(b.len(), |k| j + k);
                    let (na, nb) = (a[i..ea].trim_start_matches('0'), b[j..eb].trim_start_matches('0'));
                    let ord = na.len().cmp(&nb.len()).then_with(|| na.cmp(nb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                    while ai.peek().is_some_and(|&(k, _)| k < ea) {
                        ai.next();
                    }
                    while bi.peek().is_some_and(|&(k, _)| k < eb) {
                        bi.next();
                    }
                } else {
                    if ca != cb {
                        return ca.cmp(&cb);
                    }
                    ai.next();
                    bi.next();
                }
            }
        }
    }
}

/// Sorts a family of sets by their element lists, lexicographically.
pub fn sort_family(family: &mut [EdgeSet]) {
    family.sort_by(|a, b| a.iter().cmp(b.iter()));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(vertices: &[&str], boundary: &[&str], edges: &[(&str, &str)]) -> NetworkSpec {
        NetworkSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            boundary: boundary.iter().map(|s| s.to_string()).collect(),
            edges: edges.iter().map(|(u, v)| EdgeSpec::Pair(u.to_string(), v.to_string())).collect(),
            embedding: None,
        }
    }

    #[test]
    fn path3_is_valid() {
        let n = Network::validate(&spec(&["b1", "i", "b2"], &["b1", "b2"], &[("b1", "i"), ("i", "b2")])).unwrap();
        assert_eq!(n.edge_count(), 2);
        assert_eq!(n.boundary_count(), 2);
        assert_eq!(n.edge_label(0), "b1-i");
        assert_eq!(n.edge_label(1), "b2-i");
    }

    #[test]
    fn boundary_edge_rejected() {
        let err = Network::validate(&spec(
            &["b1", "i", "b2"],
            &["b1", "b2"],
            &[("b1", "i"), ("i", "b2"), ("b1", "b2")],
        ))
        .unwrap_err();
        assert!(matches!(err, NetworkError::BoundaryEdge(..)));
    }

    #[test]
    fn single_boundary_rejected() {
        let err = Network::validate(&spec(&["b1", "i", "b2"], &["b1"], &[("b1", "i"), ("i", "b2")])).unwrap_err();
        assert_eq!(err, NetworkError::BoundaryTooSmall(1));
    }

    #[test]
    fn other_invariants() {
        let disconnected = spec(&["a", "b", "c", "d"], &["a", "b"], &[("a", "c"), ("b", "d")]);
        assert_eq!(Network::validate(&disconnected).unwrap_err(), NetworkError::Disconnected);
        let multi = spec(&["a", "b", "c"], &["a", "b"], &[("a", "c"), ("c", "a"), ("b", "c")]);
        assert!(matches!(Network::validate(&multi).unwrap_err(), NetworkError::LoopOrMultiEdge(..)));
        let looped = spec(&["a", "b", "c"], &["a", "b"], &[("a", "c"), ("c", "c"), ("b", "c")]);
        assert!(matches!(Network::validate(&looped).unwrap_err(), NetworkError::LoopOrMultiEdge(..)));
        let all_boundary = spec(&["a", "b"], &["a", "b"], &[]);
        assert_eq!(Network::validate(&all_boundary).unwrap_err(), NetworkError::NoInteriorVertex);
    }

    #[test]
    fn json_edges_accept_optional_labels() {
        let text = r#"{"vertices":["b1","i","b2"],"boundary":["b1","b2"],"edges":[["b1","i","e1"],["i","b2"]]}"#;
        let (n, _) = Network::from_json(text).unwrap();
        assert_eq!(n.edge_label(0), "b2-i");
        assert_eq!(n.edge_label(1), "e1");
        let back = serde_json::to_string(&n.to_spec()).unwrap();
        let (again, _) = Network::from_json(&back).unwrap();
        assert_eq!(again, n);
    }

    #[test]
    fn natural_order() {
        let mut v = vec!["e10", "e2", "e1", "f", "e02"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, vec!["e1", "e02", "e2", "e10", "f"]);
    }
}
