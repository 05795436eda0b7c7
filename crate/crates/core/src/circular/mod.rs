//! Circular networks: disk embeddings given as rotation systems, their dual
//! networks, and the cocircuit/circuit duality of Dirichlet matroids.

mod duality;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::matroid::MatroidError;
use crate::network::generate;
use crate::network::{EdgeId, EdgeSpec, EmbeddingSpec, MultiGraph, Network, NetworkError, NetworkSpec, VertexId};

pub use duality::{
    duality_theorem_check, insulators, insulators_by_paths, min_circuit_cover, CircuitCover, CocircuitClass,
    DualityReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircularError {
    #[error("vertex {0} has degree 1")]
    DegreeOneVertex(String),
    #[error("interior vertex {0} has degree 2")]
    InteriorDegreeTwo(String),
    #[error("rotation at {vertex} must list each incident edge once: {detail}")]
    BadRotation { vertex: String, detail: String },
    #[error("rotation system traces {faces} faces but a plane embedding needs {expected}")]
    NotPlanar { faces: usize, expected: usize },
    #[error("boundary order mismatch: {0}")]
    BoundaryOrderMismatch(String),
    #[error("network has no embedding")]
    MissingEmbedding,
    #[error("edge {0} has the same region on both sides")]
    Bridge(String),
    #[error("{0:?} is not a cocircuit of M(N) containing eh")]
    NotACocircuit(Vec<String>),
    #[error("no union of circuits of M(N*) equals {0:?}")]
    NoCover(Vec<String>),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// `edge` traversed from `tail` to `head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

/// A network embedded in a closed disk with its boundary nodes on the rim.
///
/// Rotations are clockwise. Faces are traced by leaving each vertex along the
/// clockwise successor of the arriving edge, which walks inner faces
/// counterclockwise and the outer face clockwise, so the outer walk meets the
/// boundary nodes in `boundary_order`.
#[derive(Clone, Debug)]
pub struct CircularNetwork {
    network: Network,
    rotation: Vec<Vec<EdgeId>>,
    boundary_order: Vec<VertexId>,
    inner_faces: Vec<Vec<Dart>>,
    outer: Vec<Dart>,
}

fn next_dart(rotation: &[Vec<EdgeId>], position: &[BTreeMap<EdgeId, usize>], n: &Network, d: Dart) -> Dart {
    let v = d.head;
    let rot = &rotation[v];
    let e = rot[(position[v][&d.edge] + 1) % rot.len()];
    Dart { edge: e, tail: v, head: n.edge(e).other(v) }
}

/// Cyclic rotation of `seq` so that it starts at its least element. Used to
/// compare cyclic orders.
fn cyclic_eq(a: &[VertexId], b: &[VertexId]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i])))
}

pub fn validate_embedding(network: Network, spec: &EmbeddingSpec) -> Result<CircularNetwork, CircularError> {
    let n = &network;
    for v in 0..n.vertex_count() {
        match n.degree(v) {
            1 => return Err(CircularError::DegreeOneVertex(n.vertex_label(v).into())),
            2 if !n.is_boundary(v) => return Err(CircularError::InteriorDegreeTwo(n.vertex_label(v).into())),
            _ => {}
        }
    }
    let mut rotation = Vec::with_capacity(n.vertex_count());
    for v in 0..n.vertex_count() {
        let label = n.vertex_label(v);
        let bad = |detail: String| CircularError::BadRotation { vertex: label.to_string(), detail };
        let listed = spec.rotation.get(label).ok_or_else(|| bad("missing".into()))?;
        let mut rot = Vec::with_capacity(listed.len());
        for l in listed {
            let e = n.edge_index(l).ok_or_else(|| bad(format!("unknown edge {l}")))?;
            if !n.edge(e).touches(v) || rot.contains(&e) {
                return Err(bad(format!("edge {l} is not incident once")));
            }
            rot.push(e);
        }
        if rot.len() != n.degree(v) {
            return Err(bad(format!("lists {} of {} edges", rot.len(), n.degree(v))));
        }
        rotation.push(rot);
    }
    let position: Vec<BTreeMap<EdgeId, usize>> =
        rotation.iter().map(|r| r.iter().enumerate().map(|(i, &e)| (e, i)).collect()).collect();

    let mut seen = std::collections::HashSet::new();
    let mut faces: Vec<Vec<Dart>> = Vec::new();
    for (e, edge) in n.edges().iter().enumerate() {
        for (tail, head) in [edge.ends, (edge.ends.1, edge.ends.0)] {
            let start = Dart { edge: e, tail, head };
            if seen.contains(&start) {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            loop {
                seen.insert(d);
                face.push(d);
                d = next_dart(&rotation, &position, n, d);
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
    }
    let expected = n.edge_count() + 2 - n.vertex_count();
    if faces.len() != expected {
        return Err(CircularError::NotPlanar { faces: faces.len(), expected });
    }

    let mut boundary_order = Vec::with_capacity(spec.boundary_order.len());
    for l in &spec.boundary_order {
        let v = n.vertex_index(l).ok_or_else(|| CircularError::BoundaryOrderMismatch(format!("unknown vertex {l}")))?;
        if !n.is_boundary(v) || boundary_order.contains(&v) {
            return Err(CircularError::BoundaryOrderMismatch(format!("{l} is not a distinct boundary node")));
        }
        boundary_order.push(v);
    }
    if boundary_order.len() != n.boundary_count() {
        return Err(CircularError::BoundaryOrderMismatch("order must list every boundary node".into()));
    }
    // With two boundary nodes several faces can qualify; the first one traced
    // is taken and the dual is defined relative to that choice.
    let outer_index = faces
        .iter()
        .position(|f| {
            let met: Vec<VertexId> = f.iter().map(|d| d.tail).filter(|&v| n.is_boundary(v)).collect();
            met.len() == boundary_order.len() && cyclic_eq(&met, &boundary_order)
        })
        .ok_or_else(|| {
            CircularError::BoundaryOrderMismatch("no face meets the boundary nodes once each in clockwise order".into())
        })?;
    let mut outer = faces.remove(outer_index);
    let start = outer.iter().position(|d| d.tail == boundary_order[0]).expect("outer face meets every boundary node");
    outer.rotate_left(start);
    Ok(CircularNetwork { network, rotation, boundary_order, inner_faces: faces, outer })
}

/// Clockwise rotations from straight-line vertex coordinates; boundary order
/// clockwise around the origin starting from the first boundary node.
pub fn embedding_from_coordinates(n: &Network, pos: &[(f64, f64)]) -> EmbeddingSpec {
    let angle = |from: (f64, f64), to: (f64, f64)| (to.1 - from.1).atan2(to.0 - from.0);
    let mut rotation = BTreeMap::new();
    for v in 0..n.vertex_count() {
        let mut around: Vec<(f64, EdgeId)> = n.neighbors(v).iter().map(|&(w, e)| (angle(pos[v], pos[w]), e)).collect();
        around.sort_by(|a, b| b.0.total_cmp(&a.0));
        rotation.insert(n.vertex_label(v).to_string(), around.iter().map(|&(_, e)| n.edge_label(e).to_string()).collect());
    }
    let mut boundary: Vec<(f64, VertexId)> = n.boundary_vertices().map(|v| (angle((0.0, 0.0), pos[v]), v)).collect();
    let first = boundary[0].0;
    // Clockwise means decreasing angle; measure how far clockwise from the first.
    let clockwise_from_first = |a: f64| (first - a).rem_euclid(std::f64::consts::TAU);
    boundary.sort_by(|a, b| clockwise_from_first(a.0).total_cmp(&clockwise_from_first(b.0)));
    EmbeddingSpec {
        rotation,
        boundary_order: boundary.iter().map(|&(_, v)| n.vertex_label(v).to_string()).collect(),
    }
}

fn on_circle(count: usize, radius: f64, offset: f64) -> impl Iterator<Item = (f64, f64)> {
    (0..count).map(move |s| {
        let t = -(s as f64 + offset) * std::f64::consts::TAU / count as f64;
        (radius * t.cos(), radius * t.sin())
    })
}

/// Coordinates for the sunflower families: `c_s` on an inner circle and `d_s`
/// on the rim between `c_{s−1}` and `c_s`.
fn sunflower_coordinates(n: &Network, m: usize) -> Vec<(f64, f64)> {
    let inner: Vec<(f64, f64)> = on_circle(m, 0.6, 0.0).collect();
    let rim: Vec<(f64, f64)> = on_circle(m, 1.0, -0.5).collect();
    (0..n.vertex_count())
        .map(|v| {
            let label = n.vertex_label(v);
            let s: usize = label[1..].parse().expect("generated label");
            if label.starts_with('c') {
                inner[s - 1]
            } else {
                rim[s - 1]
            }
        })
        .collect()
}

pub fn sunflower(m: usize) -> Result<CircularNetwork, CircularError> {
    let n = generate::sunflower(m)?;
    let spec = embedding_from_coordinates(&n, &sunflower_coordinates(&n, m));
    validate_embedding(n, &spec)
}

pub fn double_sunflower(m: usize) -> Result<CircularNetwork, CircularError> {
    let n = generate::double_sunflower(m)?;
    let spec = embedding_from_coordinates(&n, &sunflower_coordinates(&n, m));
    validate_embedding(n, &spec)
}

/// The two-terminal bridge with `b1, b2` on the rim and `i1` above `i2`.
pub fn wheatstone() -> CircularNetwork {
    let n = generate::wheatstone();
    let pos = [(-1.0, 0.0), (1.0, 0.0), (0.0, 0.5), (0.0, -0.5)];
    validate_embedding(n.clone(), &embedding_from_coordinates(&n, &pos)).expect("plane by construction")
}

/// Inline circular specs: `sunflower:M`, `double_sunflower:M`, `wheatstone`.
pub fn from_spec(spec: &str) -> Result<CircularNetwork, CircularError> {
    let (family, params) = spec.split_once(':').unwrap_or((spec, ""));
    let m = || params.parse::<usize>().map_err(|_| NetworkError::BadParameter(format!("cannot parse m from {params:?}")));
    match family {
        "sunflower" => sunflower(m()?),
        "double_sunflower" => double_sunflower(m()?),
        "wheatstone" => Ok(wheatstone()),
        _ => Err(NetworkError::BadParameter(format!("{family:?} has no built-in disk embedding")).into()),
    }
}

/// A network from JSON carrying an `embedding` field.
pub fn from_json(text: &str) -> Result<CircularNetwork, crate::Error> {
    let (n, spec) = Network::from_json(text)?;
    let embedding = spec.embedding.ok_or(CircularError::MissingEmbedding)?;
    Ok(validate_embedding(n, &embedding)?)
}

/// Kind of region of `D ∖ Γ` behind each dual vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    /// Inner face, by index into [`CircularNetwork::inner_faces`].
    Face(usize),
    /// Rim region between boundary nodes `s` and `s + 1` of the boundary order.
    Rim(usize),
}

/// `N*` with the region behind each of its vertices. Dual edges carry the
/// primal labels, so `e ↦ e*` is the identity on labels and on edge indices.
#[derive(Clone, Debug)]
pub struct DualNetwork {
    pub circular: CircularNetwork,
    pub regions: Vec<Region>,
}

impl CircularNetwork {
    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v]
    }

    pub fn boundary_order(&self) -> &[VertexId] {
        &self.boundary_order
    }

    pub fn inner_faces(&self) -> &[Vec<Dart>] {
        &self.inner_faces
    }

    /// Outer face walk starting at the first boundary node.
    pub fn outer_walk(&self) -> &[Dart] {
        &self.outer
    }

    /// Rim segments of the outer walk, segment `s` running from boundary node
    /// `s` to boundary node `s + 1`.
    pub fn rim_segments(&self) -> Vec<Vec<Dart>> {
        let mut segments: Vec<Vec<Dart>> = Vec::new();
        for &d in &self.outer {
            if self.network.is_boundary(d.tail) {
                segments.push(Vec::new());
            }
            segments.last_mut().expect("walk starts at a boundary node").push(d);
        }
        segments
    }

    pub fn embedding_spec(&self) -> EmbeddingSpec {
        let n = &self.network;
        EmbeddingSpec {
            rotation: (0..n.vertex_count())
                .map(|v| (n.vertex_label(v).to_string(), self.rotation[v].iter().map(|&e| n.edge_label(e).to_string()).collect()))
                .collect(),
            boundary_order: self.boundary_order.iter().map(|&v| n.vertex_label(v).to_string()).collect(),
        }
    }

    /// Regions of both sides of every edge, `(left, right)` by dart direction.
    fn regions_by_dart(&self) -> (Vec<Region>, BTreeMap<Dart, usize>, Vec<Vec<Dart>>) {
        let mut regions = Vec::new();
        let mut walks = Vec::new();
        let mut owner = BTreeMap::new();
        for (s, seg) in self.rim_segments().into_iter().enumerate() {
            for &d in &seg {
                owner.insert(d, regions.len());
            }
            regions.push(Region::Rim(s));
            walks.push(seg);
        }
        for (f, face) in self.inner_faces.iter().enumerate() {
            for &d in face {
                owner.insert(d, regions.len());
            }
            regions.push(Region::Face(f));
            walks.push(face.clone());
        }
        (regions, owner, walks)
    }

    /// `N*`: rim regions `o1..om` as boundary nodes (in boundary order) and
    /// inner faces `f1..fk` as interior vertices. The dual is itself validated
    /// as a circular network.
    pub fn dual_network(&self) -> Result<DualNetwork, CircularError> {
        let n = &self.network;
        let (regions, owner, walks) = self.regions_by_dart();
        let m = self.boundary_order.len();
        let label = |r: usize| match regions[r] {
            Region::Rim(s) => format!("o{}", s + 1),
            Region::Face(f) => format!("f{}", f + 1),
        };
        let mut edges = Vec::with_capacity(n.edge_count());
        for (e, edge) in n.edges().iter().enumerate() {
            let (u, v) = edge.ends;
            let a = owner[&Dart { edge: e, tail: u, head: v }];
            let b = owner[&Dart { edge: e, tail: v, head: u }];
            if a == b {
                return Err(CircularError::Bridge(edge.label.clone()));
            }
            edges.push(EdgeSpec::Labeled(label(a), label(b), edge.label.clone()));
        }
        let spec = NetworkSpec {
            vertices: (0..regions.len()).map(label).collect(),
            boundary: (0..m).map(label).collect(),
            edges,
            embedding: None,
        };
        let dual = Network::validate(&spec)?;
        // Around a region the crossing edges appear in walk order, which is
        // counterclockwise from the region's point of view.
        let rotation = walks
            .iter()
            .enumerate()
            .map(|(r, walk)| (label(r), walk.iter().rev().map(|d| n.edge_label(d.edge).to_string()).collect()))
            .collect();
        let embedding = EmbeddingSpec { rotation, boundary_order: (0..m).map(label).collect() };
        Ok(DualNetwork { circular: validate_embedding(dual, &embedding)?, regions })
    }

    /// Plane dual of `oΓ`: the disk rim collapses to the identified vertex,
    /// so the faces of `oΓ` are the inner faces plus one per rim region, and the
    /// dual graph is the graph of `N*`. Edge `i` is the dual of edge `i`.
    pub fn og_dual(&self) -> Result<MultiGraph, CircularError> {
        Ok(self.dual_network()?.circular.network().graph())
    }
}

/// Same edge labels with the same incidence up to relabelling vertices, and
/// boundary nodes matching boundary nodes. Without degree-1 vertices each
/// vertex is determined by its set of incident edges.
pub fn same_up_to_vertex_names(a: &Network, b: &Network) -> bool {
    let signature = |n: &Network| {
        let mut sig: Vec<(bool, Vec<String>)> = (0..n.vertex_count())
            .map(|v| {
                let mut labels: Vec<String> = n.neighbors(v).iter().map(|&(_, e)| n.edge_label(e).to_string()).collect();
                labels.sort();
                (n.is_boundary(v), labels)
            })
            .collect();
        sig.sort();
        sig
    };
    signature(a) == signature(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::generate::{hexwheel, path};

    #[test]
    fn sunflower_embeddings_validate() {
        for m in 3..=6 {
            let c = sunflower(m).unwrap();
            assert_eq!(c.inner_faces().len(), m + 1);
            assert_eq!(c.rim_segments().len(), m);
        }
        let d = double_sunflower(6).unwrap();
        assert_eq!(d.inner_faces().len(), 6 + 2);
    }

    #[test]
    fn degree_conditions() {
        let p = path(3).unwrap();
        assert!(matches!(validate_embedding(p, &EmbeddingSpec::default()), Err(CircularError::DegreeOneVertex(_))));
        let h = hexwheel(6).unwrap();
        assert!(matches!(validate_embedding(h, &EmbeddingSpec::default()), Err(CircularError::DegreeOneVertex(_))));
    }

    #[test]
    fn reversed_boundary_order_rejected() {
        let c = sunflower(4).unwrap();
        let mut spec = c.embedding_spec();
        spec.boundary_order.reverse();
        assert!(matches!(
            validate_embedding(c.network().clone(), &spec),
            Err(CircularError::BoundaryOrderMismatch(_))
        ));
    }

    #[test]
    fn nonplanar_rotation_rejected() {
        // Swapping two entries of one rotation on the two-boundary example
        // changes the face count.
        let c = wheatstone();
        let mut spec = c.embedding_spec();
        let rot = spec.rotation.get_mut("i1").unwrap();
        rot.swap(0, 1);
        assert!(matches!(
            validate_embedding(c.network().clone(), &spec),
            Err(CircularError::NotPlanar { .. }) | Err(CircularError::BoundaryOrderMismatch(_))
        ));
    }

    #[test]
    fn dual_is_an_involution() {
        for c in [sunflower(4).unwrap(), sunflower(5).unwrap(), double_sunflower(6).unwrap(), wheatstone()] {
            let d = c.dual_network().unwrap();
            let dn = d.circular.network();
            assert_eq!(dn.boundary_count(), c.network().boundary_count());
            assert_eq!(dn.edge_count(), c.network().edge_count());
            let dd = d.circular.dual_network().unwrap();
            assert!(same_up_to_vertex_names(dd.circular.network(), c.network()));
        }
    }

    #[test]
    fn og_dual_euler_count() {
        let c = sunflower(4).unwrap();
        let g = c.og_dual().unwrap();
        let og_vertices = c.network().interior_count() + 1;
        assert_eq!(g.vertex_count(), c.network().edge_count() + 2 - og_vertices);
    }
}
