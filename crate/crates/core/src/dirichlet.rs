//! The Dirichlet matroid `M(N)` on `E ∪ {eh}` and its biased-graph picture.
//!
//! Three constructions are kept side by side so they can be checked against
//! each other: bases from groves, independence from the crossing criterion,
//! and the complete lift of `Ω(N)`.

use serde::Serialize;

use crate::biased::BiasedGraph;
use crate::edgeset::EdgeSet;
use crate::matroid::{Matroid, MatroidError, DEFAULT_LIMIT, TABLE_LIMIT};
use crate::network::{sort_family, GroveMode, Network, EH_LABEL};

/// `Ω(N)`: `oΓ` with a circle balanced iff it is a circle of `Γ` meeting at
/// most one boundary node.
pub fn biased_graph(n: &Network) -> BiasedGraph {
    BiasedGraph::new(n.identify_boundary(), |c| n.is_circle(c) && n.boundary_met(c) <= 1)
}

/// `Ω₀(N)`: `Ω(N)` with the unbalanced loop `eh` at the identified vertex.
pub fn omega0(n: &Network) -> BiasedGraph {
    let omega = biased_graph(n);
    let bar = omega.graph().marked().expect("oΓ marks its identified vertex");
    omega.with_unbalanced_loop(bar, EH_LABEL)
}

/// Independence by the crossing criterion: `X ∖ eh` is a forest of `Γ`
/// containing at most one crossing, and none if `eh ∈ X`.
pub fn crossing_independent(n: &Network, x: EdgeSet) -> bool {
    let xe = x.without(n.eh());
    let allowed = if x.contains(n.eh()) { 0 } else { 1 };
    n.is_forest(xe) && n.forest_crossing_count(xe) <= allowed
}

/// `M(N)` with rank computed greedily from [`crossing_independent`].
pub fn dirichlet_matroid(n: &Network) -> Matroid {
    let net = n.clone();
    Matroid::from_fn(n.ground_labels(), move |x| {
        let mut kept = EdgeSet::EMPTY;
        for e in x {
            if crossing_independent(&net, kept.with(e)) {
                kept.insert(e);
            }
        }
        kept.len()
    })
    .expect("networks have at most 63 edges")
}

/// `M(N)` from its bases `Σ₁ ∪ {F ∪ eh : F ∈ Σ₀}`.
pub fn grove_matroid(n: &Network) -> Result<Matroid, MatroidError> {
    let eh = n.eh();
    let mut bases = n.groves(GroveMode::OneCrossing);
    bases.extend(n.groves(GroveMode::NoCrossing).into_iter().map(|f| f.with(eh)));
    if n.edge_count() + 1 > TABLE_LIMIT {
        return Err(MatroidError::GroundTooLarge { size: n.edge_count() + 1, limit: TABLE_LIMIT });
    }
    Matroid::from_bases_unchecked(n.ground_labels(), &bases)
}

/// `L₀(Ω(N))` through the biased-graph rank formula.
pub fn lift_matroid(n: &Network) -> Matroid {
    biased_graph(n).lift0_matroid(EH_LABEL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CircuitKind {
    /// A circle of `Γ` meeting at most one boundary node.
    BalancedCircle,
    /// A minimal set with two crossings and no balanced circle.
    TwoCrossings,
    /// A crossing together with `eh`.
    CrossingWithEh,
}

/// Every circuit description that `c` satisfies. For a circuit of `M(N)`
/// exactly one should apply.
pub fn circuit_kinds(n: &Network, c: EdgeSet) -> Vec<CircuitKind> {
    let eh = n.eh();
    let mut kinds = Vec::new();
    if c.contains(eh) {
        if n.is_crossing(c.without(eh)) {
            kinds.push(CircuitKind::CrossingWithEh);
        }
        return kinds;
    }
    if n.is_circle(c) && n.boundary_met(c) <= 1 {
        kinds.push(CircuitKind::BalancedCircle);
    }
    let crossings: Vec<EdgeSet> = n.crossings().into_iter().filter(|p| p.is_subset(c)).collect();
    let has_balanced_circle = c.subsets().any(|s| n.is_circle(s) && n.boundary_met(s) <= 1);
    let minimal = c.iter().all(|e| crossings.iter().filter(|p| !p.contains(e)).count() <= 1);
    if crossings.len() >= 2 && !has_balanced_circle && minimal {
        kinds.push(CircuitKind::TwoCrossings);
    }
    kinds
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CocircuitKind {
    /// A bond of `oΓ`.
    Bond,
    /// `Y ∪ eh` with `Y` an insulator: `E ∖ Y` connects `oΓ`, contains no
    /// crossing, and every edge of `Y` would complete one.
    InsulatorWithEh,
}

pub fn cocircuit_kinds(n: &Network, z: EdgeSet) -> Vec<CocircuitKind> {
    let o = n.identify_boundary();
    let all = n.all_edges();
    let eh = n.eh();
    let mut kinds = Vec::new();
    if !z.contains(eh) {
        let r = o.graphic_rank(all);
        let rest = all.difference(z);
        if o.graphic_rank(rest) + 1 == r && z.iter().all(|e| o.graphic_rank(rest.with(e)) == r) {
            kinds.push(CocircuitKind::Bond);
        }
    } else if is_insulator(n, z.without(eh)) {
        kinds.push(CocircuitKind::InsulatorWithEh);
    }
    kinds
}

/// Whether the complement of `y` spans `oΓ` connectedly with no crossing,
/// maximally so.
pub fn is_insulator(n: &Network, y: EdgeSet) -> bool {
    let o = n.identify_boundary();
    let h = n.all_edges().difference(y);
    o.component_count(h) == 1 && !n.contains_crossing(h) && y.iter().all(|e| n.contains_crossing(h.with(e)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Clause {
    /// `ℓ = k + 1`, both sides balanced.
    BothBalanced,
    /// `ℓ = k`, exactly one side balanced.
    OneBalanced,
    /// `ℓ = k − 1`, neither side balanced.
    NeitherBalanced,
}

/// Finer descriptions available when `k = 2`, with `eh` on the `X` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Refinement {
    /// `Y` inside one tract `T`, `X ∩ T` and `Y` sharing exactly one interior
    /// vertex, and `Y` meeting exactly one boundary node.
    TractCutVertex,
    /// As above with two shared interior vertices and no boundary node in `Y`.
    TractCutPair,
    /// `X ∩ E` and `Y` are nonempty unions of tracts.
    TractUnion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Biseparation {
    pub x: EdgeSet,
    pub y: EdgeSet,
    pub shared: usize,
    pub x_balanced: bool,
    pub y_balanced: bool,
    pub clause: Clause,
    pub refinements: Vec<Refinement>,
}

/// All vertical `k`-biseparations of `Ω₀(N)`, listed with `eh ∈ X`.
pub fn vertical_biseparations(n: &Network, k: usize) -> Result<Vec<Biseparation>, MatroidError> {
    let ground = n.edge_count() + 1;
    if ground > DEFAULT_LIMIT {
        return Err(MatroidError::GroundTooLarge { size: ground, limit: DEFAULT_LIMIT });
    }
    let omega = omega0(n);
    let eh = n.eh();
    let tracts = n.tracts();
    let found = crate::exec::Exec::default().filter_range(0..1u64 << n.edge_count(), |bits| {
        biseparation(n, &omega, &tracts, k, EdgeSet(bits).complement(n.edge_count()).with(eh), EdgeSet(bits)).is_some()
    });
    Ok(found
        .into_iter()
        .map(|bits| {
            let y = EdgeSet(bits);
            biseparation(n, &omega, &tracts, k, y.complement(n.edge_count()).with(eh), y).expect("filtered above")
        })
        .collect())
}

fn biseparation(n: &Network, omega: &BiasedGraph, tracts: &[EdgeSet], k: usize, x: EdgeSet, y: EdgeSet) -> Option<Biseparation> {
    if x.len() < k || y.len() < k {
        return None;
    }
    let (mx, my) = (omega.vertices_met(x), omega.vertices_met(y));
    if mx.is_subset(my) || my.is_subset(mx) {
        return None;
    }
    let shared = mx.intersection(my).len();
    let (xb, yb) = (omega.is_balanced(x), omega.is_balanced(y));
    let clause = match (xb as usize + yb as usize, shared + 1) {
        (2, s) if s == k + 2 => Clause::BothBalanced,
        (1, s) if s == k + 1 => Clause::OneBalanced,
        (0, s) if s == k => Clause::NeitherBalanced,
        _ => return None,
    };
    let refinements = if k == 2 { refinements(n, tracts, x.without(n.eh()), y) } else { Vec::new() };
    Some(Biseparation { x, y, shared, x_balanced: xb, y_balanced: yb, clause, refinements })
}

fn refinements(n: &Network, tracts: &[EdgeSet], xe: EdgeSet, y: EdgeSet) -> Vec<Refinement> {
    let mut out = Vec::new();
    if let Some(&t) = tracts.iter().find(|t| y.is_subset(**t)) {
        let xt = xe.intersection(t);
        let (mx, my) = (n.vertices_met(xt), n.vertices_met(y));
        // Shared vertices are counted away from the boundary, as in oΓ.
        let shared = (0..n.vertex_count()).filter(|&v| mx[v] && my[v] && !n.is_boundary(v)).count();
        let boundary = n.boundary_met(y);
        if !xt.is_empty() {
            if shared == 1 && boundary == 1 {
                out.push(Refinement::TractCutVertex);
            }
            if shared == 2 && xt.len() >= 2 && y.len() >= 2 && boundary == 0 {
                out.push(Refinement::TractCutPair);
            }
        }
    }
    let union_of_tracts = |s: EdgeSet| !s.is_empty() && tracts.iter().all(|t| t.is_subset(s) || t.is_disjoint(s));
    if union_of_tracts(xe) && union_of_tracts(y) {
        out.push(Refinement::TractUnion);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub two_conn: bool,
    pub three_conn: bool,
    pub interior_connected: bool,
    /// A vertex set of `∇Γ` of size below 2 (resp. 3) whose removal
    /// disconnects it, when one exists.
    pub cut_below_two: Option<Vec<String>>,
    pub cut_below_three: Option<Vec<String>>,
    /// Interior components of `Γ ∖ ∂B` when there is more than one.
    pub interior_components: Vec<Vec<String>>,
}

/// Graph-side criteria for 2- and 3-connectivity of `M(N)`.
pub fn connectivity_criteria(n: &Network) -> ConnectivityReport {
    let nabla = n.add_clique();
    let names = |vs: Vec<usize>| vs.into_iter().map(|v| nabla.vertex_labels()[v].clone()).collect::<Vec<_>>();
    let cut2 = nabla.separating_set(2).map(names);
    let cut3 = nabla.separating_set(3).map(names);
    let comps = n.interior_components();
    let interior_connected = comps.len() == 1;
    ConnectivityReport {
        two_conn: cut2.is_none(),
        three_conn: interior_connected && cut3.is_none(),
        interior_connected,
        cut_below_two: cut2,
        cut_below_three: cut3,
        interior_components: if interior_connected {
            Vec::new()
        } else {
            comps.into_iter().map(|c| c.into_iter().map(|v| n.vertex_label(v).to_string()).collect()).collect()
        },
    }
}

/// Inclusion-minimal balancing sets of `Ω₀(N)` with rank at most `max_rank`
/// in `M(N)`. Each contains `eh`.
pub fn balancing_sets(n: &Network, max_rank: usize) -> Result<Vec<EdgeSet>, MatroidError> {
    let m = dirichlet_matroid(n);
    m.check_limit()?;
    let all = n.all_edges();
    let eh = n.eh();
    let balancing = |t: EdgeSet| !n.contains_crossing(all.difference(t));
    let found = m.exec().filter_range(0..1u64 << n.edge_count(), |bits| {
        let t = EdgeSet(bits);
        balancing(t) && t.iter().all(|e| !balancing(t.without(e))) && m.rank(t.with(eh)) <= max_rank
    });
    let mut out: Vec<EdgeSet> = found.into_iter().map(|b| EdgeSet(b).with(eh)).collect();
    sort_family(&mut out);
    Ok(out)
}

/// `Ω₀(N)` has no balanced circle of length 1 or 2 and no vertex carrying
/// two unbalanced loops.
pub fn simplicity_check(n: &Network) -> bool {
    let omega = omega0(n);
    let short_balanced = omega.balanced_circles().iter().any(|c| c.len() <= 2);
    let mut loops = vec![0; omega.graph().vertex_count()];
    for c in omega.unbalanced_circles().iter().filter(|c| c.len() == 1) {
        let e = c.iter().next().expect("nonempty");
        loops[omega.graph().edge(e).ends.0] += 1;
    }
    !short_balanced && loops.iter().all(|&l| l < 2)
}
