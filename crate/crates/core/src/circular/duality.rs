use serde::Serialize;

use super::{CircularError, CircularNetwork};
use crate::dirichlet::dirichlet_matroid;
use crate::edgeset::EdgeSet;
use crate::matroid::Matroid;
use crate::network::{MultiGraph, Network};

/// `{Z ∖ eh : Z a cocircuit of M(N) containing eh}`, sorted.
pub fn insulators(c: &CircularNetwork) -> Result<Vec<EdgeSet>, CircularError> {
    let n = c.network();
    let eh = n.eh();
    Ok(dirichlet_matroid(n).cocircuits()?.into_iter().filter(|z| z.contains(eh)).map(|z| z.without(eh)).collect())
}

/// Whether the dual edges `y` join every pair of dual boundary nodes.
fn joins_boundary(dual: &MultiGraph, boundary: &[usize], y: EdgeSet) -> bool {
    let (comp, _) = dual.components(y);
    boundary.iter().all(|&b| comp[b] == comp[boundary[0]])
}

/// Minimal edge sets whose dual edges contain paths between every pair of
/// boundary nodes of `N*`, found by subset enumeration.
pub fn insulators_by_paths(c: &CircularNetwork) -> Result<Vec<EdgeSet>, CircularError> {
    let dual = c.dual_network()?;
    let dn = dual.circular.network();
    let size = dn.edge_count();
    if size > crate::matroid::TABLE_LIMIT {
        return Err(crate::matroid::MatroidError::GroundTooLarge { size, limit: crate::matroid::TABLE_LIMIT }.into());
    }
    let g = dn.graph();
    let boundary: Vec<usize> = dn.boundary_vertices().collect();
    let mut out: Vec<EdgeSet> = (0..1u64 << size)
        .map(EdgeSet)
        .filter(|&y| joins_boundary(&g, &boundary, y) && y.iter().all(|e| !joins_boundary(&g, &boundary, y.without(e))))
        .collect();
    crate::network::sort_family(&mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitCover {
    pub k: usize,
    pub cover: Vec<EdgeSet>,
}

/// Candidate circuits of `M(N*)` and the search over them. Edge `i` of `N*`
/// is `e_i*`, and `eh` keeps its index, so targets need no translation.
struct CoverSearch {
    circuits: Vec<EdgeSet>,
}

impl CoverSearch {
    fn new(dual: &Network) -> Result<CoverSearch, CircularError> {
        Ok(CoverSearch { circuits: dirichlet_matroid(dual).circuits()? })
    }

    /// Minimum number of distinct circuits with union `target`. A greedy
    /// largest-gain cover supplies the first incumbent; depth-first search then
    /// branches on the uncovered element with the fewest candidate circuits.
    fn solve(&self, target: EdgeSet) -> Option<CircuitCover> {
        let inside: Vec<EdgeSet> = self.circuits.iter().copied().filter(|c| c.is_subset(target)).collect();
        if inside.iter().fold(EdgeSet::EMPTY, |u, &c| u.union(c)) != target {
            return None;
        }
        let mut best = greedy(&inside, target);
        let widest = inside.iter().map(|c| c.len()).max().unwrap_or(1);
        let mut chosen = Vec::new();
        branch(&inside, target, EdgeSet::EMPTY, widest, &mut chosen, &mut best);
        best.sort();
        Some(CircuitCover { k: best.len(), cover: best })
    }
}

fn greedy(inside: &[EdgeSet], target: EdgeSet) -> Vec<EdgeSet> {
    let mut covered = EdgeSet::EMPTY;
    let mut picked = Vec::new();
    while covered != target {
        let &next = inside
            .iter()
            .filter(|c| !picked.contains(*c))
            .max_by_key(|c| (c.difference(covered).len(), std::cmp::Reverse(c.bits())))
            .expect("union of candidates is the target");
        picked.push(next);
        covered = covered.union(next);
    }
    picked
}

fn branch(
    inside: &[EdgeSet],
    target: EdgeSet,
    covered: EdgeSet,
    widest: usize,
    chosen: &mut Vec<EdgeSet>,
    best: &mut Vec<EdgeSet>,
) {
    let uncovered = target.difference(covered);
    if uncovered.is_empty() {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    if chosen.len() + uncovered.len().div_ceil(widest) >= best.len() {
        return;
    }
    let pivot = uncovered
        .iter()
        .min_by_key(|&e| inside.iter().filter(|c| c.contains(e)).count())
        .expect("uncovered is nonempty");
    for &c in inside.iter().filter(|c| c.contains(pivot)) {
        chosen.push(c);
        branch(inside, target, covered.union(c), widest, chosen, best);
        chosen.pop();
    }
}

/// Minimum cover of the cocircuit `target` of `M(N)` (which must contain
/// `eh`) by distinct circuits of `M(N*)`.
pub fn min_circuit_cover(c: &CircularNetwork, target: EdgeSet) -> Result<CircuitCover, CircularError> {
    let n = c.network();
    let labels = || n.set_labels(target);
    if !target.contains(n.eh()) || !dirichlet_matroid(n).cocircuits()?.contains(&target) {
        return Err(CircularError::NotACocircuit(labels()));
    }
    let dual = c.dual_network()?;
    CoverSearch::new(dual.circular.network())?.solve(target).ok_or_else(|| CircularError::NoCover(labels()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CocircuitClass {
    /// Avoids `eh`; a cocircuit of `M(oΓ)` and a circuit of `M(oΓ*)`.
    Graphic { graph_cocircuit: bool, dual_circuit: bool },
    /// `Y ∪ eh` with `Y` an insulator, covered by `k` circuits of `M(N*)`.
    Insulator { path_insulator: bool, cover: Option<CircuitCover> },
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub boundary: usize,
    pub cocircuits: Vec<(EdgeSet, CocircuitClass)>,
    pub insulator_sets_agree: bool,
    pub min_k: Option<usize>,
    pub max_k: Option<usize>,
    /// Only filled for two boundary nodes: `M*(N) ≅ M(N*)` under `e ↦ e*`.
    pub two_boundary_isomorphism: Option<bool>,
}

impl DualityReport {
    pub fn dichotomy_holds(&self) -> bool {
        self.insulator_sets_agree
            && self.cocircuits.iter().all(|(_, class)| match class {
                CocircuitClass::Graphic { graph_cocircuit, dual_circuit } => *graph_cocircuit && *dual_circuit,
                CocircuitClass::Insulator { path_insulator, cover } => *path_insulator && cover.is_some(),
            })
    }

    /// `¼m + ½ ≤ k ≤ ½m + ½` for every insulator cocircuit; the upper bound
    /// implies `k < ½m + 1`.
    pub fn bounds_hold(&self) -> bool {
        let m = self.boundary;
        self.cocircuits.iter().all(|(_, class)| match class {
            CocircuitClass::Insulator { cover: Some(c), .. } => 4 * c.k >= m + 2 && 2 * c.k <= m + 1,
            CocircuitClass::Insulator { cover: None, .. } => false,
            CocircuitClass::Graphic { .. } => true,
        })
    }

    pub fn holds(&self) -> bool {
        self.dichotomy_holds() && self.bounds_hold() && self.two_boundary_isomorphism != Some(false)
    }
}

/// Classifies every cocircuit of `M(N)` and covers each insulator cocircuit
/// by a minimum number of circuits of `M(N*)`.
pub fn duality_theorem_check(c: &CircularNetwork) -> Result<DualityReport, CircularError> {
    let n = c.network();
    let eh = n.eh();
    let m = n.boundary_count();
    let mn = dirichlet_matroid(n);
    let cocircuits = mn.cocircuits()?;
    let dual = c.dual_network()?;
    let dn = dual.circular.network();

    let og = Matroid::graphic(&n.identify_boundary());
    let og_cocircuits = og.cocircuits()?;
    let og_dual_circuits = Matroid::graphic(&dn.graph()).circuits()?;
    let by_paths = insulators_by_paths(c)?;
    let by_cocircuits: Vec<EdgeSet> = cocircuits.iter().filter(|z| z.contains(eh)).map(|z| z.without(eh)).collect();
    let search = CoverSearch::new(dn)?;

    let classified: Vec<(EdgeSet, CocircuitClass)> = cocircuits
        .iter()
        .map(|&z| {
            let class = if z.contains(eh) {
                CocircuitClass::Insulator {
                    path_insulator: by_paths.contains(&z.without(eh)),
                    cover: search.solve(z),
                }
            } else {
                CocircuitClass::Graphic {
                    graph_cocircuit: og_cocircuits.contains(&z),
                    dual_circuit: og_dual_circuits.contains(&z),
                }
            };
            (z, class)
        })
        .collect();
    let ks: Vec<usize> = classified
        .iter()
        .filter_map(|(_, class)| match class {
            CocircuitClass::Insulator { cover: Some(c), .. } => Some(c.k),
            _ => None,
        })
        .collect();
    let two_boundary_isomorphism = if m == 2 {
        let mstar = dirichlet_matroid(dn);
        let identity: Vec<usize> = (0..mn.len()).collect();
        Some(mn.dual().iso_check(&mstar, Some(&identity))?)
    } else {
        None
    };
    Ok(DualityReport {
        boundary: m,
        cocircuits: classified,
        insulator_sets_agree: by_paths == by_cocircuits,
        min_k: ks.iter().copied().min(),
        max_k: ks.iter().copied().max(),
        two_boundary_isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circular::{double_sunflower, sunflower, wheatstone};

    fn set(n: &Network, labels: &[&str]) -> EdgeSet {
        n.parse_edge_set(labels, true).unwrap()
    }

    #[test]
    fn wheatstone_duality_is_an_isomorphism() {
        let c = wheatstone();
        let report = duality_theorem_check(&c).unwrap();
        assert_eq!(report.two_boundary_isomorphism, Some(true));
        assert!(report.holds());
        assert_eq!((report.min_k, report.max_k), (Some(1), Some(1)));
    }

    #[test]
    fn wheatstone_insulators_are_dual_cuts() {
        // With one dual boundary pair an insulator is a dual path joining
        // the two rim regions.
        let c = wheatstone();
        let dual = c.dual_network().unwrap();
        let g = dual.circular.network().graph();
        let ins = insulators(&c).unwrap();
        assert_eq!(ins, insulators_by_paths(&c).unwrap());
        for y in ins {
            let (comp, _) = g.components(y);
            let b: Vec<usize> = dual.circular.network().boundary_vertices().collect();
            assert_eq!(comp[b[0]], comp[b[1]]);
        }
    }

    #[test]
    fn sunflower_insulator_needs_three_circuits() {
        // All petal edges except those of the triangle at d5.
        let c = sunflower(5).unwrap();
        let n = c.network();
        let y = set(n, &["a1", "b1", "a2", "b2", "a3", "b3", "a4", "b4"]);
        assert!(insulators(&c).unwrap().contains(&y));
        assert_eq!(min_circuit_cover(&c, y.with(n.eh())).unwrap().k, 3);
    }

    #[test]
    fn non_cocircuit_rejected() {
        let c = sunflower(4).unwrap();
        let n = c.network();
        let err = min_circuit_cover(&c, set(n, &["a1", "eh"])).unwrap_err();
        assert!(matches!(err, CircularError::NotACocircuit(_)));
    }

    #[test]
    fn double_sunflower_has_two_circuit_witness() {
        let report = duality_theorem_check(&double_sunflower(6).unwrap()).unwrap();
        assert!(report.holds());
        assert_eq!(report.min_k, Some(2));
    }
}
