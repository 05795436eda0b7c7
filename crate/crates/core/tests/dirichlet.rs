use dirichlet_core::biased::BiasedGraph;
use dirichlet_core::dirichlet::*;
use dirichlet_core::network::generate::corpus;
use dirichlet_core::network::{Network, EH_LABEL};
use dirichlet_core::{EdgeSet, Matroid};

fn small() -> Vec<(String, Network)> {
    corpus().into_iter().filter(|(_, n)| n.edge_count() <= 8).collect()
}

fn within(limit: usize) -> Vec<(String, Network)> {
    corpus().into_iter().filter(|(_, n)| n.edge_count() + 1 <= limit).collect()
}

#[test]
fn three_constructions_agree() {
    for (name, n) in within(16) {
        let d = dirichlet_matroid(&n);
        assert!(d.same_rank_function(&grove_matroid(&n).unwrap()).unwrap(), "{name}");
        assert!(d.same_rank_function(&lift_matroid(&n)).unwrap(), "{name}");
        assert!(d.verify_rank_axioms().unwrap() || n.edge_count() > 10, "{name}");
    }
}

#[test]
fn frame_of_omega0_is_dirichlet() {
    for (name, n) in small() {
        let frame = omega0(&n).frame_matroid();
        assert!(frame.same_rank_function(&dirichlet_matroid(&n)).unwrap(), "{name}");
    }
}

#[test]
fn linear_subclass_everywhere() {
    for (name, n) in corpus().into_iter().filter(|(_, n)| n.edge_count() <= 10) {
        assert!(biased_graph(&n).verify_linear_subclass(10).unwrap(), "{name}");
    }
    // A balanced class that is not theta-closed is caught.
    let theta = dirichlet_core::network::MultiGraph::from_pairs(2, &[(0, 1), (0, 1), (0, 1)]);
    let bad = BiasedGraph::from_balanced(theta, &[EdgeSet(0b011), EdgeSet(0b101)]).unwrap();
    assert!(!bad.verify_linear_subclass(10).unwrap());
}

#[test]
fn contraction_commutes_with_lift() {
    for (name, n) in small() {
        let omega = biased_graph(&n);
        let lift = lift_matroid(&n);
        for e in 0..n.edge_count() {
            let Ok(c) = omega.contract(e) else { continue };
            let minor = lift.minor(EdgeSet::EMPTY, EdgeSet::singleton(e)).unwrap();
            assert!(minor.same_rank_function(&c.lift0_matroid(EH_LABEL)).unwrap(), "{name} / {}", n.edge_label(e));
        }
    }
}

#[test]
fn circuits_and_cocircuits_have_one_kind() {
    for (name, n) in small() {
        let d = dirichlet_matroid(&n);
        for c in d.circuits().unwrap() {
            assert_eq!(circuit_kinds(&n, c).len(), 1, "{name}: {:?}", n.set_labels(c));
        }
        for z in d.cocircuits().unwrap() {
            assert_eq!(cocircuit_kinds(&n, z).len(), 1, "{name}: {:?}", n.set_labels(z));
        }
    }
}

#[test]
fn connectivity_theorems() {
    for (name, n) in within(16) {
        let report = connectivity_criteria(&n);
        let t = dirichlet_matroid(&n).tutte_connectivity().unwrap();
        assert_eq!(report.two_conn, t.at_least(2), "{name}");
        assert_eq!(report.three_conn, t.at_least(3), "{name}");
        assert_eq!(report.cut_below_two.is_some(), !report.two_conn, "{name}");
    }
}

#[test]
fn biseparation_refinements() {
    for (name, n) in within(14) {
        let seps = vertical_biseparations(&n, 2).unwrap();
        if !seps.is_empty() && n.interior_count() >= 2 {
            assert!(!connectivity_criteria(&n).three_conn, "{name}");
        }
        for s in &seps {
            assert_ne!(s.clause, Clause::BothBalanced, "{name}");
            let cut = s.refinements.contains(&Refinement::TractCutVertex) || s.refinements.contains(&Refinement::TractCutPair);
            assert_eq!(s.clause == Clause::OneBalanced, cut, "{name}: {:?}", n.set_labels(s.y));
            assert_eq!(s.clause == Clause::NeitherBalanced, s.refinements.contains(&Refinement::TractUnion), "{name}");
        }
    }
}

#[test]
fn balancing_sets_beyond_stars() {
    for (name, n) in small() {
        assert!(simplicity_check(&n), "{name}");
        assert!(balancing_sets(&n, 1).unwrap().is_empty(), "{name}");
        // A rank-2 balancing set rules out 3-connectivity once oΓ has 3 vertices.
        if n.interior_count() >= 2 && !balancing_sets(&n, 2).unwrap().is_empty() {
            assert!(!connectivity_criteria(&n).three_conn, "{name}");
        }
        if balancing_sets(&n, 2).unwrap().iter().any(|s| s.len() == 2) {
            assert_eq!(n.boundary_count(), 2, "{name}");
        }
    }
}

#[test]
fn star_rank_and_empty_rank() {
    for (_, n) in small() {
        let omega = biased_graph(&n);
        assert_eq!(omega.frame_rank(EdgeSet::EMPTY), 0);
        assert_eq!(omega.lift0_rank(EdgeSet::EMPTY), 0);
    }
    let s = dirichlet_core::network::generate::star(3).unwrap();
    assert_eq!(biased_graph(&s).lift0_rank(EdgeSet::full(4)), 2);
    assert!(dirichlet_matroid(&s).same_rank_function(&Matroid::uniform(2, 4)).unwrap());
}
