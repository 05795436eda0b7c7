use dirichlet_core::circular::{
    double_sunflower, duality_theorem_check, from_json, insulators, insulators_by_paths, min_circuit_cover, sunflower,
    wheatstone, CocircuitClass,
};
use dirichlet_core::edgeset::EdgeSet;
use dirichlet_core::matroid::Matroid;

#[test]
fn sunflower_five_duality() {
    let c = sunflower(5).unwrap();
    let d = c.dual_network().unwrap();
    let dn = d.circular.network();
    assert_eq!((dn.boundary_count(), dn.interior_count()), (5, 6));
    let report = duality_theorem_check(&c).unwrap();
    assert!(report.holds());
    // 1.75 ≤ k < 3.5, and the upper extreme ½m + ½ = 3 is reached.
    assert_eq!(report.max_k, Some(3));
    assert!(report.min_k.unwrap() >= 2);
    let graphic = report.cocircuits.iter().filter(|(_, c)| matches!(c, CocircuitClass::Graphic { .. })).count();
    assert!(graphic > 0 && graphic < report.cocircuits.len());
}

#[test]
fn double_sunflower_six_duality() {
    let c = double_sunflower(6).unwrap();
    let n = c.network();
    let d = c.dual_network().unwrap();
    assert_eq!(d.circular.network().boundary_count(), 6);
    let ins = insulators(&c).unwrap();
    let chord_and_cycle = ["h", "e1", "e2", "e3", "e4", "e5", "e6"];
    let witness = ["a", "b"]
        .iter()
        .map(|side| {
            let mut labels: Vec<String> = chord_and_cycle.iter().map(|s| s.to_string()).collect();
            labels.extend((1..=6).map(|s| format!("{side}{s}")));
            n.parse_edge_set(&labels, false).unwrap()
        })
        .find(|y| ins.contains(y))
        .expect("chord, cycle and one petal side form an insulator");
    assert_eq!(min_circuit_cover(&c, witness.with(n.eh())).unwrap().k, 2);
}

#[test]
fn og_dual_is_the_plane_dual() {
    for c in [sunflower(4).unwrap(), sunflower(5).unwrap(), wheatstone()] {
        let n = c.network();
        let og = n.identify_boundary();
        let star = c.og_dual().unwrap();
        // Euler's formula on the sphere, one dual vertex per face of oΓ.
        assert_eq!(star.vertex_count() + og.vertex_count(), n.edge_count() + 2);
        let dual_of_og = Matroid::graphic(&og).dual();
        assert!(dual_of_og.same_rank_function(&Matroid::graphic(&star)).unwrap());
    }
}

#[test]
fn insulator_routes_agree() {
    for c in [sunflower(3).unwrap(), sunflower(4).unwrap(), wheatstone()] {
        let a = insulators(&c).unwrap();
        assert_eq!(a, insulators_by_paths(&c).unwrap());
        assert!(a.iter().all(|y| *y != EdgeSet::EMPTY));
    }
}

#[test]
fn embedding_round_trips_through_json() {
    let c = sunflower(4).unwrap();
    let mut spec = c.network().to_spec();
    spec.embedding = Some(c.embedding_spec());
    let text = serde_json::to_string(&spec).unwrap();
    let back = from_json(&text).unwrap();
    assert_eq!(back.embedding_spec(), c.embedding_spec());
    assert_eq!(back.inner_faces().len(), c.inner_faces().len());
}
