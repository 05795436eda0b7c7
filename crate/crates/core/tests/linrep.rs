use dirichlet_core::dirichlet::dirichlet_matroid;
use dirichlet_core::field::{Field, Scalar};
use dirichlet_core::linrep::*;
use dirichlet_core::network::generate::corpus;
use dirichlet_core::network::{Network, NetworkSpec};
use num_rational::BigRational;
use num_traits::{One, Zero};

fn small() -> Vec<(String, Network)> {
    corpus().into_iter().filter(|(_, n)| n.edge_count() <= 8).collect()
}

/// Hexagon a-x-b-y-c-z-a with boundary {a, b, c}: three blocks of two
/// boundary nodes whose crossing graph is a triangle.
fn hexagon() -> Network {
    let spec: NetworkSpec = serde_json::from_str(
        r#"{"vertices":["a","b","c","x","y","z"],"boundary":["a","b","c"],
            "edges":[["a","x"],["x","b"],["b","y"],["y","c"],["c","z"],["z","a"]]}"#,
    )
    .unwrap();
    Network::validate(&spec).unwrap()
}

#[test]
fn matrices_represent_the_matroid() {
    for (name, n) in small() {
        let m = dirichlet_matroid(&n);
        for field in [Field::Rational, Field::Prime(2), Field::Prime(3), Field::Gf4, Field::Prime(5), Field::Prime(7)] {
            let Ok(u) = block_injective_u(&n, field) else {
                assert!(field.size().unwrap() < n.max_block_boundary() as u64, "{name} {field}");
                continue;
            };
            assert!(u.is_block_injective());
            let rep = representation_matrix(&n, &u).unwrap();
            assert!(rep.matroid().same_rank_function(&m).unwrap(), "{name} over {field}");
        }
    }
}

#[test]
fn affine_changes_of_u_preserve_ranks() {
    let q = Field::Rational;
    for (name, n) in small() {
        let u = block_injective_u(&n, q).unwrap();
        let base = representation_matrix(&n, &u).unwrap().matroid();
        for (a, t) in [(3, 0), (-2, 5), (1, -7)] {
            let moved = u.affine(&q.from_int(a), &q.from_int(t));
            let m = representation_matrix(&n, &moved).unwrap().matroid();
            assert!(m.same_rank_function(&base).unwrap(), "{name}");
        }
    }
}

#[test]
fn interior_columns_have_two_entries() {
    for (_, n) in small() {
        let rep = representation_matrix(&n, &block_injective_u(&n, Field::Rational).unwrap()).unwrap();
        for (i, e) in n.edges().iter().enumerate() {
            if !n.is_boundary(e.ends.0) && !n.is_boundary(e.ends.1) {
                assert_eq!(rep.columns[i].iter().filter(|s| !s.is_zero()).count(), 2);
            }
        }
        let eh = rep.columns.last().unwrap();
        assert!(eh[..eh.len() - 1].iter().all(Scalar::is_zero) && !eh.last().unwrap().is_zero());
    }
}

#[test]
fn threshold_is_the_largest_block() {
    for (name, n) in small() {
        let s = n.max_block_boundary();
        for field in [Field::Prime(2), Field::Prime(3), Field::Gf4, Field::Prime(5)] {
            let r = representability(&n, field).unwrap();
            assert_eq!(r.is_representable(), field.size().unwrap() as usize >= s, "{name} {field}");
            match r {
                Representability::Representable { verified, .. } => assert!(verified),
                Representability::NotRepresentable(w) => assert!(w.verified && w.s == s),
            }
        }
        let report = min_field_size(&n);
        assert_eq!(report.min_size, s);
        assert!(report.agree, "{name}");
    }
}

#[test]
fn hexagon_separates_block_count_from_crossing_chromatic_number() {
    let n = hexagon();
    let report = min_field_size(&n);
    assert_eq!((report.min_size, report.crossing_chromatic), (2, 3));
    assert!(!report.agree);
    let u = block_injective_u(&n, Field::Prime(2)).unwrap();
    assert!(u.as_global(&n).is_none());
    assert!(representability(&n, Field::Prime(2)).unwrap().is_representable());
}

fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let k = m.len();
    let mut d = BigRational::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c].clone();
        for r in c + 1..k {
            let f = &m[r][c] / &m[c][c];
            for j in c..k {
                let v = &m[r][j] - &f * &m[c][j];
                m[r][j] = v;
            }
        }
    }
    d
}

#[test]
fn binary_networks_are_regular() {
    // With two boundary values per block the rational matrix is totally unimodular.
    let q = Field::Rational;
    for (name, n) in small().into_iter().filter(|(_, n)| n.max_block_boundary() <= 2 && n.interior_count() <= 3) {
        let rep = representation_matrix(&n, &block_injective_u(&n, q).unwrap()).unwrap();
        let rows = rep.row_labels.len();
        let cols = rep.columns.len();
        let entry = |r: usize, c: usize| match &rep.columns[c][r] {
            Scalar::Q(v) => v.clone(),
            _ => unreachable!(),
        };
        for rs in 1u64..1 << rows {
            let rsel: Vec<usize> = (0..rows).filter(|r| rs >> r & 1 == 1).collect();
            for cs in 1u64..1 << cols {
                if cs.count_ones() as usize != rsel.len() {
                    continue;
                }
                let csel: Vec<usize> = (0..cols).filter(|c| cs >> c & 1 == 1).collect();
                let d = det(rsel.iter().map(|&r| csel.iter().map(|&c| entry(r, c)).collect()).collect());
                assert!(d.is_zero() || d == BigRational::one() || d == -BigRational::one(), "{name}");
            }
        }
    }
}
