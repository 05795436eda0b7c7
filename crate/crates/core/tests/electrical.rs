use std::time::Instant;

use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dirichlet_core::electrical::*;
use dirichlet_core::network::generate::{corpus, path};
use dirichlet_core::poly::grove_polys;
use dirichlet_core::qpoly::int;

#[test]
fn grove_identities_on_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (name, n) in corpus() {
        let g = grove_polys(&n);
        let mut checked = 0;
        while checked < 50 {
            let x = sample_point(&mut rng, n.edge_count());
            match grove_identities_with(&n, &g, &x) {
                Ok(r) => {
                    assert!(r.holds(), "{name}: {r:?}");
                    checked += 1;
                }
                Err(ElectricalError::SingularInterior) => assert!(g.p0.eval(&x).unwrap() == int(0)),
                Err(e) => panic!("{name}: {e}"),
            }
        }
    }
}

#[test]
fn response_is_psd_at_positive_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, n) in corpus() {
        for _ in 0..5 {
            let x: Vec<_> = sample_point(&mut rng, n.edge_count()).into_iter().map(|c| c.abs() + int(1)).collect();
            let r = response(&n, &x).unwrap();
            assert!(r.nonnegative_on_sign_vectors(), "{name}");
            let u: Vec<_> = (0..n.boundary_count()).map(|i| int(i as i64 * 3 - 2)).collect();
            assert!(harmonic_extension_holds(&n, &x, &u).unwrap(), "{name}");
        }
    }
}

#[test]
fn rayleigh_and_proper_position_sweeps() {
    let start = Instant::now();
    for (i, (name, n)) in corpus().into_iter().enumerate() {
        let seed = 100 + i as u64;
        let h = hpp_sample(&n, 60, seed);
        assert!(h.holds(), "{name}: {:?}", h.violation);
        let p = proper_position_checks(&n, 40, seed);
        assert!(p.holds(), "{name}: {:?}", p.violation);
        let b = monotonicity_and_bound(&n, 20, seed);
        assert!(b.holds(), "{name}: {:?}", b.violation);
        let s = interlacing_sample(&n, 5, seed);
        assert!(s.holds(), "{name}: {s:?}");
    }
    println!("sweeps took {:?}", start.elapsed());
}

#[test]
fn path3_trace_formula() {
    let n = path(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let x = sample_point(&mut rng, 2);
        let s = &x[0] + &x[1];
        if s == int(0) {
            continue;
        }
        let r = response(&n, &x).unwrap();
        let c = &x[0] * &x[1] / &s;
        assert_eq!(r.lambda[0][0], c);
        assert_eq!(r.lambda[0][1], -c.clone());
        assert_eq!(r.trace(), &c + &c);
    }
}
