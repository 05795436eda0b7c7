//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any gating criterion fails. Criterion 10 is report-only.
//!
//! Every tolerance is pinned below. All comparisons are exact (rational or
//! integer arithmetic), so the numeric tolerance is zero throughout; the only
//! non-exact quantities are sample counts, seeds and wall-clock budgets.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dirichlet_core::circular::{self, CircularNetwork};
use dirichlet_core::dirichlet::{connectivity_criteria, dirichlet_matroid, grove_matroid, lift_matroid};
use dirichlet_core::electrical::{
    grove_identities_with, hpp_sample, interlacing_sample, proper_position_checks, response, sample_point, ElectricalError,
};
use dirichlet_core::field::Field;
use dirichlet_core::linrep::{block_injective_u, min_field_size, representability, representation_matrix};
use dirichlet_core::matroid::poly_from_counts;
use dirichlet_core::network::generate::{corpus, path, star, triangle};
use dirichlet_core::network::Network;
use dirichlet_core::poly::{chromatic_poly, cpintro_compare, grove_polys, hexwheel_scan, precolor_count, precoloring_poly};
use dirichlet_core::{EdgeSet, IntPoly, Matroid};

/// Sign and equality checks are exact: no slack on any comparison.
const EXACT_TOLERANCE: i64 = 0;
const ELECTRICAL_POINTS: usize = 200;
const HPP_POINTS: u64 = 500;
const INTERLACING_LINES: u64 = 20;
const BC_ORDERS: usize = 3;
const PRECOLOR_MAX_K: usize = 5;
const TUTTE_GROUND_LIMIT: usize = 10;
const BETA_NABLA_EDGE_LIMIT: usize = 20;
const HEXWHEEL_M_MAX: usize = 8;
const SEED: u64 = 20240;
const BUDGET_ORACLES: Duration = Duration::from_secs(60);
const BUDGET_HPP: Duration = Duration::from_secs(300);
const BUDGET_DUALITY: Duration = Duration::from_secs(120);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// First failure message, if any.
type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(elapsed: Duration, budget: Duration) -> Check {
    ensure(elapsed <= budget, || format!("took {elapsed:.1?}, budget {budget:?}"))
}

fn oracle_triangulation(nets: &[(String, Network)]) -> Outcome {
    let start = Instant::now();
    let mut subsets = 0u64;
    let run = || -> Check {
        for (name, n) in nets {
            let crossing = dirichlet_matroid(n);
            let groves = grove_matroid(n).map_err(|e| format!("{name}: {e}"))?;
            let lift = lift_matroid(n);
            let u = block_injective_u(n, Field::Rational).map_err(|e| format!("{name}: {e}"))?;
            ensure(u.is_block_injective(), || format!("{name}: u not block-injective"))?;
            let linear = representation_matrix(n, &u).map_err(|e| format!("{name}: {e}"))?.matroid();
            for (route, other) in [("grove bases", &groves), ("lift rank", &lift), ("Q representation", &linear)] {
                ensure(crossing.same_rank_function(other).unwrap(), || format!("{name}: crossing oracle vs {route}"))?;
            }
        }
        Ok(())
    };
    let result = run().and_then(|_| within_budget(start.elapsed(), BUDGET_ORACLES));
    for (_, n) in nets {
        subsets += 1 << (n.edge_count() + 1);
    }
    let detail = format!("{} networks, {subsets} subsets x 4 rank routes, {:.1?}", nets.len(), start.elapsed());
    finish(result, detail)
}

fn finish(result: Check, detail: String) -> Outcome {
    match result {
        Ok(()) => outcome(true, detail),
        Err(e) => outcome(false, format!("{detail}; {e}")),
    }
}

fn set(n: &Network, labels: &[&str]) -> EdgeSet {
    n.parse_edge_set(labels, true).expect("labels from the fixed examples")
}

fn known_matroids() -> Outcome {
    let run = || -> Check {
        let s = dirichlet_matroid(&star(3).unwrap());
        ensure(s.same_rank_function(&Matroid::uniform(2, 4)).unwrap(), || "star:3 is not U_{2,4}".into())?;

        let t = triangle();
        let mut three: Vec<EdgeSet> = dirichlet_matroid(&t).circuits().unwrap().into_iter().filter(|c| c.len() == 3).collect();
        let mut expected = vec![set(&t, &["eh", "e1", "e2"]), set(&t, &["eh", "e3", "e4"]), set(&t, &["e2", "e3", "e5"])];
        three.sort();
        expected.sort();
        ensure(three == expected, || format!("triangle 3-circuits {three:?}"))?;

        // Natural map: e1, e2 to themselves, eh to the added clique edge.
        let p = path(3).unwrap();
        let nabla = Matroid::graphic(&p.add_clique());
        let identity: Vec<usize> = (0..3).collect();
        ensure(dirichlet_matroid(&p).iso_check(&nabla, Some(&identity)).unwrap(), || "N_P3 vs M(K3)".into())?;
        ensure(nabla.same_rank_function(&Matroid::uniform(2, 3)).unwrap(), || "∇ of path:3 is not K3".into())
    };
    finish(run(), "star:3 = U_{2,4}; triangle 3-circuits {eh,e1,e2},{eh,e3,e4},{e2,e3,e5}; N_P3 = M(K3)".into())
}

fn polynomial_identities(nets: &[(String, Network)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut precolor_checks = 0;
    let mut run = || -> Check {
        for (name, n) in nets {
            let m = dirichlet_matroid(n);
            let chi = m.char_poly().unwrap();
            let lhs = &chi * &IntPoly::falling_factorial(0, n.boundary_count());
            let rhs = &IntPoly::linear(1) * &chromatic_poly(&n.add_clique()).unwrap();
            ensure(lhs == rhs, || format!("{name}: χ_M·(λ)_m ≠ (λ−1)χ_∇"))?;
            let phi = precoloring_poly(n).unwrap();
            for k in n.boundary_count()..=PRECOLOR_MAX_K {
                precolor_checks += 1;
                ensure(phi.eval(k as i128) == precolor_count(n, k) as i128, || format!("{name}: precoloring at k={k}"))?;
            }
            for _ in 0..BC_ORDERS {
                let mut order: Vec<usize> = (0..m.len()).collect();
                order.shuffle(&mut rng);
                ensure(poly_from_counts(&m.broken_circuit_counts(&order).unwrap()) == chi, || {
                    format!("{name}: broken circuits under {order:?}")
                })?;
            }
        }
        Ok(())
    };
    let result = run();
    finish(result, format!("{} networks, {precolor_checks} precolor counts, {BC_ORDERS} orders each", nets.len()))
}

fn coefficient_domination(nets: &[(String, Network)]) -> Outcome {
    let run = || -> Check {
        for (name, n) in nets {
            let c = cpintro_compare(n).unwrap();
            ensure(c.verdict(), || format!("{name}: {c:?}"))?;
        }
        Ok(())
    };
    finish(run(), format!("{} networks, a_i ≥ b_i and equality below the shortest crossing", nets.len()))
}

fn electrical_identities(nets: &[(String, Network)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut singular = 0;
    let mut run = || -> Check {
        for (name, n) in nets {
            let g = grove_polys(n);
            let mut checked = 0;
            while checked < ELECTRICAL_POINTS {
                let x = sample_point(&mut rng, n.edge_count());
                match grove_identities_with(n, &g, &x) {
                    Ok(r) => {
                        ensure(r.holds(), || format!("{name}: {r:?}"))?;
                        checked += 1;
                    }
                    Err(ElectricalError::SingularInterior) => singular += 1,
                    Err(e) => return Err(format!("{name}: {e}")),
                }
            }
        }
        // Λ = (x₁x₂/(x₁+x₂))·[[1,−1],[−1,1]] on the 3-vertex path.
        let p = path(3).unwrap();
        let mut checked = 0;
        while checked < ELECTRICAL_POINTS {
            let x = sample_point(&mut rng, 2);
            let sum = &x[0] + &x[1];
            if sum.is_zero() {
                continue;
            }
            let c = &x[0] * &x[1] / sum;
            let lambda = response(&p, &x).map_err(|e| format!("path:3: {e}"))?.lambda;
            let expected = vec![vec![c.clone(), -c.clone()], vec![-c.clone(), c]];
            ensure(lambda == expected, || format!("path:3 closed form at {x:?}"))?;
            checked += 1;
        }
        Ok(())
    };
    let result = run();
    finish(
        result,
        format!("{ELECTRICAL_POINTS} nonsingular points per network ({singular} singular draws skipped), path:3 closed form"),
    )
}

fn hpp_evidence(nets: &[(String, Network)]) -> Outcome {
    let start = Instant::now();
    let (mut deltas, mut cs, mut lines) = (0u64, 0u64, 0u64);
    let mut min_delta: Option<BigRational> = None;
    let mut run = || -> Check {
        for (i, (name, n)) in nets.iter().enumerate() {
            let seed = SEED + 100 + i as u64;
            let h = hpp_sample(n, HPP_POINTS, seed);
            ensure(h.holds(), || format!("{name}: {:?}", h.violation))?;
            deltas += h.checks;
            if let Some(v) = h.min_value {
                if min_delta.as_ref().is_none_or(|m| v < *m) {
                    min_delta = Some(v);
                }
            }
            let pp = proper_position_checks(n, HPP_POINTS, seed);
            ensure(pp.holds(), || format!("{name}: {:?}", pp.violation))?;
            cs += pp.cauchy_schwarz_checks;
            let sweep = interlacing_sample(n, INTERLACING_LINES, seed);
            ensure(sweep.holds(), || format!("{name}: interlacing failed on lines {:?}", sweep.failures))?;
            lines += sweep.lines;
        }
        Ok(())
    };
    let result = run().and_then(|_| within_budget(start.elapsed(), BUDGET_HPP));
    let tolerance = BigRational::from_integer(EXACT_TOLERANCE.into());
    let result = result.and_then(|_| {
        ensure(min_delta.as_ref().is_none_or(|m| *m >= -tolerance.clone()), || "negative Rayleigh difference".into())
    });
    let min = min_delta.map(|m| if m.abs() < BigRational::one() { m.to_string() } else { "≥ 1".into() });
    finish(
        result,
        format!(
            "{deltas} Rayleigh differences (min {}), {cs} Cauchy-Schwarz checks, {lines} Sturm-isolated lines, {:.1?}",
            min.unwrap_or_else(|| "n/a".into()),
            start.elapsed()
        ),
    )
}

fn factorial(k: usize) -> i128 {
    (1..=k as i128).product()
}

fn connectivity(nets: &[(String, Network)]) -> Outcome {
    let (mut tutte, mut beta) = (0, 0);
    let mut run = || -> Check {
        for (name, n) in nets {
            let m = dirichlet_matroid(n);
            if m.len() <= TUTTE_GROUND_LIMIT {
                let report = connectivity_criteria(n);
                let t = m.tutte_connectivity().unwrap();
                ensure(report.three_conn == t.at_least(3), || format!("{name}: criterion vs Tutte {t}"))?;
                tutte += 1;
            }
            let nabla = n.add_clique();
            if nabla.edge_count() <= BETA_NABLA_EDGE_LIMIT {
                let lhs = m.beta().unwrap() * factorial(n.boundary_count() - 2);
                let rhs = Matroid::graphic(&nabla).beta().unwrap();
                ensure(lhs == rhs, || format!("{name}: β(M(N))·(m−2)! = {lhs}, β(M(∇Γ)) = {rhs}"))?;
                beta += 1;
            }
        }
        for s in 3..=5 {
            let n = star(s).unwrap();
            ensure(connectivity_criteria(&n).three_conn, || format!("star:{s} criterion"))?;
            ensure(dirichlet_matroid(&n).tutte_connectivity().unwrap().at_least(3), || format!("star:{s} Tutte"))?;
        }
        Ok(())
    };
    let result = run();
    finish(result, format!("{tutte} networks against brute-force Tutte, {beta} β identities, stars 3-connected"))
}

fn circular_corpus() -> Vec<(String, CircularNetwork)> {
    let mut out = vec![("wheatstone".to_string(), circular::wheatstone())];
    for m in 3..=5 {
        out.push((format!("sunflower:{m}"), circular::sunflower(m).unwrap()));
    }
    for m in [4, 6] {
        out.push((format!("double_sunflower:{m}"), circular::double_sunflower(m).unwrap()));
    }
    out
}

fn duality() -> Outcome {
    let start = Instant::now();
    let mut cocircuits = 0;
    let mut run = || -> Check {
        for (name, c) in circular_corpus() {
            let report = circular::duality_theorem_check(&c).map_err(|e| format!("{name}: {e}"))?;
            ensure(report.dichotomy_holds(), || format!("{name}: cocircuit dichotomy"))?;
            ensure(report.bounds_hold(), || format!("{name}: k outside [m/4 + 1/2, m/2 + 1)"))?;
            if report.boundary == 2 {
                ensure(report.two_boundary_isomorphism == Some(true), || format!("{name}: M*(N) ≇ M(N*)"))?;
            }
            cocircuits += report.cocircuits.len();
        }
        let s5 = circular::sunflower(5).unwrap();
        let n = s5.network();
        let y = set(n, &["a1", "b1", "a2", "b2", "a3", "b3", "a4", "b4", "eh"]);
        let k = circular::min_circuit_cover(&s5, y).map_err(|e| e.to_string())?.k;
        ensure(k == 3, || format!("sunflower:5 insulator needs {k} circuits"))?;

        let d6 = circular::double_sunflower(6).unwrap();
        let n = d6.network();
        let insulators = circular::insulators(&d6).map_err(|e| e.to_string())?;
        let y = ["a", "b"]
            .iter()
            .map(|side| {
                let mut labels: Vec<String> = ["h", "e1", "e2", "e3", "e4", "e5", "e6"].map(String::from).to_vec();
                labels.extend((1..=6).map(|s| format!("{side}{s}")));
                n.parse_edge_set(&labels, false).unwrap()
            })
            .find(|y| insulators.contains(y))
            .ok_or("double_sunflower:6 has no chord-cycle-petal insulator")?;
        let k = circular::min_circuit_cover(&d6, y.with(n.eh())).map_err(|e| e.to_string())?.k;
        ensure(k == 2, || format!("double_sunflower:6 insulator needs {k} circuits"))
    };
    let result = run().and_then(|_| within_budget(start.elapsed(), BUDGET_DUALITY));
    finish(result, format!("{cocircuits} cocircuits classified, sunflower:5 k=3, double_sunflower:6 k=2, {:.1?}", start.elapsed()))
}

fn representability_threshold(nets: &[(String, Network)]) -> Outcome {
    let fields = [Field::Prime(2), Field::Prime(3), Field::Gf4, Field::Prime(5)];
    let run = || -> Check {
        for s in 3..=5 {
            let n = star(s).unwrap();
            for f in fields {
                let q = f.size().unwrap() as usize;
                let r = representability(&n, f).unwrap().is_representable();
                ensure(r == (q >= s), || format!("star:{s} over GF({q}): {r}"))?;
            }
        }
        for (name, n) in nets {
            let s = n.max_block_boundary();
            let binary = representability(n, Field::Prime(2)).unwrap().is_representable();
            ensure(binary == n.block_boundaries().iter().all(|b| b.len() <= 2), || format!("{name}: binary"))?;
            let least = fields
                .iter()
                .find(|&&f| representability(n, f).unwrap().is_representable())
                .map(|f| f.size().unwrap() as usize);
            let threshold = fields.iter().map(|f| f.size().unwrap() as usize).find(|&q| q >= s);
            ensure(least == threshold, || format!("{name}: least field {least:?}, largest block boundary {s}"))?;
            ensure(min_field_size(n).min_size == s, || format!("{name}: min_field_size"))?;
        }
        Ok(())
    };
    finish(run(), format!("stars over GF(2..5), {} networks binary and field-size threshold", nets.len()))
}

fn hexwheel_report() -> Outcome {
    match hexwheel_scan(HEXWHEEL_M_MAX) {
        Ok(report) => {
            let closed = report.rows.iter().filter(|r| r.closed_form_holds).count();
            let rec = report.rows.iter().filter(|r| r.recurrence_holds == Some(false)).map(|r| r.m).collect::<Vec<_>>();
            outcome(
                report.base_cases_hold && closed == report.rows.len(),
                format!(
                    "m ≤ {HEXWHEEL_M_MAX}: base cases {}, closed form agrees for {closed}/{} m, recurrence as printed fails at m = {rec:?} (shifted-variable form holds)",
                    if report.base_cases_hold { "hold" } else { "fail" },
                    report.rows.len()
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() -> ExitCode {
    let nets = corpus();
    let criteria: Vec<(&str, bool, Box<dyn Fn() -> Outcome>)> = vec![
        ("oracle triangulation", true, Box::new(|| oracle_triangulation(&nets))),
        ("known matroids", true, Box::new(known_matroids)),
        ("polynomial identities", true, Box::new(|| polynomial_identities(&nets))),
        ("coefficient domination", true, Box::new(|| coefficient_domination(&nets))),
        ("electrical identities", true, Box::new(|| electrical_identities(&nets))),
        ("half-plane property evidence", true, Box::new(|| hpp_evidence(&nets))),
        ("connectivity", true, Box::new(|| connectivity(&nets))),
        ("duality", true, Box::new(duality)),
        ("representability", true, Box::new(|| representability_threshold(&nets))),
        ("hexwheel conjecture scan", false, Box::new(hexwheel_report)),
    ];
    let mut failed = 0;
    for (i, (name, gating, run)) in criteria.iter().enumerate() {
        let o = run();
        let verdict = match (o.pass, gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "REPORT",
        };
        println!("criterion {:>2} {name}: {verdict} ({})", i + 1, o.detail);
        if !o.pass && *gating {
            failed += 1;
        }
    }
    println!("acceptance: {} gating criteria, {failed} failed", criteria.iter().filter(|c| c.1).count());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
