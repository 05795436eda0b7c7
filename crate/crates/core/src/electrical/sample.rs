//! Seeded sampling of Rayleigh differences, Wronskians and line restrictions.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::sturm::{interlaces, isolate_roots, IsolatedRoot};
use super::{harmonic, trace_derivative_with, ElectricalError};
use crate::exec::Exec;
use crate::network::Network;
use crate::poly::{basis_gen_poly, grove_polys, MultiAffinePoly, PolyError};
use crate::qpoly::{ser, RatPoly};

/// Independent generator for trial `trial` of a run seeded with `seed`.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Numerators uniform in `[−100, 100]`, denominators in `[1, 20]`; one
/// coordinate in ten is forced to zero to probe the boundary of the region.
pub fn sample_point(rng: &mut impl Rng, len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|_| {
            if rng.random_ratio(1, 10) {
                BigRational::zero()
            } else {
                BigRational::new(rng.random_range(-100i64..=100).into(), rng.random_range(1i64..=20).into())
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaValues {
    /// `Δ_ef(f) = ∂_e f·∂_f f − f·∂_e∂_f f`.
    pub delta: BigRational,
    /// `E_ef(f, g)`.
    pub e_value: BigRational,
    /// `W_e(f, g) = f·∂_e g − ∂_e f·g`.
    pub wronskian: BigRational,
}

pub fn delta_eval(
    f: &MultiAffinePoly,
    g: &MultiAffinePoly,
    e: usize,
    f2: usize,
    x: &[BigRational],
) -> Result<DeltaValues, PolyError> {
    for (p, v) in [(f, e), (f, f2), (g, e), (g, f2)] {
        if v >= p.universe().len() {
            return Err(PolyError::UnknownVariable(v));
        }
    }
    let fe = f.partial(e);
    let ge = g.partial(e);
    let (fv, gv) = (f.eval(x)?, g.eval(x)?);
    let (fev, gev) = (fe.eval(x)?, ge.eval(x)?);
    let (ffv, gfv) = (f.partial_eval(f2, x)?, g.partial_eval(f2, x)?);
    let (fefv, gefv) = (fe.partial_eval(f2, x)?, ge.partial_eval(f2, x)?);
    Ok(DeltaValues {
        delta: &fev * &ffv - &fv * &fefv,
        e_value: &fev * &gfv + &ffv * &gev - &fv * &gefv - &fefv * &gv,
        wronskian: &fv * &gev - &fev * &gv,
    })
}

/// A failing sample: the point, the variables involved and the offending value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub trial: u64,
    #[serde(serialize_with = "ser::vec")]
    pub point: Vec<BigRational>,
    pub variables: (usize, usize),
    pub check: &'static str,
    #[serde(serialize_with = "ser::rational")]
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub trials: u64,
    pub checks: u64,
    #[serde(serialize_with = "ser::option")]
    pub min_value: Option<BigRational>,
    pub violation: Option<Witness>,
}

impl StabilityReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

fn min_opt(a: Option<BigRational>, b: Option<BigRational>) -> Option<BigRational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b < a { b } else { a }),
        (a, b) => a.or(b),
    }
}

/// Partials of a multiaffine polynomial, precomputed for repeated evaluation.
struct Partials {
    first: Vec<MultiAffinePoly>,
    second: Vec<Vec<MultiAffinePoly>>,
}

impl Partials {
    fn new(f: &MultiAffinePoly) -> Partials {
        let n = f.universe().len();
        let first: Vec<MultiAffinePoly> = (0..n).map(|e| f.partial(e)).collect();
        let second = (0..n).map(|e| (0..n).map(|g| first[e].partial(g)).collect()).collect();
        Partials { first, second }
    }
}

/// Samples `Δ_ef(f)(x) ≥ 0` over all pairs `e ≤ f` at `trials` seeded points.
/// Diagonal pairs reduce to `(∂_e f)²`.
pub fn stability_sample(f: &MultiAffinePoly, trials: u64, seed: u64, exec: Exec) -> StabilityReport {
    let n = f.universe().len();
    let d = Partials::new(f);
    let per_trial = exec.map_range(0..trials, |t| {
        let x = sample_point(&mut trial_rng(seed, t), n);
        let fv = f.eval(&x).expect("point spans the universe");
        let dv: Vec<BigRational> = d.first.iter().map(|p| p.eval(&x).expect("sized")).collect();
        let mut min: Option<BigRational> = None;
        let mut violation = None;
        for e in 0..n {
            for g in e..n {
                let delta = &dv[e] * &dv[g] - &fv * d.second[e][g].eval(&x).expect("sized");
                if delta.is_negative() && violation.is_none() {
                    violation = Some(Witness {
                        trial: t,
                        point: x.clone(),
                        variables: (e, g),
                        check: "rayleigh",
                        value: delta.clone(),
                    });
                }
                min = min_opt(min, Some(delta));
            }
        }
        (min, violation)
    });
    let pairs = (n * (n + 1) / 2) as u64;
    let mut report = StabilityReport { trials, checks: trials * pairs, min_value: None, violation: None };
    for (min, violation) in per_trial {
        report.min_value = min_opt(report.min_value.take(), min);
        if report.violation.is_none() {
            report.violation = violation;
        }
    }
    report
}

/// HPP evidence for `M(N)`: [`stability_sample`] on `P_B` over `E ∪ {eh}`.
pub fn hpp_sample(n: &Network, trials: u64, seed: u64) -> StabilityReport {
    stability_sample(&basis_gen_poly(n), trials, seed, Exec::default())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperPositionReport {
    pub trials: u64,
    pub wronskian_checks: u64,
    pub cauchy_schwarz_checks: u64,
    /// Largest `W_e(P₁, P₀)` seen; proper position needs it `≤ 0`.
    #[serde(serialize_with = "ser::option")]
    pub max_wronskian: Option<BigRational>,
    pub violation: Option<Witness>,
}

impl ProperPositionReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// `P₀ ≪ P₁` through the Cauchy–Schwarz characterization: `W_e(P₁, P₀) ≤ 0`
/// for every `e`, and `E_ef(P₀,P₁)² ≤ E_ef(P₀,P₀)·E_ef(P₁,P₁)` for `e ≤ f`.
pub fn proper_position_checks(n: &Network, trials: u64, seed: u64) -> ProperPositionReport {
    let g = grove_polys(n);
    let (d0, d1) = (Partials::new(&g.p0), Partials::new(&g.p1));
    let m = n.edge_count();
    let per_trial = Exec::default().map_range(0..trials, |t| {
        let x = sample_point(&mut trial_rng(seed, t), m);
        let ev = |p: &MultiAffinePoly| p.eval(&x).expect("sized");
        let (f0, f1) = (ev(&g.p0), ev(&g.p1));
        let a: Vec<BigRational> = d0.first.iter().map(ev).collect();
        let b: Vec<BigRational> = d1.first.iter().map(ev).collect();
        let mut max_w: Option<BigRational> = None;
        let mut violation = None;
        let mut flag = |e: usize, f: usize, check: &'static str, value: BigRational| {
            if violation.is_none() {
                violation = Some(Witness { trial: t, point: x.clone(), variables: (e, f), check, value });
            }
        };
        for e in 0..m {
            let w = &f1 * &a[e] - &b[e] * &f0;
            if w.is_positive() {
                flag(e, e, "wronskian", w.clone());
            }
            max_w = Some(match max_w {
                Some(c) if c >= w => c,
                _ => w,
            });
        }
        for e in 0..m {
            for f in e..m {
                let (a2, b2) = (ev(&d0.second[e][f]), ev(&d1.second[e][f]));
                let e00 = (&a[e] * &a[f] - &f0 * &a2) * BigRational::from_integer(2.into());
                let e11 = (&b[e] * &b[f] - &f1 * &b2) * BigRational::from_integer(2.into());
                let e01 = &a[e] * &b[f] + &a[f] * &b[e] - &f0 * &b2 - &a2 * &f1;
                let gap = e00 * e11 - &e01 * &e01;
                if gap.is_negative() {
                    flag(e, f, "cauchy-schwarz", gap);
                }
            }
        }
        (max_w, violation)
    });
    let mut report = ProperPositionReport {
        trials,
        wronskian_checks: trials * m as u64,
        cauchy_schwarz_checks: trials * (m * (m + 1) / 2) as u64,
        max_wronskian: None,
        violation: None,
    };
    for (w, v) in per_trial {
        report.max_wronskian = match (report.max_wronskian.take(), w) {
            (Some(a), Some(b)) => Some(if b > a { b } else { a }),
            (a, b) => a.or(b),
        };
        if report.violation.is_none() {
            report.violation = v;
        }
    }
    report
}

/// `t ↦ x + t·y` with `y` strictly positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineRestriction {
    #[serde(serialize_with = "ser::vec")]
    x: Vec<BigRational>,
    #[serde(serialize_with = "ser::vec")]
    y: Vec<BigRational>,
}

impl LineRestriction {
    pub fn new(x: Vec<BigRational>, y: Vec<BigRational>) -> Result<LineRestriction, ElectricalError> {
        if y.len() != x.len() {
            return Err(ElectricalError::MissingWeight { expected: x.len(), got: y.len() });
        }
        if !y.iter().all(|c| c.is_positive()) {
            return Err(ElectricalError::NonPositiveDirection);
        }
        Ok(LineRestriction { x, y })
    }

    pub fn base(&self) -> &[BigRational] {
        &self.x
    }

    pub fn direction(&self) -> &[BigRational] {
        &self.y
    }
}

pub fn random_positive_line(rng: &mut impl Rng, len: usize) -> LineRestriction {
    let x = sample_point(rng, len);
    let y = (0..len)
        .map(|_| BigRational::new(rng.random_range(1i64..=100).into(), rng.random_range(1i64..=20).into()))
        .collect();
    LineRestriction::new(x, y).expect("positive by construction")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterlacingReport {
    pub p0: String,
    pub p1: String,
    /// Roots of `P₀·P₁` with multiplicities `[in P₀, in P₁]`.
    pub roots: Vec<IsolatedRoot>,
    pub real_rooted: bool,
    pub interlaces: bool,
}

impl InterlacingReport {
    pub fn holds(&self) -> bool {
        self.real_rooted && self.interlaces
    }
}

fn interlacing_with(p0: &RatPoly, p1: &RatPoly) -> Result<InterlacingReport, ElectricalError> {
    if p0.is_zero() {
        return Err(ElectricalError::ZeroRestriction("P0"));
    }
    if p1.is_zero() {
        return Err(ElectricalError::ZeroRestriction("P1"));
    }
    let roots = isolate_roots(&[p0, p1]);
    let count = |k: usize| roots.iter().map(|r| r.multiplicity[k]).sum::<usize>();
    let real_rooted = count(0) == p0.degree().unwrap_or(0) && count(1) == p1.degree().unwrap_or(0);
    Ok(InterlacingReport {
        p0: p0.to_string(),
        p1: p1.to_string(),
        interlaces: interlaces(&roots, 0, 1),
        roots,
        real_rooted,
    })
}

pub fn interlacing(n: &Network, line: &LineRestriction) -> Result<InterlacingReport, ElectricalError> {
    let g = grove_polys(n);
    let p0 = g.p0.restrict_line(line.base(), line.direction())?;
    let p1 = g.p1.restrict_line(line.base(), line.direction())?;
    interlacing_with(&p0, &p1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterlacingSweep {
    pub lines: u64,
    pub zero_restrictions: u64,
    pub failures: Vec<u64>,
}

impl InterlacingSweep {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// [`interlacing`] on `lines` seeded positive lines.
pub fn interlacing_sample(n: &Network, lines: u64, seed: u64) -> InterlacingSweep {
    let g = grove_polys(n);
    let results = Exec::default().map_range(0..lines, |t| {
        let line = random_positive_line(&mut trial_rng(seed, t), n.edge_count());
        let p0 = g.p0.restrict_line(line.base(), line.direction()).expect("sized");
        let p1 = g.p1.restrict_line(line.base(), line.direction()).expect("sized");
        interlacing_with(&p0, &p1).map(|r| r.holds())
    });
    let mut sweep = InterlacingSweep { lines, zero_restrictions: 0, failures: Vec::new() };
    for (t, r) in results.into_iter().enumerate() {
        match r {
            Ok(true) => {}
            Ok(false) => sweep.failures.push(t as u64),
            Err(_) => sweep.zero_restrictions += 1,
        }
    }
    sweep
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub trials: u64,
    /// Points with `P₀(x) = 0`, where `Λ` is undefined.
    pub singular_skipped: u64,
    pub monotonicity_checks: u64,
    pub bound_checks: u64,
    /// Pairs skipped because `Δ_ef(P₁)(x) = 0`.
    pub bound_skipped: u64,
    pub violation: Option<Witness>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `∂_f(trΛ)·P₀² = 2Δ_{eh,f}(P_B) ≥ 0`, with `∂_f trΛ` taken from the
/// Schur complement directly, and `4Δ_ef(P₀)Δ_ef(P₁) ≥ E_ef(P₀,P₁)²` with
/// `Δ_ef(P₁) > 0` wherever `Δ_ef(P₁) ≠ 0`.
pub fn monotonicity_and_bound(n: &Network, trials: u64, seed: u64) -> BoundReport {
    let g = grove_polys(n);
    let pb = basis_gen_poly(n);
    let (d0, d1) = (Partials::new(&g.p0), Partials::new(&g.p1));
    let m = n.edge_count();
    let eh = n.eh();
    let two = BigRational::from_integer(2.into());
    let per_trial = Exec::default().map_range(0..trials, |t| {
        let mut rng = trial_rng(seed, t);
        let xb = sample_point(&mut rng, m + 1);
        let x = &xb[..m];
        let ev = |p: &MultiAffinePoly| p.eval(x).expect("sized");
        let (f0, f1) = (ev(&g.p0), ev(&g.p1));
        let mut counts = [0u64; 4];
        let mut violation = None;
        let mut flag = |e: usize, f: usize, check: &'static str, value: BigRational| {
            if violation.is_none() {
                violation = Some(Witness { trial: t, point: xb.clone(), variables: (e, f), check, value });
            }
        };
        let a: Vec<BigRational> = d0.first.iter().map(ev).collect();
        let b: Vec<BigRational> = d1.first.iter().map(ev).collect();
        if f0.is_zero() {
            counts[0] += 1;
        } else {
            let h = harmonic(n, x).expect("P0 = det D is nonzero");
            for f in 0..m {
                counts[1] += 1;
                let lhs = trace_derivative_with(n, &h, f) * &f0 * &f0;
                let rayleigh = delta_eval(&pb, &pb, eh, f, &xb).expect("sized").delta;
                if lhs != &rayleigh * &two {
                    flag(eh, f, "monotonicity-identity", lhs.clone() - &rayleigh * &two);
                }
                if rayleigh.is_negative() {
                    flag(eh, f, "monotonicity-sign", rayleigh);
                }
            }
        }
        for e in 0..m {
            for f in e..m {
                let (a2, b2) = (ev(&d0.second[e][f]), ev(&d1.second[e][f]));
                let delta0 = &a[e] * &a[f] - &f0 * &a2;
                let delta1 = &b[e] * &b[f] - &f1 * &b2;
                if delta1.is_zero() {
                    counts[3] += 1;
                    continue;
                }
                counts[2] += 1;
                let e01 = &a[e] * &b[f] + &a[f] * &b[e] - &f0 * &b2 - &a2 * &f1;
                if delta1.is_negative() {
                    flag(e, f, "bound-denominator", delta1.clone());
                }
                let gap = delta0 * &delta1 * BigRational::from_integer(4.into()) - &e01 * &e01;
                if gap.is_negative() {
                    flag(e, f, "bound", gap);
                }
            }
        }
        (counts, violation)
    });
    let mut report = BoundReport {
        trials,
        singular_skipped: 0,
        monotonicity_checks: 0,
        bound_checks: 0,
        bound_skipped: 0,
        violation: None,
    };
    for (c, v) in per_trial {
        report.singular_skipped += c[0];
        report.monotonicity_checks += c[1];
        report.bound_checks += c[2];
        report.bound_skipped += c[3];
        if report.violation.is_none() {
            report.violation = v;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::generate::{path, star};
    use crate::qpoly::int;

    #[test]
    fn path3_delta_values() {
        let n = path(3).unwrap();
        let g = grove_polys(&n);
        let x = [int(5), int(7)];
        assert_eq!(delta_eval(&g.p0, &g.p0, 0, 1, &x).unwrap().delta, int(1));
        let pb = basis_gen_poly(&n);
        let xb = [int(5), int(7), int(11)];
        assert_eq!(delta_eval(&pb, &pb, 2, 0, &xb).unwrap().delta, int(49));
        // W_e1(P₀, P₁) = x₂² matches Δ_{eh,e1}(P_B).
        assert_eq!(delta_eval(&g.p0, &g.p1, 0, 0, &x).unwrap().wronskian, int(49));
        let v = delta_eval(&pb, &pb, 0, 2, &xb).unwrap();
        assert_eq!(v.e_value, &v.delta * int(2));
        assert_eq!(delta_eval(&g.p0, &g.p0, 0, 5, &x).unwrap_err(), PolyError::UnknownVariable(5));
    }

    #[test]
    fn path3_lines() {
        let n = path(3).unwrap();
        let line = LineRestriction::new(vec![int(-3), int(1)], vec![int(1), int(1)]).unwrap();
        let r = interlacing(&n, &line).unwrap();
        assert!(r.holds());
        assert_eq!(r.roots.len(), 3);
        let origin = LineRestriction::new(vec![int(0), int(0)], vec![int(1), int(1)]).unwrap();
        let r = interlacing(&n, &origin).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].multiplicity, vec![1, 2]);
        assert!(r.holds());
        assert_eq!(
            LineRestriction::new(vec![int(0), int(0)], vec![int(1), int(0)]).unwrap_err(),
            ElectricalError::NonPositiveDirection
        );
    }

    #[test]
    fn small_sweeps() {
        let s = star(3).unwrap();
        assert!(hpp_sample(&s, 100, 1).holds());
        assert!(proper_position_checks(&s, 50, 2).holds());
        assert!(monotonicity_and_bound(&s, 30, 3).holds());
        assert!(interlacing_sample(&s, 10, 4).holds());
        let p = hpp_sample(&path(3).unwrap(), 100, 5);
        assert!(p.holds());
        assert_eq!(p.min_value, Some(int(0)));
    }

    #[test]
    fn non_stable_seed_is_caught() {
        let labels: Vec<String> = (1..=4).map(|i| format!("x{i}")).collect();
        let f = MultiAffinePoly::from_set_family(labels.clone(), &[crate::EdgeSet(0b0011)])
            .add(&MultiAffinePoly::from_set_family(labels, &[crate::EdgeSet(0b1100)]).scale(&int(-1)));
        let r = stability_sample(&f, 50, 0, Exec::Sequential);
        let w = r.violation.expect("x1x2 - x3x4 is not stable");
        assert!(w.value.is_negative());
    }
}
