use std::collections::HashMap;

use serde::Serialize;

use super::PolyError;
use crate::intpoly::IntPoly;
use crate::network::generate::hexwheel;
use crate::network::{MultiGraph, Network};

/// Largest vertex count accepted by the chromatic polynomial routines.
pub const CHROMATIC_VERTEX_LIMIT: usize = 24;
const PARTITION_VERTEX_LIMIT: usize = 16;

/// Simple-graph adjacency as bitmasks; parallel edges collapse.
fn adjacency(g: &MultiGraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.vertex_count()];
    for e in g.edges() {
        let (a, b) = e.ends;
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    adj
}

fn check_size(g: &MultiGraph, limit: usize) -> Result<(), PolyError> {
    if g.vertex_count() > limit {
        return Err(PolyError::GraphTooLarge { size: g.vertex_count(), limit });
    }
    Ok(())
}

/// `χ_G(λ)` by deletion–contraction, memoized on the exact remaining graph.
/// Isolated vertices, leaves, disconnected pieces and cliques are peeled off
/// in closed form. A loop makes the polynomial zero.
pub fn chromatic_poly(g: &MultiGraph) -> Result<IntPoly, PolyError> {
    check_size(g, CHROMATIC_VERTEX_LIMIT)?;
    if g.has_loop() {
        return Ok(IntPoly::zero());
    }
    let adj = adjacency(g);
    let alive = if g.vertex_count() == 64 { u64::MAX } else { (1u64 << g.vertex_count()) - 1 };
    let mut memo = HashMap::new();
    Ok(dc(alive, adj, &mut memo))
}

type Memo = HashMap<(u64, Vec<u64>), IntPoly>;

fn dc(alive: u64, adj: Vec<u64>, memo: &mut Memo) -> IntPoly {
    if alive == 0 {
        return IntPoly::constant(1);
    }
    let key: Vec<u64> = bits(alive).map(|v| adj[v]).collect();
    if let Some(p) = memo.get(&(alive, key.clone())) {
        return p.clone();
    }
    let result = dc_uncached(alive, adj, memo);
    memo.insert((alive, key), result.clone());
    result
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let v = x.trailing_zeros() as usize;
            x &= x - 1;
            v
        })
    })
}

fn remove(alive: u64, mut adj: Vec<u64>, v: usize) -> (u64, Vec<u64>) {
    for w in bits(adj[v]) {
        adj[w] &= !(1 << v);
    }
    adj[v] = 0;
    (alive & !(1 << v), adj)
}

fn dc_uncached(alive: u64, adj: Vec<u64>, memo: &mut Memo) -> IntPoly {
    let deg = |v: usize| adj[v].count_ones();
    if let Some(v) = bits(alive).find(|&v| deg(v) == 0) {
        let (a, r) = remove(alive, adj, v);
        return &IntPoly::lambda() * &dc(a, r, memo);
    }
    if let Some(v) = bits(alive).find(|&v| deg(v) == 1) {
        let (a, r) = remove(alive, adj, v);
        return &IntPoly::linear(1) * &dc(a, r, memo);
    }
    // Split off the component of the lowest vertex when the graph is disconnected.
    let first = alive.trailing_zeros() as usize;
    let mut comp = 1u64 << first;
    let mut frontier = comp;
    while frontier != 0 {
        let next = bits(frontier).fold(0, |acc, v| acc | adj[v]) & !comp;
        comp |= next;
        frontier = next;
    }
    if comp != alive {
        let rest = alive & !comp;
        let left: Vec<u64> = adj.iter().enumerate().map(|(v, &a)| if comp >> v & 1 == 1 { a } else { 0 }).collect();
        let right: Vec<u64> = adj.iter().enumerate().map(|(v, &a)| if rest >> v & 1 == 1 { a } else { 0 }).collect();
        return &dc(comp, left, memo) * &dc(rest, right, memo);
    }
    let n = alive.count_ones() as usize;
    if bits(alive).all(|v| deg(v) as usize == n - 1) {
        return IntPoly::falling_factorial(0, n);
    }
    let u = bits(alive).min_by_key(|&v| deg(v)).expect("nonempty");
    let w = bits(adj[u]).max_by_key(|&v| deg(v)).expect("no isolated vertices remain");
    let mut deleted = adj.clone();
    deleted[u] &= !(1 << w);
    deleted[w] &= !(1 << u);
    let mut merged = adj.clone();
    let joined = (adj[u] | adj[w]) & !(1 << u) & !(1 << w);
    let (alive_c, mut merged2) = {
        merged[u] = joined;
        for x in bits(joined) {
            merged[x] |= 1 << u;
        }
        remove(alive, merged, w)
    };
    merged2[u] = joined;
    &dc(alive, deleted, memo) - &dc(alive_c, merged2, memo)
}

/// `χ_G(λ) = Σ_k a_k (λ)_k` with `a_k` the partitions of `V` into `k`
/// independent sets, counted by a dynamic programme over vertex subsets.
pub fn chromatic_poly_by_partitions(g: &MultiGraph) -> Result<IntPoly, PolyError> {
    check_size(g, PARTITION_VERTEX_LIMIT)?;
    if g.has_loop() {
        return Ok(IntPoly::zero());
    }
    let n = g.vertex_count();
    let adj = adjacency(g);
    let size = 1usize << n;
    let mut independent = vec![true; size];
    for s in 1..size {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        independent[s] = independent[rest] && (adj[low] as usize & s) == 0;
    }
    let mut parts: Vec<Vec<u64>> = vec![Vec::new(); size];
    parts[0] = vec![1];
    for s in 1..size {
        let low = 1usize << s.trailing_zeros();
        let rest = s & !low;
        let mut counts = vec![0u64; (s.count_ones() as usize) + 1];
        // Blocks containing the lowest vertex: `low ∪ t` for `t ⊆ rest`.
        let mut t = rest;
        loop {
            let block = low | t;
            if independent[block] {
                for (k, &c) in parts[s & !block].iter().enumerate() {
                    counts[k + 1] += c;
                }
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        parts[s] = counts;
    }
    Ok(parts[size - 1]
        .iter()
        .enumerate()
        .fold(IntPoly::zero(), |acc, (k, &a)| &acc + &IntPoly::falling_factorial(0, k).scale(a as i128)))
}

/// `φ̄_{M(N)} = χ_{∇Γ} / (λ)_m`, with the division checked exact.
pub fn precoloring_poly(n: &Network) -> Result<IntPoly, PolyError> {
    let chi = chromatic_poly(&n.add_clique())?;
    let m = n.boundary_count();
    chi.div_exact(&IntPoly::falling_factorial(0, m))
        .ok_or_else(|| PolyError::DivisionFailure(format!("({chi}) / (λ)_{m}")))
}

/// Proper `k`-colourings of `Γ` giving the boundary nodes the distinct
/// colours `0..m` in order, by backtracking over interior vertices.
pub fn precolor_count(n: &Network, k: usize) -> u64 {
    let mut colour = vec![usize::MAX; n.vertex_count()];
    for (c, b) in n.boundary_vertices().enumerate() {
        colour[b] = c;
    }
    let interior: Vec<usize> = n.interior_vertices().collect();
    fn go(n: &Network, k: usize, interior: &[usize], colour: &mut [usize]) -> u64 {
        let Some((&v, rest)) = interior.split_first() else { return 1 };
        let mut total = 0;
        for c in 0..k {
            if n.neighbors(v).iter().all(|&(w, _)| colour[w] != c) {
                colour[v] = c;
                total += go(n, k, rest, colour);
                colour[v] = usize::MAX;
            }
        }
        total
    }
    if k < n.boundary_count() {
        return 0;
    }
    go(n, k, &interior, &mut colour)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientComparison {
    /// `a_i = (−1)^i [λ^{d−i}] χ_Γ`, `i = 0..=n`.
    pub a: Vec<i128>,
    /// `b_i = (−1)^i [λ^{n−i}] φ̄_{M(N)}`.
    pub b: Vec<i128>,
    pub min_crossing: usize,
    pub dominated: bool,
    pub equal_below_min_crossing: bool,
}

impl CoefficientComparison {
    pub fn verdict(&self) -> bool {
        self.dominated && self.equal_below_min_crossing
    }
}

pub fn cpintro_compare(n: &Network) -> Result<CoefficientComparison, PolyError> {
    let chi = chromatic_poly(&n.graph())?;
    let phi = precoloring_poly(n)?;
    let (d, k) = (n.vertex_count(), n.interior_count());
    let sign = |i: usize| if i % 2 == 0 { 1 } else { -1 };
    let a: Vec<i128> = (0..=k).map(|i| sign(i) * chi.coeff(d - i)).collect();
    let b: Vec<i128> = (0..=k).map(|i| sign(i) * phi.coeff(k - i)).collect();
    let min_crossing = n.min_crossing_len();
    let dominated = a.iter().zip(&b).all(|(x, y)| x >= y);
    let equal_below_min_crossing = (0..=k).filter(|&i| i < min_crossing).all(|i| a[i] == b[i]);
    Ok(CoefficientComparison { a, b, min_crossing, dominated, equal_below_min_crossing })
}

/// `φ̄_m` from `φ̄_m(λ + 1) = (ω₊^m + ω₋^m)/2^m + (−1)^m(λ − m − 1)` with
/// `ω± = λ − 2 ± √(λ² + 4)`, expanded so the radicals cancel. `None` when
/// the expansion is not an integer polynomial.
pub fn hexwheel_closed_form(m: usize) -> Option<IntPoly> {
    let a = IntPoly::linear(2);
    let disc = IntPoly::new(vec![4, 0, 1]);
    let mut sum = IntPoly::zero();
    let mut binom: i128 = 1;
    for k in 0..=m {
        if k % 2 == 0 {
            let term = (0..m - k).fold(IntPoly::constant(2 * binom), |p, _| &p * &a);
            sum = &sum + &(0..k / 2).fold(term, |p, _| &p * &disc);
        }
        binom = binom * (m - k) as i128 / (k + 1) as i128;
    }
    let tail = IntPoly::new(vec![-(m as i128) - 1, 1]).scale(if m % 2 == 0 { 1 } else { -1 });
    let scaled = &sum + &tail.scale(1 << m);
    let d = 1i128 << m;
    if scaled.coeffs().iter().any(|c| c % d != 0) {
        return None;
    }
    Some(IntPoly::new(scaled.coeffs().iter().map(|c| c / d).collect()).shift(-1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HexwheelRow {
    pub m: usize,
    pub computed: IntPoly,
    pub closed_form: Option<IntPoly>,
    pub closed_form_holds: bool,
    /// Prediction from the two previous rows, from `m = 5` on.
    pub recurrence: Option<IntPoly>,
    pub recurrence_holds: Option<bool>,
    /// The recurrence the closed form actually satisfies in `λ`:
    /// `φ̄_{j+2} = (λ−3)φ̄_{j+1} + (λ−1)φ̄_j + (−1)^j(−2λ+j+3)`.
    pub closed_form_recurrence_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HexwheelReport {
    pub rows: Vec<HexwheelRow>,
    pub base_cases_hold: bool,
}

impl HexwheelReport {
    /// Base cases, closed form and the recurrence exactly as conjectured.
    pub fn all_agree(&self) -> bool {
        self.base_cases_hold && self.rows.iter().all(|r| r.closed_form_holds && r.recurrence_holds != Some(false))
    }
}

/// Precoloring polynomials of `hexwheel(3..=m_max)` against the conjectured
/// closed form, base cases and recurrence.
pub fn hexwheel_scan(m_max: usize) -> Result<HexwheelReport, PolyError> {
    let mut rows: Vec<HexwheelRow> = Vec::new();
    for m in 3..=m_max {
        let computed = precoloring_poly(&hexwheel(m).expect("m ≥ 3"))?;
        let closed_form = hexwheel_closed_form(m);
        let predict = |a: i128, b: i128, c: i128| {
            (m >= 5).then(|| {
                let (p2, p1) = (&rows[rows.len() - 2].computed, &rows[rows.len() - 1].computed);
                let j = (m - 2) as i128;
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let extra = IntPoly::new(vec![j + c, -2]).scale(sign);
                &(&(&IntPoly::linear(a) * p1) + &(&IntPoly::linear(b) * p2)) + &extra
            })
        };
        let recurrence = predict(1, -1, -1);
        let closed_form_recurrence_holds = predict(3, 1, 3).map(|r| r == computed);
        rows.push(HexwheelRow {
            m,
            closed_form_holds: closed_form.as_ref() == Some(&computed),
            recurrence_holds: recurrence.as_ref().map(|r| *r == computed),
            closed_form_recurrence_holds,
            closed_form,
            recurrence,
            computed,
        });
    }
    let chi3 = IntPoly::new(vec![-13, 14, -6, 1]);
    let chi4 = IntPoly::new(vec![41, -51, 28, -8, 1]);
    let base_cases_hold = rows.iter().all(|r| match r.m {
        3 => r.computed == chi3,
        4 => r.computed == chi4,
        _ => true,
    });
    Ok(HexwheelReport { rows, base_cases_hold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::generate::{path, star};

    fn k(n: usize) -> MultiGraph {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        MultiGraph::from_pairs(n, &pairs)
    }

    #[test]
    fn complete_graphs_and_loops() {
        assert_eq!(chromatic_poly(&k(3)).unwrap(), IntPoly::falling_factorial(0, 3));
        assert_eq!(chromatic_poly(&k(4)).unwrap(), IntPoly::falling_factorial(0, 4));
        assert_eq!(chromatic_poly_by_partitions(&k(4)).unwrap(), IntPoly::falling_factorial(0, 4));
        let looped = MultiGraph::from_pairs(2, &[(0, 1), (1, 1)]);
        assert!(chromatic_poly(&looped).unwrap().is_zero());
    }

    #[test]
    fn two_routes_agree_on_a_cycle_with_chord() {
        let g = MultiGraph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 2)]);
        assert_eq!(chromatic_poly(&g).unwrap(), chromatic_poly_by_partitions(&g).unwrap());
    }

    #[test]
    fn precoloring_examples() {
        assert_eq!(precoloring_poly(&path(3).unwrap()).unwrap(), IntPoly::linear(2));
        // ∇Γ of a star is complete: (λ − m)_{d − m}.
        assert_eq!(precoloring_poly(&star(4).unwrap()).unwrap(), IntPoly::falling_factorial(4, 1));
        assert_eq!(precolor_count(&star(3).unwrap(), 5), 2);
    }

    #[test]
    fn path3_comparison() {
        let c = cpintro_compare(&path(3).unwrap()).unwrap();
        assert_eq!((c.a.clone(), c.b.clone(), c.min_crossing), (vec![1, 2], vec![1, 2], 2));
        assert!(c.verdict());
    }

    #[test]
    fn hexwheel_base_cases() {
        let r = hexwheel_scan(5).unwrap();
        assert!(r.base_cases_hold);
        assert_eq!(r.rows[0].computed.to_string(), "λ^3 - 6λ^2 + 14λ - 13");
        assert_eq!(hexwheel_closed_form(3), Some(r.rows[0].computed.clone()));
    }
}
