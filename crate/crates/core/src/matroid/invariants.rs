use serde::{Deserialize, Serialize};

use super::{Matroid, MatroidError};
use crate::edgeset::EdgeSet;
use crate::intpoly::IntPoly;

/// Tutte connectivity: the least `k` admitting a `k`-separation, or
/// `Infinite` when there is none (e.g. `U_{2,4}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Connectivity {
    Finite(usize),
    Infinite,
}

impl Connectivity {
    /// Whether the matroid is `k`-connected.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Connectivity::Finite(c) => c >= k,
            Connectivity::Infinite => true,
        }
    }
}

impl std::fmt::Display for Connectivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Connectivity::Finite(c) => write!(f, "{c}"),
            Connectivity::Infinite => write!(f, "infinite"),
        }
    }
}

impl Matroid {
    /// Whitney expansion `Σ_X (−1)^{|X|} λ^{r(E) − r(X)}`.
    pub fn char_poly(&self) -> Result<IntPoly, MatroidError> {
        self.check_limit()?;
        self.tabulate();
        let r = self.full_rank();
        let coeffs = self.exec.fold_range(
            0..1u64 << self.len(),
            || vec![0i128; r + 1],
            |mut acc, x| {
                let x = EdgeSet(x);
                acc[r - self.rank(x)] += if x.len() % 2 == 0 { 1 } else { -1 };
                acc
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(p, q)| *p += q);
                a
            },
        );
        Ok(IntPoly::new(coeffs))
    }

    /// `χ_M(λ) / (λ − 1)`.
    pub fn reduced_char_poly(&self) -> Result<IntPoly, MatroidError> {
        self.char_poly()?.div_exact(&IntPoly::linear(1)).ok_or(MatroidError::NotDivisible)
    }

    /// `β(M) = (−1)^{r(M)} Σ_X (−1)^{|X|} r(X)`.
    pub fn beta(&self) -> Result<i128, MatroidError> {
        self.check_limit()?;
        self.tabulate();
        let sum = self.exec.fold_range(
            0..1u64 << self.len(),
            || 0i128,
            |acc, x| {
                let x = EdgeSet(x);
                let r = self.rank(x) as i128;
                if x.len() % 2 == 0 {
                    acc + r
                } else {
                    acc - r
                }
            },
            |a, b| a + b,
        );
        Ok(if self.full_rank() % 2 == 0 { sum } else { -sum })
    }

    /// Least `s + 1` over bipartitions `(X, Y)` with `s = r(X) + r(Y) − r(M)`
    /// and `min(|X|, |Y|) ≥ s + 1`.
    pub fn tutte_connectivity(&self) -> Result<Connectivity, MatroidError> {
        self.check_limit()?;
        let n = self.len();
        if n < 2 {
            return Ok(Connectivity::Infinite);
        }
        self.tabulate();
        let r = self.full_rank();
        // X ranges over nonempty subsets avoiding the last element, so each
        // bipartition is visited once.
        let best = self.exec.fold_range(
            1..1u64 << (n - 1),
            || usize::MAX,
            |best, bits| {
                let x = EdgeSet(bits);
                let y = x.complement(n);
                let k = self.rank(x) + self.rank(y) - r + 1;
                if k <= x.len().min(y.len()) {
                    best.min(k)
                } else {
                    best
                }
            },
            usize::min,
        );
        Ok(if best == usize::MAX { Connectivity::Infinite } else { Connectivity::Finite(best) })
    }

    /// Broken circuits with respect to `order` (least element first): each
    /// circuit minus its least element.
    pub fn broken_circuits(&self, order: &[usize]) -> Result<Vec<EdgeSet>, MatroidError> {
        let pos = positions(order, self.len());
        Ok(self
            .circuits()?
            .into_iter()
            .map(|c| c.without(c.iter().min_by_key(|&e| pos[e]).expect("circuits are nonempty")))
            .collect())
    }

    /// Number of `i`-element sets containing no broken circuit, `i = 0..=r(M)`.
    pub fn broken_circuit_counts(&self, order: &[usize]) -> Result<Vec<u64>, MatroidError> {
        self.nbc_counts(order, false)
    }

    /// As [`Matroid::broken_circuit_counts`], restricted to sets avoiding the
    /// least element of `order`.
    pub fn reduced_broken_circuit_counts(&self, order: &[usize]) -> Result<Vec<u64>, MatroidError> {
        self.nbc_counts(order, true)
    }

    fn nbc_counts(&self, order: &[usize], reduced: bool) -> Result<Vec<u64>, MatroidError> {
        let broken = self.broken_circuits(order)?;
        let r = self.full_rank();
        let avoid = if reduced && !order.is_empty() { EdgeSet::singleton(order[0]) } else { EdgeSet::EMPTY };
        let len = if reduced { r.max(1) } else { r + 1 };
        let counts = self.exec.fold_range(
            0..1u64 << self.len(),
            || vec![0u64; len],
            |mut acc, bits| {
                let x = EdgeSet(bits);
                if x.len() < len && x.is_disjoint(avoid) && broken.iter().all(|b| !b.is_subset(x)) {
                    acc[x.len()] += 1;
                }
                acc
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(p, q)| *p += q);
                a
            },
        );
        Ok(counts)
    }
}

fn positions(order: &[usize], n: usize) -> Vec<usize> {
    assert_eq!(order.len(), n, "order must list every element once");
    let mut pos = vec![usize::MAX; n];
    for (i, &e) in order.iter().enumerate() {
        pos[e] = i;
    }
    assert!(pos.iter().all(|&p| p != usize::MAX), "order must be a permutation");
    pos
}

/// Signed polynomial `Σ_i (−1)^i w_i λ^{d−i}` from counts `w_0..w_d`.
pub fn poly_from_counts(counts: &[u64]) -> IntPoly {
    let d = counts.len().saturating_sub(1);
    let mut c = vec![0i128; counts.len()];
    for (i, &w) in counts.iter().enumerate() {
        c[d - i] = if i % 2 == 0 { w as i128 } else { -(w as i128) };
    }
    IntPoly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::MultiGraph;

    fn k3() -> Matroid {
        Matroid::graphic(&MultiGraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]))
    }

    fn k4() -> Matroid {
        Matroid::graphic(&MultiGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]))
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(k3().char_poly().unwrap(), IntPoly::new(vec![2, -3, 1]));
        assert_eq!(k3().reduced_char_poly().unwrap(), IntPoly::linear(2));
        assert_eq!(Matroid::uniform(2, 4).char_poly().unwrap(), IntPoly::new(vec![3, -4, 1]));
        let coloop = Matroid::uniform(1, 1);
        assert_eq!(coloop.char_poly().unwrap(), IntPoly::linear(1));
        assert_eq!(coloop.reduced_char_poly().unwrap(), IntPoly::constant(1));
        // χ of a graph's cycle matroid times λ is the chromatic polynomial.
        let chi_k4 = &k4().char_poly().unwrap() * &IntPoly::lambda();
        assert_eq!(chi_k4, IntPoly::falling_factorial(0, 4));
    }

    #[test]
    fn beta_values() {
        assert_eq!(k3().beta().unwrap(), 1);
        assert_eq!(Matroid::uniform(2, 4).beta().unwrap(), 2);
        assert_eq!(Matroid::uniform(0, 1).direct_sum(&Matroid::uniform(2, 3)).beta().unwrap(), 0);
        // Cross-check against β = (−1)^{r−1} χ'(1).
        for m in [k3(), k4(), Matroid::uniform(2, 4), Matroid::uniform(3, 6)] {
            let d = m.char_poly().unwrap().derivative().eval(1);
            let sign = if (m.full_rank() - 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(m.beta().unwrap(), sign * d);
        }
    }

    #[test]
    fn connectivity_values() {
        assert_eq!(Matroid::uniform(2, 4).tutte_connectivity().unwrap(), Connectivity::Infinite);
        assert_eq!(k3().direct_sum(&k3()).tutte_connectivity().unwrap(), Connectivity::Finite(1));
        assert_eq!(k4().tutte_connectivity().unwrap(), Connectivity::Finite(3));
        let c4 = Matroid::graphic(&MultiGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]));
        assert_eq!(c4.tutte_connectivity().unwrap(), Connectivity::Finite(2));
        for m in [k3(), k4(), c4, k3().direct_sum(&k3()), Matroid::uniform(2, 4)] {
            assert_eq!(m.beta().unwrap() > 0, m.tutte_connectivity().unwrap().at_least(2));
        }
    }

    #[test]
    fn broken_circuit_counts_match_coefficients() {
        assert_eq!(k3().broken_circuit_counts(&[0, 1, 2]).unwrap(), vec![1, 3, 2]);
        // Reduced counts give λ − 2.
        assert_eq!(k3().reduced_broken_circuit_counts(&[0, 1, 2]).unwrap(), vec![1, 2]);
        let u = Matroid::uniform(2, 4);
        for order in [[0, 1, 2, 3], [3, 1, 0, 2], [2, 3, 1, 0]] {
            let counts = u.broken_circuit_counts(&order).unwrap();
            assert_eq!(counts, vec![1, 4, 3]);
            assert_eq!(poly_from_counts(&counts), u.char_poly().unwrap());
            let reduced = u.reduced_broken_circuit_counts(&order).unwrap();
            assert_eq!(poly_from_counts(&reduced), u.reduced_char_poly().unwrap());
        }
    }
}
