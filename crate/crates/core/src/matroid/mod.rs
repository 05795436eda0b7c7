//! Matroids given by a rank oracle.
//!
//! The oracle is the only primary data. Bases, circuits and the rest are
//! derived from it, and exhaustive scans read a lazily built rank table.

mod enumerate;
mod invariants;
mod iso;

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::edgeset::{EdgeSet, MAX_ELEMENTS};
use crate::exec::Exec;
use crate::network::MultiGraph;

pub use enumerate::Family;
pub use invariants::{poly_from_counts, Connectivity};
pub use iso::ISO_SEARCH_LIMIT;

/// Default bound on the ground set for exhaustive operations.
pub const DEFAULT_LIMIT: usize = 20;

/// Largest ground set whose full rank table is materialised (16 MiB).
pub const TABLE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("ground set of {size} elements exceeds the limit of {limit}")]
    GroundTooLarge { size: usize, limit: usize },
    #[error("deletion and contraction sets overlap")]
    OverlappingSets,
    #[error("characteristic polynomial is not divisible by (λ - 1)")]
    NotDivisible,
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("ground sets differ in size ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("invalid basis family: {0}")]
    BadBases(String),
    #[error("ground set {0} exceeds the {MAX_ELEMENTS}-element maximum")]
    TooManyElements(usize),
}

pub trait RankOracle: Send + Sync {
    fn rank(&self, x: EdgeSet) -> usize;
}

impl<F: Fn(EdgeSet) -> usize + Send + Sync> RankOracle for F {
    fn rank(&self, x: EdgeSet) -> usize {
        self(x)
    }
}

#[derive(Clone)]
pub struct Matroid {
    labels: Arc<Vec<String>>,
    oracle: Arc<dyn RankOracle>,
    table: Arc<OnceLock<Vec<u8>>>,
    limit: usize,
    exec: Exec,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid").field("ground", &self.labels).field("rank", &self.full_rank()).finish()
    }
}

impl Matroid {
    pub fn new(labels: Vec<String>, oracle: Arc<dyn RankOracle>) -> Result<Matroid, MatroidError> {
        if labels.len() > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(labels.len()));
        }
        Ok(Matroid {
            labels: Arc::new(labels),
            oracle,
            table: Arc::new(OnceLock::new()),
            limit: DEFAULT_LIMIT,
            exec: Exec::default(),
        })
    }

    pub fn from_fn<F>(labels: Vec<String>, f: F) -> Result<Matroid, MatroidError>
    where
        F: Fn(EdgeSet) -> usize + Send + Sync + 'static,
    {
        Matroid::new(labels, Arc::new(f))
    }

    /// `U_{r,n}` on labels `1..=n`.
    pub fn uniform(r: usize, n: usize) -> Matroid {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Matroid::from_fn(labels, move |x| x.len().min(r)).expect("small uniform matroid")
    }

    /// Cycle matroid of a multigraph, with the graph's edge labels.
    pub fn graphic(g: &MultiGraph) -> Matroid {
        let g = g.clone();
        Matroid::from_fn(g.edge_labels(), move |x| g.graphic_rank(x)).expect("graph edges fit an edge set")
    }

    /// The matroid whose bases are exactly `bases`. Fails if the family
    /// violates basis exchange.
    pub fn from_bases(labels: Vec<String>, bases: &[EdgeSet]) -> Result<Matroid, MatroidError> {
        let m = Matroid::from_bases_unchecked(labels, bases)?;
        let claimed: HashSet<EdgeSet> = bases.iter().copied().collect();
        let exchange = bases.iter().all(|&b1| {
            bases.iter().all(|&b2| {
                b1.difference(b2).iter().all(|x| b2.difference(b1).iter().any(|y| claimed.contains(&b1.without(x).with(y))))
            })
        });
        if !exchange {
            return Err(MatroidError::BadBases("family violates basis exchange".into()));
        }
        Ok(m)
    }

    /// As [`Matroid::from_bases`] without the quadratic exchange check. Sets
    /// are independent iff they lie in a listed basis.
    pub fn from_bases_unchecked(labels: Vec<String>, bases: &[EdgeSet]) -> Result<Matroid, MatroidError> {
        let n = labels.len();
        if n > TABLE_LIMIT {
            return Err(MatroidError::GroundTooLarge { size: n, limit: TABLE_LIMIT });
        }
        let first = bases.first().ok_or_else(|| MatroidError::BadBases("empty family".into()))?;
        let r = first.len();
        let full = EdgeSet::full(n);
        let mut indep = vec![false; 1 << n];
        for b in bases {
            if b.len() != r || !b.is_subset(full) {
                return Err(MatroidError::BadBases(format!("{b:?} is not an r-subset of the ground set")));
            }
            indep[b.bits() as usize] = true;
        }
        for x in (0..1u64 << n).rev() {
            if !indep[x as usize] {
                indep[x as usize] = EdgeSet(x).complement(n).iter().any(|e| indep[(x | 1 << e) as usize]);
            }
        }
        let mut rank = vec![0u8; 1 << n];
        for x in 1..1u64 << n {
            rank[x as usize] = if indep[x as usize] {
                x.count_ones() as u8
            } else {
                EdgeSet(x).iter().map(|e| rank[(x & !(1 << e)) as usize]).max().unwrap_or(0)
            };
        }
        let table = Arc::new(rank);
        let oracle = Arc::clone(&table);
        let m = Matroid::from_fn(labels, move |x| oracle[x.bits() as usize] as usize)?;
        let _ = m.table.set(table.to_vec());
        Ok(m)
    }

    pub fn with_limit(mut self, limit: usize) -> Matroid {
        self.limit = limit;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Matroid {
        self.exec = exec;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Matroid {
        assert_eq!(labels.len(), self.len());
        self.labels = Arc::new(labels);
        self
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn ground(&self) -> EdgeSet {
        EdgeSet::full(self.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parse_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<EdgeSet, MatroidError> {
        labels
            .iter()
            .map(|l| self.index(l.as_ref()).ok_or_else(|| MatroidError::UnknownLabel(l.as_ref().to_string())))
            .collect()
    }

    pub fn set_labels(&self, x: EdgeSet) -> Vec<String> {
        x.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn rank(&self, x: EdgeSet) -> usize {
        match self.table.get() {
            Some(t) => t[x.bits() as usize] as usize,
            None => self.oracle.rank(x),
        }
    }

    pub fn independent(&self, x: EdgeSet) -> bool {
        self.rank(x) == x.len()
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    pub fn is_basis(&self, x: EdgeSet) -> bool {
        x.len() == self.full_rank() && self.independent(x)
    }

    pub fn closure(&self, x: EdgeSet) -> EdgeSet {
        let r = self.rank(x);
        self.ground().iter().filter(|&e| x.contains(e) || self.rank(x.with(e)) == r).collect()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(EdgeSet::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank(self.ground().without(e)) < self.full_rank()
    }

    pub fn check_limit(&self) -> Result<(), MatroidError> {
        if self.len() > self.limit {
            return Err(MatroidError::GroundTooLarge { size: self.len(), limit: self.limit });
        }
        Ok(())
    }

    /// Materialises the rank table (when small enough) so exhaustive scans
    /// cost one lookup per subset.
    pub fn tabulate(&self) {
        if self.len() <= TABLE_LIMIT && self.table.get().is_none() {
            let oracle = &self.oracle;
            let table = self.exec.map_range(0..1u64 << self.len(), |x| oracle.rank(EdgeSet(x)) as u8);
            let _ = self.table.set(table);
        }
    }

    pub fn dual(&self) -> Matroid {
        let base = self.clone();
        let (n, r) = (self.len(), self.full_rank());
        let mut d = Matroid::from_fn(self.labels.to_vec(), move |x: EdgeSet| x.len() + base.rank(x.complement(n)) - r)
            .expect("same ground as the primal");
        d.limit = self.limit;
        d.exec = self.exec;
        d
    }

    /// `M ∖ delete / contract` on the remaining elements, which keep their
    /// relative order and labels.
    pub fn minor(&self, delete: EdgeSet, contract: EdgeSet) -> Result<Matroid, MatroidError> {
        if !delete.is_disjoint(contract) {
            return Err(MatroidError::OverlappingSets);
        }
        let keep: Vec<usize> = self.ground().difference(delete.union(contract)).iter().collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let base = self.clone();
        let rc = self.rank(contract);
        let mut m = Matroid::from_fn(labels, move |x: EdgeSet| {
            let lifted: EdgeSet = x.iter().map(|i| keep[i]).collect();
            base.rank(lifted.union(contract)) - rc
        })?;
        m.limit = self.limit;
        m.exec = self.exec;
        Ok(m)
    }

    /// Direct sum; the second summand's elements follow the first's. Labels
    /// get `1:`/`2:` prefixes when the summands share any.
    pub fn direct_sum(&self, other: &Matroid) -> Matroid {
        let clash = self.labels.iter().any(|l| other.labels.contains(l));
        let tag = |p: &str, l: &String| if clash { format!("{p}:{l}") } else { l.clone() };
        let labels = self.labels.iter().map(|l| tag("1", l)).chain(other.labels.iter().map(|l| tag("2", l))).collect();
        let (a, b, n) = (self.clone(), other.clone(), self.len());
        let mask = EdgeSet::full(n);
        Matroid::from_fn(labels, move |x: EdgeSet| a.rank(x.intersection(mask)) + b.rank(EdgeSet(x.bits() >> n)))
            .expect("sum of two small matroids")
    }

    /// Whether two matroids on equally sized grounds have the same rank
    /// function under the identity map.
    pub fn same_rank_function(&self, other: &Matroid) -> Result<bool, MatroidError> {
        if self.len() != other.len() {
            return Err(MatroidError::SizeMismatch(self.len(), other.len()));
        }
        self.check_limit()?;
        self.tabulate();
        other.tabulate();
        Ok(self.exec.all_range(0..1u64 << self.len(), |x| self.rank(EdgeSet(x)) == other.rank(EdgeSet(x))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Matroid {
        Matroid::graphic(&MultiGraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]))
    }

    #[test]
    fn uniform_ranks() {
        let u = Matroid::uniform(2, 4);
        assert_eq!(u.rank(EdgeSet::from_indices([0, 3])), 2);
        assert!(u.independent(EdgeSet::from_indices([1, 2])));
        assert!(!u.independent(EdgeSet::from_indices([0, 1, 2])));
        assert!(u.independent(EdgeSet::EMPTY));
        assert_eq!(u.rank(EdgeSet::EMPTY), 0);
    }

    #[test]
    fn dual_and_minor() {
        let u = Matroid::uniform(2, 4);
        assert!(u.dual().same_rank_function(&u).unwrap());
        assert!(k3().dual().dual().same_rank_function(&k3()).unwrap());
        // Contracting an edge of the triangle leaves a digon: two parallel elements.
        let c = k3().minor(EdgeSet::EMPTY, EdgeSet::singleton(0)).unwrap();
        let digon = Matroid::graphic(&MultiGraph::from_pairs(2, &[(0, 1), (0, 1)]));
        assert!(c.same_rank_function(&digon).unwrap());
        assert_eq!(c.labels(), ["e1", "e2"]);
        assert_eq!(
            k3().minor(EdgeSet::singleton(1), EdgeSet::singleton(1)).unwrap_err(),
            MatroidError::OverlappingSets
        );
    }

    #[test]
    fn from_bases_round_trip() {
        let u = Matroid::uniform(2, 4);
        let b = Matroid::from_bases(u.labels().to_vec(), &u.bases().unwrap()).unwrap();
        assert!(b.same_rank_function(&u).unwrap());
        let bogus = [EdgeSet::from_indices([0, 1]), EdgeSet::from_indices([2, 3])];
        assert!(matches!(Matroid::from_bases(u.labels().to_vec(), &bogus), Err(MatroidError::BadBases(_))));
    }

    #[test]
    fn direct_sum_ranks() {
        let s = k3().direct_sum(&k3());
        assert_eq!(s.len(), 6);
        assert_eq!(s.full_rank(), 4);
        assert_eq!(s.label(3), "2:e0");
    }

    #[test]
    fn unknown_labels_rejected() {
        let u = Matroid::uniform(2, 4);
        assert_eq!(u.parse_set(&["1", "9"]), Err(MatroidError::UnknownLabel("9".into())));
    }
}
