//! Execution strategy for the data-parallel inner loops (subset scans, sample sweeps).
//!
//! Every helper returns results in index order regardless of strategy, so the
//! sequential and parallel paths are observably identical. Without the
//! `parallel` feature, [`Exec::Parallel`] silently runs sequentially.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `range`, collecting in index order.
    pub fn map_range<T, F>(self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Indices in `range` satisfying `pred`, ascending.
    pub fn filter_range<F>(self, range: Range<u64>, pred: F) -> Vec<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().filter(|&i| pred(i)).collect();
        }
        range.filter(|&i| pred(i)).collect()
    }

    /// Folds `range` into per-chunk accumulators and merges them with `reduce`.
    ///
    /// `reduce` must be associative; the merge order is fixed by chunk index.
    pub fn fold_range<A, F, R>(self, range: Range<u64>, identity: impl Fn() -> A + Sync + Send, fold: F, reduce: R) -> A
    where
        A: Send,
        F: Fn(A, u64) -> A + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().fold(&identity, &fold).reduce(&identity, &reduce);
        }
        reduce(identity(), range.fold(identity(), fold))
    }

    pub fn map_slice<'a, T, U, F>(self, items: &'a [T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&'a T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// True iff `pred` holds for every index in `range`.
    pub fn all_range<F>(self, range: Range<u64>, pred: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().all(pred);
        }
        range.into_iter().all(pred)
    }

    /// Smallest index in `range` where `pred` fails, if any.
    pub fn first_failure<F>(self, range: Range<u64>, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().find_first(|&i| !pred(i));
        }
        range.into_iter().find(|&i| !pred(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.map_range(0..10, |i| i * i)[9], 81);
            assert_eq!(exec.filter_range(0..20, |i| i % 7 == 0), vec![0, 7, 14]);
            let sum = exec.fold_range(0..101, || 0u64, |a, i| a + i, |a, b| a + b);
            assert_eq!(sum, 5050);
            assert!(exec.all_range(0..50, |i| i < 50));
            assert_eq!(exec.first_failure(0..50, |i| i < 17), Some(17));
        }
    }
}
