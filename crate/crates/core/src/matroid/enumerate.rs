use super::{Matroid, MatroidError};
use crate::edgeset::EdgeSet;
use crate::network::sort_family;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Bases,
    Circuits,
    Cocircuits,
    Flats,
}

impl Matroid {
    fn scan(&self, pred: impl Fn(EdgeSet) -> bool + Sync + Send) -> Result<Vec<EdgeSet>, MatroidError> {
        self.check_limit()?;
        self.tabulate();
        let mut out: Vec<EdgeSet> = self.exec.filter_range(0..1u64 << self.len(), |x| pred(EdgeSet(x))).into_iter().map(EdgeSet).collect();
        sort_family(&mut out);
        Ok(out)
    }

    pub fn enumerate(&self, kind: Family) -> Result<Vec<EdgeSet>, MatroidError> {
        match kind {
            Family::Bases => self.bases(),
            Family::Circuits => self.circuits(),
            Family::Cocircuits => self.cocircuits(),
            Family::Flats => self.flats(),
        }
    }

    pub fn bases(&self) -> Result<Vec<EdgeSet>, MatroidError> {
        let r = self.full_rank();
        self.scan(|x| x.len() == r && self.rank(x) == r)
    }

    /// Minimal dependent sets; only sets of size at most `r + 1` can qualify.
    pub fn circuits(&self) -> Result<Vec<EdgeSet>, MatroidError> {
        let r = self.full_rank();
        self.scan(|x| {
            let k = x.len();
            k >= 1 && k <= r + 1 && self.rank(x) == k - 1 && x.iter().all(|e| self.rank(x.without(e)) == k - 1)
        })
    }

    pub fn cocircuits(&self) -> Result<Vec<EdgeSet>, MatroidError> {
        self.dual().circuits()
    }

    pub fn flats(&self) -> Result<Vec<EdgeSet>, MatroidError> {
        let n = self.len();
        self.scan(|x| {
            let r = self.rank(x);
            x.complement(n).iter().all(|e| self.rank(x.with(e)) > r)
        })
    }

    pub fn hyperplanes(&self) -> Result<Vec<EdgeSet>, MatroidError> {
        let r = self.full_rank();
        Ok(self.flats()?.into_iter().filter(|&f| r > 0 && self.rank(f) == r - 1).collect())
    }

    /// Normalisation, cardinality bound, monotonicity and submodularity, checked
    /// on every subset (single-element steps suffice for the last two).
    pub fn verify_rank_axioms(&self) -> Result<bool, MatroidError> {
        self.check_limit()?;
        self.tabulate();
        let n = self.len();
        if self.rank(EdgeSet::EMPTY) != 0 {
            return Ok(false);
        }
        Ok(self.exec.all_range(0..1u64 << n, |bits| {
            let x = EdgeSet(bits);
            let r = self.rank(x);
            if r > x.len() {
                return false;
            }
            let outside: Vec<usize> = x.complement(n).iter().collect();
            outside.iter().all(|&e| {
                let re = self.rank(x.with(e));
                re >= r
                    && re <= r + 1
                    && outside.iter().all(|&f| f <= e || self.rank(x.with(e).with(f)) + r <= re + self.rank(x.with(f)))
            })
        }))
    }

    /// For all bases `B1 ≠ B2` and `x ∈ B1 ∖ B2` some `y ∈ B2 ∖ B1` makes
    /// `B1 − x + y` a basis.
    pub fn verify_basis_exchange(&self) -> Result<bool, MatroidError> {
        let bases = self.bases()?;
        Ok(bases.iter().all(|&b1| {
            bases.iter().all(|&b2| {
                b1.difference(b2).iter().all(|x| b2.difference(b1).iter().any(|y| self.is_basis(b1.without(x).with(y))))
            })
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::MultiGraph;

    fn k3() -> Matroid {
        Matroid::graphic(&MultiGraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]))
    }

    #[test]
    fn uniform_families() {
        let u = Matroid::uniform(2, 4);
        assert_eq!(u.bases().unwrap().len(), 6);
        let circuits = u.circuits().unwrap();
        assert_eq!(circuits.len(), 4);
        assert!(circuits.iter().all(|c| c.len() == 3));
        assert_eq!(u.flats().unwrap().len(), 1 + 4 + 1);
        assert!(u.verify_rank_axioms().unwrap());
        assert!(u.verify_basis_exchange().unwrap());
    }

    #[test]
    fn triangle_cocircuits_are_pairs() {
        let co = k3().cocircuits().unwrap();
        assert_eq!(co, vec![EdgeSet(0b011), EdgeSet(0b101), EdgeSet(0b110)]);
        // Cocircuits are complements of hyperplanes.
        let mut comp: Vec<_> = k3().hyperplanes().unwrap().iter().map(|h| h.complement(3)).collect();
        sort_family(&mut comp);
        assert_eq!(comp, co);
    }

    #[test]
    fn dual_bases_are_complements() {
        let k4 = Matroid::graphic(&MultiGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]));
        let mut comp: Vec<_> = k4.bases().unwrap().iter().map(|b| b.complement(6)).collect();
        sort_family(&mut comp);
        assert_eq!(k4.dual().bases().unwrap(), comp);
        assert_eq!(k4.bases().unwrap().len(), 16);
    }

    #[test]
    fn broken_oracle_fails_axioms() {
        let bad = Matroid::from_fn(vec!["a".into(), "b".into()], |x: EdgeSet| if x.len() == 2 { 1 } else { x.len() * 2 }).unwrap();
        assert!(!bad.verify_rank_axioms().unwrap());
    }

    #[test]
    fn limit_enforced() {
        let big = Matroid::uniform(3, 25);
        assert_eq!(big.bases().unwrap_err(), MatroidError::GroundTooLarge { size: 25, limit: 20 });
    }
}
