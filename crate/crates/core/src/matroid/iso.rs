use super::{Matroid, MatroidError};
use crate::edgeset::EdgeSet;

/// Largest ground set for which an unguided bijection search is attempted.
pub const ISO_SEARCH_LIMIT: usize = 12;

impl Matroid {
    /// Whether `map` (element `i` of `self` to `map[i]` of `other`) preserves rank.
    /// Without a map, searches for any rank-preserving bijection.
    pub fn iso_check(&self, other: &Matroid, map: Option<&[usize]>) -> Result<bool, MatroidError> {
        let n = self.len();
        if n != other.len() {
            return Err(MatroidError::SizeMismatch(n, other.len()));
        }
        match map {
            Some(map) => {
                self.check_limit()?;
                let mut seen = EdgeSet::EMPTY;
                for &j in map {
                    if j >= n || seen.contains(j) {
                        return Ok(false);
                    }
                    seen.insert(j);
                }
                if map.len() != n {
                    return Ok(false);
                }
                self.tabulate();
                other.tabulate();
                Ok(self.exec.all_range(0..1u64 << n, |bits| {
                    let x = EdgeSet(bits);
                    self.rank(x) == other.rank(x.iter().map(|i| map[i]).collect())
                }))
            }
            None => Ok(self.find_isomorphism(other)?.is_some()),
        }
    }

    /// A rank-preserving bijection onto `other`, found by backtracking with
    /// circuit-size signatures as a filter.
    pub fn find_isomorphism(&self, other: &Matroid) -> Result<Option<Vec<usize>>, MatroidError> {
        let n = self.len();
        if n != other.len() {
            return Err(MatroidError::SizeMismatch(n, other.len()));
        }
        if n > ISO_SEARCH_LIMIT {
            return Err(MatroidError::GroundTooLarge { size: n, limit: ISO_SEARCH_LIMIT });
        }
        if self.full_rank() != other.full_rank() {
            return Ok(None);
        }
        let (sa, sb) = (signatures(self)?, signatures(other)?);
        let mut sorted_a = sa.clone();
        let mut sorted_b = sb.clone();
        sorted_a.sort();
        sorted_b.sort();
        if sorted_a != sorted_b {
            return Ok(None);
        }
        let mut map = Vec::with_capacity(n);
        let found = extend(self, other, &sa, &sb, &mut map, EdgeSet::EMPTY);
        Ok(found.then_some(map))
    }
}

/// Per element: number of circuits of each size containing it.
fn signatures(m: &Matroid) -> Result<Vec<Vec<usize>>, MatroidError> {
    let circuits = m.circuits()?;
    Ok((0..m.len())
        .map(|e| {
            let mut sig = vec![0; m.len() + 1];
            for c in circuits.iter().filter(|c| c.contains(e)) {
                sig[c.len()] += 1;
            }
            sig
        })
        .collect())
}

fn extend(a: &Matroid, b: &Matroid, sa: &[Vec<usize>], sb: &[Vec<usize>], map: &mut Vec<usize>, used: EdgeSet) -> bool {
    let i = map.len();
    if i == a.len() {
        return true;
    }
    let assigned = EdgeSet::full(i);
    for j in 0..b.len() {
        if used.contains(j) || sa[i] != sb[j] {
            continue;
        }
        let consistent = assigned.subsets().all(|s| {
            let image: EdgeSet = s.iter().map(|k| map[k]).collect();
            a.rank(s.with(i)) == b.rank(image.with(j))
        });
        if consistent {
            map.push(j);
            if extend(a, b, sa, sb, map, used.with(j)) {
                return true;
            }
            map.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::MultiGraph;

    #[test]
    fn uniform_is_symmetric() {
        let u = Matroid::uniform(2, 4);
        assert!(u.iso_check(&u, Some(&[2, 0, 3, 1])).unwrap());
        assert!(u.iso_check(&u, None).unwrap());
    }

    #[test]
    fn u24_is_not_graphic_on_four_edges() {
        // K4 minus two disjoint edges is a 4-cycle; minus two adjacent edges,
        // a triangle with a pendant edge. Neither matches U_{2,4}.
        let c4 = Matroid::graphic(&MultiGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]));
        let paw = Matroid::graphic(&MultiGraph::from_pairs(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]));
        let u = Matroid::uniform(2, 4);
        assert!(!u.iso_check(&c4, None).unwrap());
        assert!(!u.iso_check(&paw, None).unwrap());
    }

    #[test]
    fn finds_relabelled_copy() {
        let k4 = MultiGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let shuffled = MultiGraph::from_pairs(4, &[(2, 3), (0, 3), (1, 2), (0, 1), (1, 3), (0, 2)]);
        let (a, b) = (Matroid::graphic(&k4), Matroid::graphic(&shuffled));
        let map = a.find_isomorphism(&b).unwrap().unwrap();
        assert!(a.iso_check(&b, Some(&map)).unwrap());
        assert!(!a.iso_check(&b, Some(&[0, 0, 1, 2, 3, 4])).unwrap());
    }
}
