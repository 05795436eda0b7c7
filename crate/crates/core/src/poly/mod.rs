//! Multiaffine generating polynomials of edge-set families, and the
//! univariate chromatic and precoloring polynomials.

mod chromatic;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::dirichlet::dirichlet_matroid;
use crate::edgeset::EdgeSet;
use crate::network::{GroveMode, Network, VertexId};
use crate::qpoly::RatPoly;

pub use chromatic::{
    chromatic_poly, chromatic_poly_by_partitions, cpintro_compare, hexwheel_closed_form, hexwheel_scan, precolor_count,
    precoloring_poly, CoefficientComparison, HexwheelReport, HexwheelRow, CHROMATIC_VERTEX_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("point has {got} coordinates but the universe has {expected}")]
    MissingVariable { expected: usize, got: usize },
    #[error("graph with {size} vertices exceeds the limit of {limit}")]
    GraphTooLarge { size: usize, limit: usize },
    #[error("exact division failed: {0}")]
    DivisionFailure(String),
    #[error("{0} is not a variable of this polynomial")]
    UnknownVariable(usize),
}

/// `Σ_S c_S Π_{e∈S} x_e` over a fixed labelled universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiAffinePoly {
    universe: Vec<String>,
    terms: BTreeMap<EdgeSet, BigRational>,
}

impl MultiAffinePoly {
    pub fn zero(universe: Vec<String>) -> MultiAffinePoly {
        MultiAffinePoly { universe, terms: BTreeMap::new() }
    }

    /// `w(F)`: coefficient 1 on every member of `family`.
    pub fn from_set_family(universe: Vec<String>, family: &[EdgeSet]) -> MultiAffinePoly {
        let mut p = MultiAffinePoly::zero(universe);
        for &s in family {
            p.add_term(s, BigRational::one());
        }
        p
    }

    fn add_term(&mut self, s: EdgeSet, c: BigRational) {
        assert!(s.is_subset(EdgeSet::full(self.universe.len())), "term outside the universe");
        let slot = self.terms.entry(s).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn terms(&self) -> &BTreeMap<EdgeSet, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MultiAffinePoly) -> MultiAffinePoly {
        assert_eq!(self.universe, other.universe, "universes differ");
        let mut out = self.clone();
        for (&s, c) in &other.terms {
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> MultiAffinePoly {
        let mut out = MultiAffinePoly::zero(self.universe.clone());
        for (&s, c) in &self.terms {
            out.add_term(s, c * k);
        }
        out
    }

    /// `x_e · p`, defined when no term already contains `e`.
    pub fn times_variable(&self, e: usize) -> Result<MultiAffinePoly, PolyError> {
        if e >= self.universe.len() || self.terms.keys().any(|s| s.contains(e)) {
            return Err(PolyError::UnknownVariable(e));
        }
        let mut out = MultiAffinePoly::zero(self.universe.clone());
        for (&s, c) in &self.terms {
            out.add_term(s.with(e), c.clone());
        }
        Ok(out)
    }

    /// The same terms over a larger universe whose prefix is this one.
    pub fn widen(&self, universe: Vec<String>) -> MultiAffinePoly {
        assert!(universe.starts_with(&self.universe), "universe must extend the old one");
        MultiAffinePoly { universe, terms: self.terms.clone() }
    }

    /// `∂p/∂x_e`: terms containing `e`, with `e` removed.
    pub fn partial(&self, e: usize) -> MultiAffinePoly {
        let mut out = MultiAffinePoly::zero(self.universe.clone());
        for (&s, c) in self.terms.iter().filter(|(s, _)| s.contains(e)) {
            out.add_term(s.without(e), c.clone());
        }
        out
    }

    pub fn eval(&self, x: &[BigRational]) -> Result<BigRational, PolyError> {
        if x.len() < self.universe.len() {
            return Err(PolyError::MissingVariable { expected: self.universe.len(), got: x.len() });
        }
        // Clear denominators once and sum in integers: x_e = N_e / d, so a
        // term of degree k is scaled by d^(top − k) over the common d^top.
        let n = self.universe.len();
        let d = x[..n].iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums: Vec<BigInt> = x[..n].iter().map(|c| c.numer() * (&d / c.denom())).collect();
        let top = self.terms.keys().map(|s| s.len()).max().unwrap_or(0);
        let mut pows = vec![BigInt::one()];
        for k in 0..top {
            pows.push(&pows[k] * &d);
        }
        let cden = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let sum = self.terms.iter().fold(BigInt::zero(), |acc, (s, c)| {
            let scaled = c.numer() * (&cden / c.denom()) * &pows[top - s.len()];
            acc + s.iter().fold(scaled, |m, e| m * &nums[e])
        });
        Ok(BigRational::new(sum, cden * &pows[top]))
    }

    pub fn partial_eval(&self, e: usize, x: &[BigRational]) -> Result<BigRational, PolyError> {
        self.partial(e).eval(x)
    }

    /// `t ↦ p(x + t·y)`.
    pub fn restrict_line(&self, x: &[BigRational], y: &[BigRational]) -> Result<RatPoly, PolyError> {
        let n = self.universe.len();
        if x.len() < n || y.len() < n {
            return Err(PolyError::MissingVariable { expected: n, got: x.len().min(y.len()) });
        }
        let linear: Vec<RatPoly> = (0..n).map(|e| RatPoly::linear(x[e].clone(), y[e].clone())).collect();
        Ok(self.terms.iter().fold(RatPoly::zero(), |acc, (s, c)| {
            let term = s.iter().fold(RatPoly::constant(c.clone()), |m, e| &m * &linear[e]);
            &acc + &term
        }))
    }
}

impl fmt::Display for MultiAffinePoly {
    /// One line per term: `coeff : {labels}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, c) in &self.terms {
            let labels: Vec<&str> = s.iter().map(|e| self.universe[e].as_str()).collect();
            writeln!(f, "{c} : {{{}}}", labels.join(","))?;
        }
        Ok(())
    }
}

/// `P₀`, `P₁` and `P_{ij}` for each unordered pair of boundary nodes, all over
/// the universe `E`.
#[derive(Clone, Debug)]
pub struct GrovePolys {
    pub p0: MultiAffinePoly,
    pub p1: MultiAffinePoly,
    pub pairs: Vec<((VertexId, VertexId), MultiAffinePoly)>,
}

impl GrovePolys {
    pub fn pair(&self, i: VertexId, j: VertexId) -> Option<&MultiAffinePoly> {
        let key = (i.min(j), i.max(j));
        self.pairs.iter().find(|(k, _)| *k == key).map(|(_, p)| p)
    }
}

pub fn grove_polys(n: &Network) -> GrovePolys {
    let labels: Vec<String> = n.edges().iter().map(|e| e.label.clone()).collect();
    let sigma0 = n.groves(GroveMode::NoCrossing);
    let sigma1 = n.groves(GroveMode::OneCrossing);
    let boundary: Vec<VertexId> = n.boundary_vertices().collect();
    let mut pairs: Vec<((VertexId, VertexId), MultiAffinePoly)> = Vec::new();
    for (a, &i) in boundary.iter().enumerate() {
        for &j in &boundary[a + 1..] {
            pairs.push(((i, j), MultiAffinePoly::zero(labels.clone())));
        }
    }
    for &f in &sigma1 {
        let comp = n.component_labels(f);
        let (i, j) = boundary
            .iter()
            .enumerate()
            .find_map(|(a, &i)| boundary[a + 1..].iter().find(|&&j| comp[i] == comp[j]).map(|&j| (i, j)))
            .expect("a one-crossing grove joins two boundary nodes");
        let slot = pairs.iter_mut().find(|(k, _)| *k == (i, j)).expect("pair listed");
        slot.1.add_term(f, BigRational::one());
    }
    GrovePolys {
        p0: MultiAffinePoly::from_set_family(labels.clone(), &sigma0),
        p1: MultiAffinePoly::from_set_family(labels, &sigma1),
        pairs,
    }
}

/// `P_B = P₁ + x_eh·P₀` over `E ∪ {eh}`.
pub fn basis_gen_poly(n: &Network) -> MultiAffinePoly {
    let g = grove_polys(n);
    let ground = n.ground_labels();
    let p1 = g.p1.widen(ground.clone());
    let p0 = g.p0.widen(ground).times_variable(n.eh()).expect("eh is new");
    p1.add(&p0)
}

/// `w` of the bases of `M(N)` as enumerated by the matroid engine.
pub fn basis_family_poly(n: &Network) -> Result<MultiAffinePoly, crate::MatroidError> {
    Ok(MultiAffinePoly::from_set_family(n.ground_labels(), &dirichlet_matroid(n).bases()?))
}
