//! Weighted Laplacians, response matrices and the grove identities at exact
//! rational conductances, plus sampled stability evidence for `P_B`.

mod sample;
mod sturm;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::network::{Network, VertexId};
use crate::poly::{grove_polys, GrovePolys, PolyError};
use crate::qpoly::ser;

pub use sample::{
    delta_eval, hpp_sample, interlacing, interlacing_sample, monotonicity_and_bound, proper_position_checks,
    random_positive_line, sample_point, stability_sample, BoundReport, DeltaValues, InterlacingReport,
    InterlacingSweep, LineRestriction, ProperPositionReport, StabilityReport, Witness,
};
pub use sturm::{count_roots, interlaces, isolate_roots, sturm_sequence, IsolatedRoot, ISOLATION_BITS};

pub type Matrix = Vec<Vec<BigRational>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElectricalError {
    #[error("point has {got} weights but the network has {expected} edges")]
    MissingWeight { expected: usize, got: usize },
    #[error("interior block D is singular, so P0(x) = 0")]
    SingularInterior,
    #[error("line direction must be strictly positive in every coordinate")]
    NonPositiveDirection,
    #[error("{0} restricts to the zero polynomial on this line")]
    ZeroRestriction(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `L = [[A, B], [Bᵀ, D]]` with rows ordered boundary first, then interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedLaplacian {
    pub boundary: Vec<VertexId>,
    pub interior: Vec<VertexId>,
    pub a: Matrix,
    pub b: Matrix,
    pub d: Matrix,
}

impl WeightedLaplacian {
    pub fn full(&self) -> Matrix {
        let top = self.a.iter().zip(&self.b).map(|(a, b)| a.iter().chain(b).cloned().collect());
        let bt = transpose(&self.b);
        let bottom = bt.iter().zip(&self.d).map(|(b, d)| b.iter().chain(d).cloned().collect());
        top.chain(bottom).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric(&self.full())
    }

    pub fn zero_row_sums(&self) -> bool {
        zero_row_sums(&self.full())
    }
}

fn check_weights(n: &Network, x: &[BigRational]) -> Result<(), ElectricalError> {
    if x.len() < n.edge_count() {
        return Err(ElectricalError::MissingWeight { expected: n.edge_count(), got: x.len() });
    }
    Ok(())
}

fn edge_matrix(n: &Network, weight: impl Fn(usize) -> BigRational) -> Matrix {
    let d = n.vertex_count();
    let mut l = vec![vec![BigRational::zero(); d]; d];
    for (i, e) in n.edges().iter().enumerate() {
        let w = weight(i);
        let (u, v) = e.ends;
        l[u][u] += &w;
        l[v][v] += &w;
        l[u][v] -= &w;
        l[v][u] -= &w;
    }
    l
}

fn blocks(n: &Network, full: Matrix) -> WeightedLaplacian {
    let boundary: Vec<VertexId> = n.boundary_vertices().collect();
    let interior: Vec<VertexId> = n.interior_vertices().collect();
    let pick = |rows: &[VertexId], cols: &[VertexId]| -> Matrix {
        rows.iter().map(|&r| cols.iter().map(|&c| full[r][c].clone()).collect()).collect()
    };
    WeightedLaplacian {
        a: pick(&boundary, &boundary),
        b: pick(&boundary, &interior),
        d: pick(&interior, &interior),
        boundary,
        interior,
    }
}

pub fn laplacian(n: &Network, x: &[BigRational]) -> Result<WeightedLaplacian, ElectricalError> {
    check_weights(n, x)?;
    Ok(blocks(n, edge_matrix(n, |i| x[i].clone())))
}

/// `Λ = A − B D⁻¹ Bᵀ` on the boundary nodes in index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResponseMatrix {
    pub boundary: Vec<VertexId>,
    #[serde(serialize_with = "ser_matrix")]
    pub lambda: Matrix,
}

fn ser_matrix<S: serde::Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|row| row.iter().map(|r| r.to_string()).collect::<Vec<_>>()))
}

impl ResponseMatrix {
    pub fn trace(&self) -> BigRational {
        (0..self.lambda.len()).fold(BigRational::zero(), |acc, i| acc + &self.lambda[i][i])
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric(&self.lambda)
    }

    pub fn zero_row_sums(&self) -> bool {
        zero_row_sums(&self.lambda)
    }

    /// `uᵀΛu ≥ 0` for every `u ∈ {±1}^∂B`.
    pub fn nonnegative_on_sign_vectors(&self) -> bool {
        let m = self.lambda.len();
        (0..1u64 << m).all(|bits| {
            let u: Vec<BigRational> =
                (0..m).map(|i| if bits >> i & 1 == 1 { -BigRational::one() } else { BigRational::one() }).collect();
            !quadratic_form(&self.lambda, &u).is_negative()
        })
    }
}

/// Interior potentials `X = D⁻¹Bᵀ`, shared by the response and its derivative.
struct Harmonic {
    lap: WeightedLaplacian,
    x: Matrix,
}

fn harmonic(n: &Network, w: &[BigRational]) -> Result<Harmonic, ElectricalError> {
    let lap = laplacian(n, w)?;
    let x = solve(&lap.d, &transpose(&lap.b)).ok_or(ElectricalError::SingularInterior)?;
    Ok(Harmonic { lap, x })
}

pub fn response(n: &Network, x: &[BigRational]) -> Result<ResponseMatrix, ElectricalError> {
    let h = harmonic(n, x)?;
    let lambda = sub(&h.lap.a, &mul(&h.lap.b, &h.x));
    Ok(ResponseMatrix { boundary: h.lap.boundary, lambda })
}

/// Checks `L·(u, v) = (Λu, 0)` for `v = −D⁻¹Bᵀu`.
pub fn harmonic_extension_holds(n: &Network, x: &[BigRational], u: &[BigRational]) -> Result<bool, ElectricalError> {
    let h = harmonic(n, x)?;
    let lambda = sub(&h.lap.a, &mul(&h.lap.b, &h.x));
    let v: Vec<BigRational> = apply(&h.x, u).into_iter().map(|c| -c).collect();
    let top: Vec<BigRational> = apply(&h.lap.a, u).into_iter().zip(apply(&h.lap.b, &v)).map(|(a, b)| a + b).collect();
    let bottom: Vec<BigRational> =
        apply(&transpose(&h.lap.b), u).into_iter().zip(apply(&h.lap.d, &v)).map(|(a, b)| a + b).collect();
    Ok(top == apply(&lambda, u) && bottom.iter().all(|c| c.is_zero()))
}

/// `∂(trΛ)/∂x_f` from `∂Λ = ∂A − ∂B·X − Xᵀ·∂Bᵀ + Xᵀ·∂D·X`.
pub fn trace_derivative(n: &Network, x: &[BigRational], f: usize) -> Result<BigRational, ElectricalError> {
    let h = harmonic(n, x)?;
    Ok(trace_derivative_with(n, &h, f))
}

fn trace_derivative_with(n: &Network, h: &Harmonic, f: usize) -> BigRational {
    let dl = blocks(n, edge_matrix(n, |i| if i == f { BigRational::one() } else { BigRational::zero() }));
    let xt = transpose(&h.x);
    let dlambda = add(
        &sub(&sub(&dl.a, &mul(&dl.b, &h.x)), &mul(&xt, &transpose(&dl.b))),
        &mul(&mul(&xt, &dl.d), &h.x),
    );
    (0..dlambda.len()).fold(BigRational::zero(), |acc, i| acc + &dlambda[i][i])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroveIdentityReport {
    pub symmetric: bool,
    pub zero_row_sums: bool,
    /// `−Λ_ij·P₀ = P_ij` for every pair of boundary nodes.
    pub pair_identities: bool,
    /// `trΛ·P₀ = 2P₁`.
    pub trace_identity: bool,
    /// `det D = P₀`.
    pub det_identity: bool,
    #[serde(serialize_with = "ser::rational")]
    pub trace: BigRational,
    #[serde(serialize_with = "ser::rational")]
    pub p0: BigRational,
    #[serde(serialize_with = "ser::rational")]
    pub p1: BigRational,
}

impl GroveIdentityReport {
    pub fn holds(&self) -> bool {
        self.symmetric && self.zero_row_sums && self.pair_identities && self.trace_identity && self.det_identity
    }
}

pub fn grove_identities(n: &Network, x: &[BigRational]) -> Result<GroveIdentityReport, ElectricalError> {
    grove_identities_with(n, &grove_polys(n), x)
}

/// As [`grove_identities`] with the grove polynomials computed once by the caller.
pub fn grove_identities_with(n: &Network, g: &GrovePolys, x: &[BigRational]) -> Result<GroveIdentityReport, ElectricalError> {
    let r = response(n, x)?;
    let p0 = g.p0.eval(x)?;
    let p1 = g.p1.eval(x)?;
    let mut pair_identities = true;
    for (a, &i) in r.boundary.iter().enumerate() {
        for (b, &j) in r.boundary.iter().enumerate().skip(a + 1) {
            let pij = g.pair(i, j).expect("every boundary pair is listed").eval(x)?;
            pair_identities &= -(&r.lambda[a][b] * &p0) == pij;
        }
    }
    let trace = r.trace();
    let lap = laplacian(n, x)?;
    Ok(GroveIdentityReport {
        symmetric: r.is_symmetric(),
        zero_row_sums: r.zero_row_sums(),
        pair_identities,
        trace_identity: &trace * &p0 == &p1 + &p1,
        det_identity: det(&lap.d) == p0,
        trace,
        p0,
        p1,
    })
}

fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

fn zip_with(a: &Matrix, b: &Matrix, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Matrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| f(x, y)).collect()).collect()
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    zip_with(a, b, |x, y| x + y)
}

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    zip_with(a, b, |x, y| x - y)
}

fn apply(m: &Matrix, v: &[BigRational]) -> Vec<BigRational> {
    m.iter().map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)).collect()
}

fn quadratic_form(m: &Matrix, u: &[BigRational]) -> BigRational {
    apply(m, u).iter().zip(u).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
}

fn is_symmetric(m: &Matrix) -> bool {
    (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

fn zero_row_sums(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().fold(BigRational::zero(), |acc, c| acc + c).is_zero())
}

/// Solves `m·X = rhs` by Gauss–Jordan elimination; `None` when `m` is singular.
fn solve(m: &Matrix, rhs: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m.iter().zip(rhs).map(|(r, s)| r.iter().chain(s).cloned().collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = BigRational::one() / &aug[col][col];
        for c in aug[col].iter_mut() {
            *c *= &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (c, p) in aug[r].iter_mut().zip(&pivot_row) {
                    *c -= &factor * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(m: &Matrix) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut result = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else { return BigRational::zero() };
        if pivot != col {
            a.swap(col, pivot);
            result = -result;
        }
        result *= &a[col][col];
        for r in col + 1..n {
            let factor = &a[r][col] / &a[col][col];
            let pivot_row = a[col].clone();
            for (c, p) in a[r].iter_mut().zip(&pivot_row) {
                *c -= &factor * p;
            }
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::generate::{path, star};
    use crate::qpoly::{int, rat};

    #[test]
    fn path3_response_closed_form() {
        let n = path(3).unwrap();
        let x = [int(2), int(3)];
        let lap = laplacian(&n, &x).unwrap();
        assert_eq!(lap.d, vec![vec![int(5)]]);
        let r = response(&n, &x).unwrap();
        let c = rat(6, 5);
        assert_eq!(r.lambda, vec![vec![c.clone(), -c.clone()], vec![-c.clone(), c]]);
        assert_eq!(
            response(&n, &[int(4), int(-4)]).unwrap_err(),
            ElectricalError::SingularInterior
        );
        assert!(r.nonnegative_on_sign_vectors());
    }

    #[test]
    fn star3_unit_weights() {
        let n = star(3).unwrap();
        let ones = vec![int(1); 3];
        assert_eq!(laplacian(&n, &ones).unwrap().d, vec![vec![int(3)]]);
        let r = response(&n, &ones).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { rat(2, 3) } else { rat(-1, 3) };
                assert_eq!(r.lambda[i][j], want);
            }
        }
        assert_eq!(r.trace(), int(2));
        let report = grove_identities(&n, &ones).unwrap();
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn harmonic_extension_and_derivative() {
        let n = path(3).unwrap();
        let x = [int(2), int(3)];
        assert!(harmonic_extension_holds(&n, &x, &[int(7), int(-1)]).unwrap());
        // trΛ = 2x₁x₂/(x₁+x₂), so ∂₁trΛ = 2x₂²/(x₁+x₂)² = 18/25.
        assert_eq!(trace_derivative(&n, &x, 0).unwrap(), rat(18, 25));
        assert_eq!(det(&vec![vec![int(0), int(2)], vec![int(3), int(1)]]), int(-6));
    }

    #[test]
    fn short_weight_vector_rejected() {
        let n = path(3).unwrap();
        assert_eq!(laplacian(&n, &[int(1)]).unwrap_err(), ElectricalError::MissingWeight { expected: 2, got: 1 });
    }
}
