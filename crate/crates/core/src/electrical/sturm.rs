//! Exact real-root isolation by Sturm sequences over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::qpoly::{ser, RatPoly};

/// Isolating intervals are refined to width at most `2^-ISOLATION_BITS`.
pub const ISOLATION_BITS: u32 = 40;

/// A real root inside `(lo, hi]`, or exactly `lo` when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatedRoot {
    #[serde(serialize_with = "ser::rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser::rational")]
    pub hi: BigRational,
    /// Multiplicity in each polynomial passed to [`isolate_roots`].
    pub multiplicity: Vec<usize>,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Integer polynomial, constant term first, scaled from a rational one by a
/// positive factor so signs are preserved.
type ZPoly = Vec<BigInt>;

fn primitive(p: &RatPoly) -> ZPoly {
    let denom = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let nums: Vec<BigInt> = p.coeffs().iter().map(|c| (c * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let content = nums.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() {
        return nums;
    }
    nums.into_iter().map(|c| c / &content).collect()
}

/// `num / 2^exp`.
#[derive(Clone, Debug)]
struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    fn at(&self, exp: u32) -> BigInt {
        &self.num << (exp - self.exp)
    }

    fn mid(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let e = a.exp.max(b.exp);
        Dyadic { num: a.at(e) + b.at(e), exp: e + 1 }
    }

    /// `b − a ≤ 2^-bits`.
    fn close(a: &Dyadic, b: &Dyadic, bits: u32) -> bool {
        let e = a.exp.max(b.exp);
        ((b.at(e) - a.at(e)) << bits) <= (BigInt::one() << e)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }
}

/// Sign of `p(num/2^exp)`, from `Σ c_i num^i 2^{exp(n−i)}` in integers.
fn sign_at(p: &ZPoly, t: &Dyadic) -> i8 {
    let n = p.len();
    if n == 0 {
        return 0;
    }
    let mut acc = p[n - 1].clone();
    for i in (0..n - 1).rev() {
        acc = acc * &t.num + (&p[i] << (t.exp as usize * (n - 1 - i)));
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Sturm sequence `p, p′, −rem, …`, each remainder rescaled to a primitive
/// integer polynomial by a positive factor to keep coefficients small.
pub fn sturm_sequence(p: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().expect("nonempty").is_zero() {
        let n = seq.len();
        let r = -&seq[n - 2].rem(&seq[n - 1]);
        seq.push(RatPoly::new(primitive(&r).into_iter().map(BigRational::from_integer).collect()));
    }
    seq.pop();
    seq
}

fn zsturm(p: &RatPoly) -> Vec<ZPoly> {
    sturm_sequence(p).iter().map(primitive).collect()
}

fn variations(seq: &[ZPoly], t: &Dyadic) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| sign_at(p, t)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots in `(lo, hi]` of a squarefree `p`, given its Sturm sequence.
pub fn count_roots(seq: &[RatPoly], lo: &BigRational, hi: &BigRational) -> usize {
    let var = |t: &BigRational| {
        let signs: Vec<i8> = seq.iter().map(|p| p.sign_at(t)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    var(lo) - var(hi)
}

/// `b` with every root of `p` inside `(−2^b, 2^b)`, from the Cauchy bound.
fn root_bound_bits(p: &RatPoly) -> u32 {
    let lead = p.leading();
    let bound = p.coeffs().iter().map(|c| (c / &lead).abs()).fold(BigRational::zero(), |m, c| if c > m { c } else { m })
        + BigRational::one();
    let ceil = bound.ceil().to_integer();
    ceil.bits() as u32 + 1
}

enum Found {
    Exact(Dyadic),
    Interval(Dyadic, Dyadic),
}

fn isolate(h: &RatPoly, lo: Dyadic, hi: Dyadic, out: &mut Vec<Found>) {
    let seq = zsturm(h);
    let zh = &seq[0];
    let mut stack = vec![(lo, hi)];
    while let Some((lo, hi)) = stack.pop() {
        let c = variations(&seq, &lo) - variations(&seq, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push(refine(zh, lo, hi));
            continue;
        }
        let mid = Dyadic::mid(&lo, &hi);
        if sign_at(zh, &mid) == 0 {
            let root = mid.to_rational();
            out.push(Found::Exact(mid.clone()));
            let deflated = h.div_rem(&RatPoly::linear(-root, BigRational::one())).0;
            isolate(&deflated, lo, mid.clone(), out);
            isolate(&deflated, mid, hi, out);
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
}

/// Bisection on sign changes once `(lo, hi]` holds a single simple root.
fn refine(h: &ZPoly, mut lo: Dyadic, mut hi: Dyadic) -> Found {
    let lo_sign = sign_at(h, &lo);
    while !Dyadic::close(&lo, &hi, ISOLATION_BITS) {
        let mid = Dyadic::mid(&lo, &hi);
        match sign_at(h, &mid) {
            0 => return Found::Exact(mid),
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    Found::Interval(lo, hi)
}

/// Isolates the real roots of the product of `polys` (all nonzero) to width
/// `2^-ISOLATION_BITS`, recording each root's multiplicity in every factor.
pub fn isolate_roots(polys: &[&RatPoly]) -> Vec<IsolatedRoot> {
    assert!(polys.iter().all(|p| !p.is_zero()), "zero polynomial has no isolated roots");
    let product = polys.iter().fold(RatPoly::constant(BigRational::one()), |acc, p| &acc * p);
    if product.degree() == Some(0) {
        return Vec::new();
    }
    let h = product.squarefree();
    let b = root_bound_bits(&h);
    let mut found = Vec::new();
    isolate(&h, Dyadic { num: -(BigInt::one() << b), exp: 0 }, Dyadic { num: BigInt::one() << b, exp: 0 }, &mut found);
    // Each squarefree factor a_i has only simple roots, all of them roots of
    // h, so it vanishes inside an isolating interval iff it changes sign there.
    let factors: Vec<Vec<(ZPoly, usize)>> = polys
        .iter()
        .map(|p| p.squarefree_decomposition().into_iter().map(|(a, i)| (primitive(&a), i)).collect())
        .collect();
    let mut roots: Vec<IsolatedRoot> = found
        .into_iter()
        .map(|f| {
            let vanishes = |a: &ZPoly| match &f {
                Found::Exact(t) => sign_at(a, t) == 0,
                Found::Interval(lo, hi) => sign_at(a, lo) * sign_at(a, hi) <= 0,
            };
            let multiplicity = factors.iter().map(|fs| fs.iter().filter(|(a, _)| vanishes(a)).map(|(_, i)| i).sum()).collect();
            let (lo, hi) = match &f {
                Found::Exact(t) => (t.to_rational(), t.to_rational()),
                Found::Interval(lo, hi) => (lo.to_rational(), hi.to_rational()),
            };
            IsolatedRoot { lo, hi, multiplicity }
        })
        .collect();
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    roots
}

/// Whether the roots of factor `a` and factor `b` of an [`isolate_roots`]
/// result interlace, counting multiplicity: `N_b(t) − N_a(t)` takes at most
/// two adjacent values over `t ∈ ℝ`, `N` counting roots `≤ t`.
pub fn interlaces(roots: &[IsolatedRoot], a: usize, b: usize) -> bool {
    let mut diff = 0i64;
    let (mut lo, mut hi) = (0i64, 0i64);
    for r in roots {
        diff += r.multiplicity[b] as i64 - r.multiplicity[a] as i64;
        lo = lo.min(diff);
        hi = hi.max(diff);
    }
    hi - lo <= 1
}
