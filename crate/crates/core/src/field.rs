//! Exact scalars: rationals, prime fields, and GF(4) by table.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown field {0:?}; expected Q, GF(p) or GF(4)")]
    UnknownField(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
    Gf4,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    /// Residue `value mod p`, with `value < p`.
    Fp(u64, u64),
    /// GF(4) as `{0, 1, w, w + 1}` encoded `0..4`; addition is XOR.
    Gf4(u8),
}

const GF4_LOG: [usize; 4] = [usize::MAX, 0, 1, 2];
const GF4_EXP: [u8; 3] = [1, 2, 3];

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// Accepts `Q`, `GF(p)`/`GFp` for prime `p`, and `GF(4)`/`GF4`.
    pub fn parse(text: &str) -> Result<Field, FieldError> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let inner = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix("gf"))
            .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| FieldError::UnknownField(text.into()))?;
        match inner.parse::<u64>() {
            Ok(4) => Ok(Field::Gf4),
            Ok(p) => Field::prime(p),
            Err(_) => Err(FieldError::UnknownField(text.into())),
        }
    }

    /// Number of elements, `None` for `Q`.
    pub fn size(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
            Field::Gf4 => Some(4),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(v.into())),
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(p as i64) as u64, p),
            Field::Gf4 => Scalar::Gf4((v.rem_euclid(2)) as u8),
        }
    }

    /// The `i`-th element in a fixed listing (`0, 1, 2, …`), if it exists.
    pub fn element(self, i: u64) -> Option<Scalar> {
        match self {
            Field::Rational => Some(self.from_int(i as i64)),
            Field::Prime(p) => (i < p).then_some(Scalar::Fp(i, p)),
            Field::Gf4 => (i < 4).then_some(Scalar::Gf4(i as u8)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Gf4 => write!(f, "GF(4)"),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp(_, p) => Field::Prime(*p),
            Scalar::Gf4(_) => Field::Gf4,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
            Scalar::Gf4(v) => *v == 0,
        }
    }

    fn mismatch(&self, other: &Scalar) -> ! {
        panic!("mixed fields: {} and {}", self.field(), other.field())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => Scalar::Fp((a + b) % p, *p),
            (Scalar::Gf4(a), Scalar::Gf4(b)) => Scalar::Gf4(a ^ b),
            _ => self.mismatch(other),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp(a, p) => Scalar::Fp((p - a) % p, *p),
            Scalar::Gf4(a) => Scalar::Gf4(*a),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => Scalar::Fp(((*a as u128 * *b as u128) % *p as u128) as u64, *p),
            (Scalar::Gf4(a), Scalar::Gf4(b)) => {
                if *a == 0 || *b == 0 {
                    Scalar::Gf4(0)
                } else {
                    Scalar::Gf4(GF4_EXP[(GF4_LOG[*a as usize] + GF4_LOG[*b as usize]) % 3])
                }
            }
            _ => self.mismatch(other),
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp(a, p) => {
                let g = (*a as i128).extended_gcd(&(*p as i128));
                Scalar::Fp(g.x.rem_euclid(*p as i128) as u64, *p)
            }
            Scalar::Gf4(a) => Scalar::Gf4(GF4_EXP[(3 - GF4_LOG[*a as usize]) % 3]),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Fp(v, p) => write!(f, "{v} mod {p}"),
            Scalar::Gf4(v) => f.write_str(["0", "1", "w", "w+1"][*v as usize]),
        }
    }
}

/// Rank of the matrix whose columns are `columns`, all over `field`.
/// Rationals go through fraction-free (Bareiss) elimination after clearing
/// denominators column by column; finite fields use plain elimination.
pub fn rank(field: Field, columns: &[&[Scalar]]) -> usize {
    let Some(first) = columns.first() else { return 0 };
    let rows = first.len();
    match field {
        Field::Rational => {
            let mut m: Vec<Vec<BigInt>> = columns
                .iter()
                .map(|col| {
                    let qs: Vec<&BigRational> = col
                        .iter()
                        .map(|s| match s {
                            Scalar::Q(q) => q,
                            other => panic!("expected a rational, found {other}"),
                        })
                        .collect();
                    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                    qs.iter().map(|q| (*q * BigRational::from_integer(l.clone())).to_integer()).collect()
                })
                .collect();
            bareiss_rank(&mut m, rows)
        }
        _ => {
            let mut m: Vec<Vec<Scalar>> = columns.iter().map(|c| c.to_vec()).collect();
            elimination_rank(&mut m, rows)
        }
    }
}

/// Rank of a column-major integer matrix by Bareiss elimination.
fn bareiss_rank(m: &mut [Vec<BigInt>], rows: usize) -> usize {
    let cols = m.len();
    let mut r = 0;
    let mut prev = BigInt::one();
    for row in 0..rows {
        if r == cols {
            break;
        }
        let Some(p) = (r..cols).find(|&c| !m[c][row].is_zero()) else { continue };
        m.swap(r, p);
        for c in r + 1..cols {
            for k in row + 1..rows {
                let v = (&m[r][row] * &m[c][k] - &m[c][row] * &m[r][k]) / &prev;
                m[c][k] = v;
            }
            m[c][row] = BigInt::zero();
        }
        prev = m[r][row].abs();
        if prev.is_zero() {
            prev = BigInt::one();
        }
        r += 1;
    }
    r
}

fn elimination_rank(m: &mut [Vec<Scalar>], rows: usize) -> usize {
    let cols = m.len();
    let mut r = 0;
    for row in 0..rows {
        if r == cols {
            break;
        }
        let Some(p) = (r..cols).find(|&c| !m[c][row].is_zero()) else { continue };
        m.swap(r, p);
        let pivot_inv = m[r][row].inv().expect("pivot is nonzero");
        for c in r + 1..cols {
            if m[c][row].is_zero() {
                continue;
            }
            let factor = m[c][row].mul(&pivot_inv);
            for k in row..rows {
                let v = m[c][k].sub(&factor.mul(&m[r][k]));
                m[c][k] = v;
            }
        }
        r += 1;
    }
    r
}
