//! Dense univariate integer polynomials in λ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Coefficients constant-first; never carries trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly(Vec<i128>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> IntPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn zero() -> IntPoly {
        IntPoly(Vec::new())
    }

    pub fn constant(c: i128) -> IntPoly {
        IntPoly::new(vec![c])
    }

    /// `λ`.
    pub fn lambda() -> IntPoly {
        IntPoly(vec![0, 1])
    }

    /// `λ − a`.
    pub fn linear(a: i128) -> IntPoly {
        IntPoly(vec![-a, 1])
    }

    pub fn monomial(coeff: i128, degree: usize) -> IntPoly {
        let mut c = vec![0; degree + 1];
        c[degree] = coeff;
        IntPoly::new(c)
    }

    /// Falling factorial `(λ − a)_k = (λ − a)(λ − a − 1)⋯(λ − a − k + 1)`.
    pub fn falling_factorial(a: i128, k: usize) -> IntPoly {
        (0..k as i128).fold(IntPoly::constant(1), |acc, j| &acc * &IntPoly::linear(a + j))
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.0.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.0.iter().enumerate().skip(1).map(|(i, &c)| c * i as i128).collect())
    }

    pub fn scale(&self, k: i128) -> IntPoly {
        IntPoly::new(self.0.iter().map(|&c| c * k).collect())
    }

    /// `p(λ + c)`.
    pub fn shift(&self, c: i128) -> IntPoly {
        let step = IntPoly::new(vec![c, 1]);
        self.0.iter().rev().fold(IntPoly::zero(), |acc, &k| &(&acc * &step) + &IntPoly::constant(k))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in `Z[λ]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let mut rem = self.0.clone();
        let n = self.degree().unwrap();
        if n < dd {
            return None;
        }
        let lead = d.leading();
        let mut q = vec![0; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = rem[k + dd];
            if top % lead != 0 {
                return None;
            }
            let c = top / lead;
            q[k] = c;
            for (j, &dc) in d.0.iter().enumerate() {
                rem[k + j] -= c * dc;
            }
        }
        rem.iter().all(|&r| r == 0).then(|| IntPoly::new(q))
    }

    /// Coefficients with alternating signs removed: `|c_{deg−i}|` for `i = 0..=deg`,
    /// leading coefficient first.
    pub fn unsigned_from_top(&self) -> Vec<i128> {
        self.0.iter().rev().map(|c| c.abs()).collect()
    }

    /// Whether coefficients alternate in sign starting from the leading one (zeros allowed).
    pub fn alternates(&self) -> bool {
        let deg = self.0.len();
        self.0.iter().enumerate().all(|(i, &c)| {
            let from_top = deg - 1 - i;
            c == 0 || (c > 0) == (from_top % 2 == 0)
        })
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![0; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, o: IntPoly) -> IntPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntPoly {
    /// Human form, e.g. `λ^3 - 6λ^2 + 14λ - 13`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        let p = IntPoly::new(vec![-13, 14, -6, 1]);
        assert_eq!(p.to_string(), "λ^3 - 6λ^2 + 14λ - 13");
        assert_eq!(IntPoly::new(vec![0, -1]).to_string(), "-λ");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn falling_factorial_values() {
        let f = IntPoly::falling_factorial(0, 3);
        assert_eq!(f, IntPoly::new(vec![0, 2, -3, 1]));
        for k in 0..6 {
            assert_eq!(f.eval(k), k * (k - 1) * (k - 2));
        }
        assert_eq!(IntPoly::falling_factorial(2, 0), IntPoly::constant(1));
    }

    #[test]
    fn exact_division() {
        let a = IntPoly::new(vec![2, -3, 1]);
        assert_eq!(a.div_exact(&IntPoly::linear(1)), Some(IntPoly::linear(2)));
        assert_eq!(a.div_exact(&IntPoly::linear(3)), None);
        assert_eq!(a.div_exact(&IntPoly::zero()), None);
        assert_eq!(IntPoly::new(vec![1, 2]).div_exact(&IntPoly::constant(2)), None);
    }

    proptest! {
        #[test]
        fn product_divides_back(a in proptest::collection::vec(-50i128..50, 0..6), b in proptest::collection::vec(-50i128..50, 1..5)) {
            let (a, b) = (IntPoly::new(a), IntPoly::new(b));
            prop_assume!(!b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.div_exact(&b), Some(a.clone()));
            for x in -3..4 {
                prop_assert_eq!(p.eval(x), a.eval(x) * b.eval(x));
            }
        }
    }
}
