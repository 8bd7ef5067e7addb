//! Coefficient fields: arbitrary-precision rationals and quadratic extensions Q(√d).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar. `num_rational` keeps the fraction reduced with a
/// positive denominator, which is exactly the canonical form we rely on.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Squarefree part of a nonzero integer, preserving sign.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "squarefree part of zero");
    let mut result = if n.is_negative() {
        BigInt::from(-1)
    } else {
        BigInt::one()
    };
    let mut m = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut count = 0u32;
        while m.is_multiple_of(&p) {
            m /= &p;
            count += 1;
        }
        if count % 2 == 1 {
            result *= &p;
        }
        p += 1;
    }
    result * m
}

/// Scalar arithmetic shared by the rational and quadratic-extension fields.
///
/// All operations are total except `inv` on zero. Values are immutable; every
/// method returns a fresh scalar.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    /// Rational part when the scalar happens to lie in Q.
    fn to_rat(&self) -> Option<Rat>;
}

impl Scalar for Rat {
    fn zero() -> Self {
        rat(0)
    }
    fn one() -> Self {
        rat(1)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero");
        self.recip()
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

/// Element a + b·√d of a quadratic field Q(√d), d squarefree and not 0 or 1.
///
/// Exactly one √d per field context: combining elements with different `d`
/// is a caller error and panics. Public entry points that accept user data
/// validate the context before arithmetic starts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadExt {
    pub a: Rat,
    pub b: Rat,
    pub d: i64,
}

impl QuadExt {
    pub fn new(a: Rat, b: Rat, d: i64) -> Self {
        debug_assert!(d != 0 && d != 1, "d must be squarefree and not 0 or 1");
        QuadExt { a, b, d }
    }

    pub fn rational(a: Rat, d: i64) -> Self {
        QuadExt::new(a, rat(0), d)
    }

    pub fn sqrt_d(d: i64) -> Self {
        QuadExt::new(rat(0), rat(1), d)
    }

    pub fn conj(&self) -> Self {
        QuadExt::new(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm a² − d·b².
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rat(self.d) * &self.b * &self.b
    }

    fn ctx(&self, other: &Self) -> i64 {
        assert!(
            self.d == other.d,
            "mixed quadratic field contexts: sqrt({}) vs sqrt({})",
            self.d,
            other.d
        );
        self.d
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if Zero::is_zero(&self.a) {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Scalar for QuadExt {
    fn zero() -> Self {
        // The context is fixed by whichever value this combines with; a bare
        // zero uses a placeholder that `add`/`mul` treat as compatible.
        QuadExt { a: rat(0), b: rat(0), d: 0 }
    }
    fn one() -> Self {
        QuadExt { a: rat(1), b: rat(0), d: 0 }
    }
    fn from_rat(r: &Rat) -> Self {
        QuadExt { a: r.clone(), b: rat(0), d: 0 }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, other: &Self) -> Self {
        let d = self.join(other);
        QuadExt { a: &self.a + &other.a, b: &self.b + &other.b, d }
    }
    fn sub(&self, other: &Self) -> Self {
        let d = self.join(other);
        QuadExt { a: &self.a - &other.a, b: &self.b - &other.b, d }
    }
    fn mul(&self, other: &Self) -> Self {
        let d = self.join(other);
        let dd = rat(if d == 0 { 0 } else { d });
        QuadExt {
            a: &self.a * &other.a + &dd * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        }
    }
    fn neg(&self) -> Self {
        QuadExt { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }
    fn inv(&self) -> Self {
        assert!(!Scalar::is_zero(self), "division by zero");
        let n = self.norm();
        assert!(!Zero::is_zero(&n), "non-invertible quadratic element");
        QuadExt { a: &self.a / &n, b: -&self.b / &n, d: self.d }
    }
    fn to_rat(&self) -> Option<Rat> {
        if Zero::is_zero(&self.b) {
            Some(self.a.clone())
        } else {
            None
        }
    }
}

impl QuadExt {
    /// Resolve the shared field context. Values with zero irrational part are
    /// context-agnostic; two genuinely irrational values must agree on d.
    fn join(&self, other: &Self) -> i64 {
        let sd = if Zero::is_zero(&self.b) { 0 } else { self.d };
        let od = if Zero::is_zero(&other.b) { 0 } else { other.d };
        match (sd, od) {
            (0, 0) => {
                if self.d != 0 {
                    self.d
                } else {
                    other.d
                }
            }
            (0, d) | (d, 0) => d,
            (a, b) if a == b => a,
            _ => self.ctx(other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigInt::from(12)), BigInt::from(3));
        assert_eq!(squarefree_part(&BigInt::from(-4)), BigInt::from(-1));
        assert_eq!(squarefree_part(&BigInt::from(1)), BigInt::from(1));
        assert_eq!(squarefree_part(&BigInt::from(30)), BigInt::from(30));
    }

    #[test]
    fn quadext_field_ops() {
        let s = QuadExt::sqrt_d(2);
        let x = s.mul(&s);
        assert_eq!(x.to_rat(), Some(rat(2)));
        let y = QuadExt::new(rat(1), rat(1), 2); // 1 + √2
        let z = y.mul(&y.inv());
        assert!(Scalar::sub(&z, &QuadExt::one()).is_zero());
    }

    #[test]
    #[should_panic(expected = "mixed quadratic field contexts")]
    fn quadext_mixed_contexts_panic() {
        let a = QuadExt::sqrt_d(2);
        let b = QuadExt::sqrt_d(3);
        let _ = a.add(&b);
    }
}
