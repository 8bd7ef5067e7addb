//! Dense univariate polynomials over an exact scalar field.

use crate::num::{rat, Rat, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficients ascending by degree; the leading coefficient is nonzero
/// unless the polynomial is zero (empty list).
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<K: Scalar> {
    pub coeffs: Vec<K>,
}

pub type UniQ = UniPoly<Rat>;

impl<K: Scalar> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![K::one()] }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![K::zero(), K::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|k| k.mul(c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Euclidean division over a field: (quotient, remainder).
    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = vec![K::zero(); self.coeffs.len().saturating_sub(other.coeffs.len() - 1)];
        let lc_inv = other.lc().inv();
        while !rem.is_zero() && rem.degree() >= other.degree() {
            let shift = rem.degree() - other.degree();
            let q = rem.lc().mul(&lc_inv);
            quot[shift] = q.clone();
            let mut sub = vec![K::zero(); shift];
            sub.extend(other.coeffs.iter().map(|c| c.mul(&q)));
            rem = rem.sub(&Self::new(sub));
        }
        (Self::new(quot), rem)
    }

    pub fn rem(&self, other: &Self) -> Self {
        self.div_rem(other).1
    }

    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd over a field.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = a.lc().inv();
            a.scale(&inv)
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&K::from_rat(&rat(i as i64))));
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    /// Order of vanishing at 0 (index of the lowest nonzero coefficient).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> UniPoly<L> {
        UniPoly::new(self.coeffs.iter().map(|c| f(c)).collect())
    }
}

impl UniQ {
    /// Denominator-cleared integer-primitive form with positive leading
    /// coefficient, together with the removed rational content.
    pub fn rat_content(&self) -> (Rat, UniQ) {
        if self.is_zero() {
            return (rat(0), self.clone());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in &self.coeffs {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut content = Rat::new(num, den);
        if self.lc().is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// All rational roots with multiplicities, via the rational root theorem
    /// on the primitive form.
    pub fn rational_roots(&self) -> Vec<(Rat, usize)> {
        if self.is_zero() {
            return vec![];
        }
        let (_, p) = self.rat_content();
        let mut out = vec![];
        let mut f = p;
        // strip roots at zero first
        let val = f.valuation().unwrap_or(0);
        if val > 0 {
            f = UniPoly::new(f.coeffs[val..].to_vec());
            out.push((rat(0), val));
        }
        if f.degree() == 0 {
            return out;
        }
        let a0 = f.coeffs[0].numer().abs();
        let an = f.lc().numer().abs();
        let mut candidates = vec![];
        for p_div in divisors(&a0) {
            for q_div in divisors(&an) {
                let r = Rat::new(p_div.clone(), q_div.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            let mut mult = 0;
            while Scalar::is_zero(&f.eval(&r)) {
                let lin = UniQ::new(vec![-r.clone(), rat(1)]);
                f = f.exact_div(&lin).unwrap();
                mult += 1;
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
        out
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive());
    let mut small = vec![];
    let mut large = vec![];
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

impl<K: Scalar> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat_frac;

    fn p(cs: &[i64]) -> UniQ {
        UniQ::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn gcd_and_division() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = p(&[-2, 1, 1]).mul(&p(&[1]));
        let b = p(&[3, -4, 1]);
        let g = a.gcd(&b);
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn rational_roots_found() {
        // 2t^3 - 3t^2 - 3t + 2 has roots 2, -1, 1/2
        let f = p(&[2, -3, -3, 2]);
        let roots = f.rational_roots();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().any(|(r, m)| *r == rat(2) && *m == 1));
        assert!(roots.iter().any(|(r, m)| *r == rat(-1) && *m == 1));
        assert!(roots.iter().any(|(r, m)| *r == rat_frac(1, 2) && *m == 1));
    }

    #[test]
    fn valuation_counts_zero_roots() {
        let f = p(&[0, 0, 5, 1]);
        assert_eq!(f.valuation(), Some(2));
        let roots = f.rational_roots();
        assert!(roots.iter().any(|(r, m)| *r == rat(0) && *m == 2));
    }
}
