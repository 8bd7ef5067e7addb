//! Sparse multivariate polynomials over an exact scalar field.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order, so iteration in reverse yields leading terms. No zero
//! coefficient is ever stored.

use crate::num::{rat, Rat, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Ordered list of variable names shared by the polynomials of one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        VarSet(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Projective 3-space coordinates x0..x3.
pub fn vars_p3() -> VarSet {
    VarSet::new(vec!["x0", "x1", "x2", "x3"])
}

/// Affine/plane coordinates x, y, z.
pub fn vars_xyz() -> VarSet {
    VarSet::new(vec!["x", "y", "z"])
}

/// Coordinates of the net's parameter plane.
pub fn vars_lmn() -> VarSet {
    VarSet::new(vec!["l", "m", "n"])
}

/// Exponent vector; ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub SmallVec<[u16; 4]>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, idx: usize, exp: u16) -> Self {
        let mut m = Self::unit(nvars);
        m.0[idx] = exp;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Self) -> Self {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with scalar coefficients from `K`.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<K: Scalar> {
    pub vars: VarSet,
    terms: BTreeMap<Monomial, K>,
}

pub type PolyQ = MultiPoly<Rat>;

impl<K: Scalar> MultiPoly<K> {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: K) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, K::one())
    }

    pub fn variable(vars: &VarSet, idx: usize) -> Self {
        Self::from_term(vars, Monomial::var(vars.len(), idx, 1), K::one())
    }

    pub fn from_term(vars: &VarSet, m: Monomial, c: K) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: &VarSet, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> MultiPoly<L> {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k.mul(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.vars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[var] = e - 1;
                out.add_term(m2, c.mul(&K::from_rat(&crate::num::rat(e as i64))));
            }
        }
        out
    }

    pub fn eval(&self, point: &[K]) -> K {
        debug_assert_eq!(point.len(), self.vars.len());
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute each variable by the given polynomial (same target ring).
    pub fn substitute(&self, images: &[MultiPoly<K>]) -> MultiPoly<K> {
        debug_assert_eq!(images.len(), self.vars.len());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut acc = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Set one variable to a scalar, keeping the ambient variable list.
    pub fn eval_var(&self, var: usize, value: &K) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = coeff.mul(value);
            }
            out.add_term(m2, coeff);
        }
        out
    }

    /// Drop a variable, renaming the ring; the variable must not occur.
    pub fn forget_var(&self, var: usize) -> Self {
        debug_assert_eq!(self.degree_in(var), 0);
        let names: Vec<String> = self
            .vars
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != var)
            .map(|(_, n)| n.clone())
            .collect();
        let vs = VarSet::new(names);
        let mut out = MultiPoly::zero(&vs);
        for (m, c) in &self.terms {
            let mut e: SmallVec<[u16; 4]> = m.0.clone();
            e.remove(var);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        let (lm, lc) = {
            let (m, c) = other.leading().unwrap();
            (m.clone(), c.clone())
        };
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&lm);
            let qc = rc.div(&lc);
            quot.add_term(qm.clone(), qc.clone());
            let t = MultiPoly::from_term(&self.vars, qm, qc);
            rem = rem.sub(&t.mul(other));
        }
        Some(quot)
    }

    /// Divisibility test without keeping the quotient.
    pub fn divisible_by(&self, other: &Self) -> bool {
        self.exact_div(other).is_some()
    }

    /// Coefficients of `self` viewed as a polynomial in `var`, constants in
    /// the remaining ring (ascending degree; the variable slot is zeroed).
    pub fn coeffs_in_var(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.vars); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    /// Make the graded-lex leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv();
                self.scale(&inv)
            }
        }
    }
}

impl PolyQ {
    /// Integer content together with the common denominator cleared: returns
    /// (c, p) with self = c·p, p integer-primitive with positive leading
    /// coefficient.
    pub fn rat_content(&self) -> (Rat, PolyQ) {
        if self.is_zero() {
            return (rat(0), self.clone());
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut content = Rat::new(num, den);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> PolyQ {
        self.rat_content().1
    }
}

impl<K: Scalar> fmt::Display for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let cs = format!("{c}");
            let neg = cs.starts_with('-');
            let abs = if neg { cs[1..].to_string() } else { cs.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = m.degree() == 0;
            let unit_coeff = abs == "1";
            let needs_paren = abs.contains(' ') || abs.contains('+') || abs.contains('/') && false;
            if is_const || !unit_coeff {
                if needs_paren {
                    write!(f, "({abs})")?;
                } else {
                    write!(f, "{abs}")?;
                }
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = false;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if sep {
                    write!(f, "*")?;
                }
                sep = true;
                write!(f, "{}", self.vars.names()[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Convenience constructor used throughout the tests: parse-free term lists.
pub fn poly_q(vars: &VarSet, terms: &[(i64, &[u16])]) -> PolyQ {
    let mut p = PolyQ::zero(vars);
    for (c, exps) in terms {
        p.add_term(
            Monomial(SmallVec::from_slice(
                &exps.iter().copied().collect::<Vec<u16>>(),
            )),
            crate::num::rat(*c),
        );
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn grlex_order() {
        let a = Monomial(SmallVec::from_slice(&[2, 0, 0])); // x^2
        let b = Monomial(SmallVec::from_slice(&[1, 1, 0])); // xy
        let c = Monomial(SmallVec::from_slice(&[0, 0, 1])); // z
        assert!(a > b);
        assert!(b > c);
    }

    #[test]
    fn arithmetic_round_trip() {
        let vs = vars_xyz();
        let x = PolyQ::variable(&vs, 0);
        let y = PolyQ::variable(&vs, 1);
        let f = x.add(&y).mul(&x.sub(&y)); // x^2 - y^2
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(f, expect);
        assert!(f.is_homogeneous());
        assert_eq!(f.total_degree(), 2);
    }

    #[test]
    fn exact_division() {
        let vs = vars_xyz();
        let x = PolyQ::variable(&vs, 0);
        let y = PolyQ::variable(&vs, 1);
        let f = x.add(&y);
        let g = x.sub(&y);
        let prod = f.mul(&g);
        assert_eq!(prod.exact_div(&f), Some(g.clone()));
        assert_eq!(prod.exact_div(&g), Some(f.clone()));
        assert!(prod.add(&PolyQ::one(&vs)).exact_div(&f).is_none());
    }

    #[test]
    fn content_primitive() {
        let vs = vars_xyz();
        let f = poly_q(&vs, &[(4, &[2, 0, 0]), (-6, &[0, 1, 0])]);
        let f = f.scale(&rat_frac_local(1, 3));
        let (c, p) = f.rat_content();
        assert_eq!(p, poly_q(&vs, &[(2, &[2, 0, 0]), (-3, &[0, 1, 0])]));
        assert_eq!(f, p.scale(&c));
    }

    fn rat_frac_local(n: i64, d: i64) -> Rat {
        rat(n) / rat(d)
    }

    #[test]
    fn display_reasonable() {
        let vs = vars_xyz();
        let f = poly_q(&vs, &[(1, &[2, 0, 0]), (-2, &[1, 1, 0]), (1, &[0, 0, 0])]);
        assert_eq!(format!("{f}"), "x^2 - 2*x*y + 1");
    }
}
