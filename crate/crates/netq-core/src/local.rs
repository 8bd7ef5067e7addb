//! Dimensions of truncated local algebras at the origin.
//!
//! Used for intersection multiplicities of base points and for Milnor
//! numbers. The generators must vanish at the origin of the affine chart; the
//! dimension of the quotient by the ideal they generate in the formal local
//! ring is read off once two consecutive truncation degrees agree, which is a
//! permanent plateau: if one graded piece of the associated graded algebra
//! vanishes, so do all later ones.

use crate::linalg::rank_scalar;
use crate::multipoly::{Monomial, MultiPoly};
use crate::num::Scalar;
use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("truncation cap {0} reached without stabilization")]
    NotStabilized(u32),
    #[error("generator does not vanish at the origin")]
    NotVanishing,
}

fn monomials_up_to(nvars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = vec![];
    let mut cur: SmallVec<[u16; 4]> = SmallVec::from_elem(0, nvars);
    fn rec(out: &mut Vec<Monomial>, cur: &mut SmallVec<[u16; 4]>, pos: usize, left: u32) {
        if pos == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u16;
            rec(out, cur, pos + 1, left - e);
        }
        cur[pos] = 0;
    }
    rec(&mut out, &mut cur, 0, bound);
    out
}

/// Dimension of the local algebra at the origin cut out by `gens`.
pub fn local_algebra_dimension<K: Scalar>(
    gens: &[MultiPoly<K>],
    cap: u32,
) -> Result<usize, LocalError> {
    let gens: Vec<_> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Err(LocalError::NotStabilized(cap));
    }
    let nvars = gens[0].vars.len();
    for g in &gens {
        if !g.coeff(&Monomial::unit(nvars)).is_zero() {
            return Err(LocalError::NotVanishing);
        }
    }
    let mut prev: Option<usize> = None;
    for bound in 1..=cap {
        let monos = monomials_up_to(nvars, bound);
        let index: std::collections::HashMap<&Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let multipliers = monomials_up_to(nvars, bound.saturating_sub(1));
        let mut rows: Vec<Vec<K>> = vec![];
        for g in &gens {
            for mult in &multipliers {
                let mut row = vec![K::zero(); monos.len()];
                let mut nonzero = false;
                for (m, c) in g.terms() {
                    let prod = m.mul(mult);
                    if prod.degree() <= bound {
                        row[index[&prod]] = c.clone();
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        let rank = rank_scalar(&mut rows);
        let dim = monos.len() - rank;
        if prev == Some(dim) {
            return Ok(dim);
        }
        prev = Some(dim);
    }
    Err(LocalError::NotStabilized(cap))
}

pub const DEFAULT_LOCAL_CAP: u32 = 16;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{poly_q, VarSet};

    fn vs2() -> VarSet {
        VarSet::new(vec!["u", "v"])
    }

    #[test]
    fn maximal_ideal_has_dimension_one() {
        let vs = vs2();
        let gens = vec![poly_q(&vs, &[(1, &[1, 0])]), poly_q(&vs, &[(1, &[0, 1])])];
        assert_eq!(local_algebra_dimension(&gens, 16), Ok(1));
    }

    #[test]
    fn monomial_ideal_dimension() {
        let vs = vs2();
        let gens = vec![poly_q(&vs, &[(1, &[2, 0])]), poly_q(&vs, &[(1, &[0, 1])])];
        assert_eq!(local_algebra_dimension(&gens, 16), Ok(2));
    }

    #[test]
    fn cusp_milnor_number() {
        // Jacobian ideal of u^3 - v^2: (3u^2, -2v), dimension 2
        let vs = vs2();
        let gens = vec![poly_q(&vs, &[(3, &[2, 0])]), poly_q(&vs, &[(-2, &[0, 1])])];
        assert_eq!(local_algebra_dimension(&gens, 16), Ok(2));
    }

    #[test]
    fn non_isolated_does_not_stabilize() {
        let vs = vs2();
        let gens = vec![poly_q(&vs, &[(1, &[1, 0])])];
        assert_eq!(
            local_algebra_dimension(&gens, 8),
            Err(LocalError::NotStabilized(8))
        );
    }

    #[test]
    fn dimension_nonincreasing_with_more_generators() {
        let vs = vs2();
        let base = vec![poly_q(&vs, &[(1, &[2, 0])]), poly_q(&vs, &[(1, &[0, 2])])];
        let d1 = local_algebra_dimension(&base, 16).unwrap();
        let mut more = base.clone();
        more.push(poly_q(&vs, &[(1, &[1, 1])]));
        let d2 = local_algebra_dimension(&more, 16).unwrap();
        assert!(d2 <= d1);
    }
}
