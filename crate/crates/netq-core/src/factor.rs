//! Multivariate gcds, squarefree decomposition, and univariate factorization
//! over Q for squarefree parts of degree at most four.

use crate::multipoly::{MultiPoly, PolyQ};
use crate::num::{rat, squarefree_part, Rat, Scalar};
use crate::unipoly::UniQ;
use num_traits::Signed;
use thiserror::Error;

/// Pseudo-remainder of f by g with respect to `var` (g of positive degree).
fn pseudo_rem<K: Scalar>(f: &MultiPoly<K>, g: &MultiPoly<K>, var: usize) -> MultiPoly<K> {
    let n = g.degree_in(var);
    debug_assert!(n > 0);
    let gc = g.coeffs_in_var(var);
    let glc = &gc[n as usize];
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(var) >= n {
        let d = r.degree_in(var);
        let rc = r.coeffs_in_var(var);
        let rlc = &rc[d as usize];
        // r <- glc*r - rlc*x^(d-n)*g
        let shift = MultiPoly::from_term(
            &f.vars,
            crate::multipoly::Monomial::var(f.vars.len(), var, d - n),
            K::one(),
        );
        r = r.mul(glc).sub(&g.mul(rlc).mul(&shift));
    }
    r
}

/// Content of f with respect to `var`: gcd of its coefficient polynomials.
fn content_in_var<K: Scalar>(f: &MultiPoly<K>, var: usize) -> MultiPoly<K> {
    let mut c = MultiPoly::zero(&f.vars);
    for coeff in f.coeffs_in_var(var) {
        if coeff.is_zero() {
            continue;
        }
        c = gcd_inner(&c, &coeff);
        if c.total_degree() == 0 && !c.is_zero() {
            break;
        }
    }
    c
}

fn gcd_inner<K: Scalar>(f: &MultiPoly<K>, g: &MultiPoly<K>) -> MultiPoly<K> {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    // main variable: highest index occurring in either
    let nvars = f.vars.len();
    let var = (0..nvars)
        .rev()
        .find(|&v| f.degree_in(v) > 0 || g.degree_in(v) > 0);
    let Some(var) = var else {
        return MultiPoly::one(&f.vars); // both constants
    };
    if f.degree_in(var) == 0 {
        // f is "constant" in the main variable: gcd(f, content(g))
        return gcd_inner(f, &content_in_var(g, var)).monic();
    }
    if g.degree_in(var) == 0 {
        return gcd_inner(&content_in_var(f, var), g).monic();
    }
    let cf = content_in_var(f, var);
    let cg = content_in_var(g, var);
    let cont = gcd_inner(&cf, &cg);
    let mut a = f.exact_div(&cf).expect("content divides");
    let mut b = g.exact_div(&cg).expect("content divides");
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, var);
        if r.is_zero() {
            let cb = content_in_var(&b, var);
            let pp = b.exact_div(&cb).expect("content divides");
            return cont.mul(&pp).monic();
        }
        if r.degree_in(var) == 0 {
            return cont.monic();
        }
        let cr = content_in_var(&r, var);
        a = b;
        b = r.exact_div(&cr).expect("content divides");
    }
}

/// Greatest common divisor, primitive with normalized leading coefficient.
/// Over Q the result has integer-primitive coefficients and positive leading
/// coefficient; over other fields it is monic.
pub fn gcd_multivar<K: Scalar>(f: &MultiPoly<K>, g: &MultiPoly<K>) -> MultiPoly<K> {
    gcd_inner(f, g)
}

/// Q-specific normalization of the generic gcd.
pub fn gcd_multivar_q(f: &PolyQ, g: &PolyQ) -> PolyQ {
    let h = gcd_inner(f, g);
    if h.is_zero() {
        h
    } else {
        h.primitive()
    }
}

/// Gcd of a polynomial with all its partial derivatives.
fn gcd_with_partials<K: Scalar>(f: &MultiPoly<K>) -> MultiPoly<K> {
    let mut g = MultiPoly::zero(&f.vars);
    for v in 0..f.vars.len() {
        let d = f.derivative(v);
        if d.is_zero() {
            continue;
        }
        g = if g.is_zero() { d } else { gcd_inner(&g, &d) };
        if g.total_degree() == 0 && !g.is_zero() {
            break;
        }
    }
    if g.is_zero() {
        // f is constant
        return MultiPoly::one(&f.vars);
    }
    gcd_inner(f, &g)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FactorError {
    #[error("squarefree decomposition of the zero polynomial")]
    ZeroInput,
    #[error("irreducible factorization unsupported for squarefree part of degree {0}")]
    Unsupported(usize),
}

/// Squarefree decomposition: pairwise-coprime squarefree factors with
/// multiplicities whose weighted product reconstructs the input up to a
/// constant. Char-0 Musser algorithm driven by the multivariate gcd.
pub fn squarefree_decomposition<K: Scalar>(
    f: &MultiPoly<K>,
) -> Result<Vec<(MultiPoly<K>, u32)>, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    if f.total_degree() == 0 {
        return Ok(vec![]);
    }
    let mut out = vec![];
    let mut g = gcd_with_partials(f);
    let mut w = f.exact_div(&g).expect("gcd divides");
    let mut i = 1u32;
    while w.total_degree() > 0 {
        let y = gcd_inner(&w, &g);
        let a = w.exact_div(&y).expect("gcd divides");
        if a.total_degree() > 0 {
            out.push((a.monic(), i));
        }
        g = g.exact_div(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    Ok(out)
}

/// True iff the polynomial has no repeated factor.
pub fn is_squarefree<K: Scalar>(f: &MultiPoly<K>) -> bool {
    if f.is_zero() {
        return false;
    }
    gcd_with_partials(f).total_degree() == 0
}

fn is_rational_square(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if Scalar::is_zero(r) {
        return Some(rat(0));
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Compose with x -> x + shift.
fn shift_poly(f: &UniQ, shift: &Rat) -> UniQ {
    let lin = UniQ::new(vec![shift.clone(), rat(1)]);
    let mut acc = UniQ::zero();
    for c in f.coeffs.iter().rev() {
        acc = acc.mul(&lin).add(&UniQ::constant(c.clone()));
    }
    acc
}

/// Factor a squarefree monic polynomial of degree <= 4 into monic irreducible
/// factors over Q.
fn factor_squarefree_monic(f: &UniQ) -> Result<Vec<UniQ>, FactorError> {
    let deg = f.degree();
    if deg == 0 {
        return Ok(vec![]);
    }
    if deg > 4 {
        return Err(FactorError::Unsupported(deg));
    }
    // strip rational roots
    let mut rest = f.clone();
    let mut out = vec![];
    for (root, mult) in f.rational_roots() {
        debug_assert_eq!(mult, 1, "input must be squarefree");
        let lin = UniQ::new(vec![-root, rat(1)]);
        rest = rest.exact_div(&lin).unwrap();
        out.push(lin);
    }
    match rest.degree() {
        0 => return Ok(out),
        1 => unreachable!("degree-1 remainder would be a rational root"),
        2 | 3 => {
            // no rational roots, so irreducible over Q
            out.push(rest);
            return Ok(out);
        }
        4 => {}
        d => return Err(FactorError::Unsupported(d)),
    }
    // quartic with no rational roots: look for a monic quadratic splitting of
    // the depressed form x^4 + p x^2 + q x + r
    let a3 = rest.coeff(3);
    let shift = &a3 / rat(4);
    let dep = shift_poly(&rest, &(-shift.clone()));
    debug_assert!(Scalar::is_zero(&dep.coeff(3)));
    let p = dep.coeff(2);
    let q = dep.coeff(1);
    let r = dep.coeff(0);
    // resolvent cubic y^3 + 2p y^2 + (p^2 - 4r) y - q^2, y = u^2
    let resolvent = UniQ::new(vec![
        -(&q * &q),
        &p * &p - rat(4) * &r,
        rat(2) * &p,
        rat(1),
    ]);
    let mut split: Option<(UniQ, UniQ)> = None;
    for (yroot, _) in resolvent.rational_roots() {
        let Some(u) = is_rational_square(&yroot) else { continue };
        if Scalar::is_zero(&u) {
            // x^4 + p x^2 + r = (x^2 + v)(x^2 + w)
            if !Scalar::is_zero(&q) {
                continue;
            }
            let disc = &p * &p - rat(4) * &r;
            let Some(s) = is_rational_square(&disc) else { continue };
            let v = (&p + &s) / rat(2);
            let wq = (&p - &s) / rat(2);
            split = Some((
                UniQ::new(vec![v, rat(0), rat(1)]),
                UniQ::new(vec![wq, rat(0), rat(1)]),
            ));
            break;
        }
        // (x^2 + u x + v)(x^2 - u x + w), w - v = q/u, w + v = p + u^2
        let qu = &q / &u;
        let v = (&p + &u * &u - &qu) / rat(2);
        let wq = (&p + &u * &u + &qu) / rat(2);
        if &v * &wq == r {
            split = Some((
                UniQ::new(vec![v, u.clone(), rat(1)]),
                UniQ::new(vec![wq, -u, rat(1)]),
            ));
            break;
        }
    }
    match split {
        None => {
            out.push(rest); // irreducible quartic
            Ok(out)
        }
        Some((f1, f2)) => {
            for fac in [f1, f2] {
                // undo the depressing shift
                let fac = shift_poly(&fac, &(-shift.clone()));
                debug_assert!(fac.rational_roots().is_empty());
                out.push(fac);
            }
            Ok(out)
        }
    }
}

/// Irreducible factorization over Q of any polynomial whose squarefree parts
/// have degree at most four. Returns the scalar unit and primitive
/// irreducible factors with multiplicities.
pub fn factor_univariate(f: &UniQ) -> Result<(Rat, Vec<(UniQ, u32)>), FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    let mut unit = f.lc();
    let monic = f.monic();
    // univariate squarefree split via gcd(f, f')
    let mut parts: Vec<(UniQ, u32)> = vec![];
    let mut g = monic.gcd(&monic.derivative());
    let mut w = monic.exact_div(&g).unwrap();
    let mut i = 1u32;
    while w.degree() > 0 {
        let y = w.gcd(&g);
        let a = w.exact_div(&y).unwrap();
        if a.degree() > 0 {
            parts.push((a, i));
        }
        g = g.exact_div(&y).unwrap();
        w = y;
        i += 1;
    }
    let mut out: Vec<(UniQ, u32)> = vec![];
    for (part, mult) in parts {
        for fac in factor_squarefree_monic(&part)? {
            let (c, prim) = fac.rat_content();
            for _ in 0..mult {
                unit *= &c;
            }
            out.push((prim, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| format!("{:?}", a.0.coeffs).cmp(&format!("{:?}", b.0.coeffs)))
    });
    Ok((unit, out))
}

/// Roots of an irreducible rational quadratic in the quadratic field they
/// generate: returns (d, s, base) with roots base ± s·√d.
pub fn quadratic_roots_data(f: &UniQ) -> Option<(i64, Rat, Rat)> {
    if f.degree() != 2 {
        return None;
    }
    let a = f.coeff(2);
    let b = f.coeff(1);
    let c = f.coeff(0);
    let disc = &b * &b - rat(4) * &a * &c;
    if Scalar::is_zero(&disc) {
        return None; // repeated rational root, not a field extension
    }
    let d_big = squarefree_part(&(disc.numer() * disc.denom()));
    let d: i64 = match i64::try_from(&d_big) {
        Ok(v) => v,
        Err(_) => return None,
    };
    // disc = s^2 * d
    let s2 = &disc / rat(d);
    let s = is_rational_square(&s2)?;
    let base = -&b / (rat(2) * &a);
    let scale = &s / (rat(2) * &a);
    Some((d, scale, base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{poly_q, vars_xyz};

    fn up(cs: &[i64]) -> UniQ {
        UniQ::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn gcd_monomials() {
        let vs = vars_xyz();
        let f = poly_q(&vs, &[(1, &[2, 1, 0])]); // x^2 y
        let g = poly_q(&vs, &[(1, &[1, 2, 0])]); // x y^2
        let h = gcd_multivar_q(&f, &g);
        assert_eq!(h, poly_q(&vs, &[(1, &[1, 1, 0])]));
    }

    #[test]
    fn gcd_with_derivative_of_square() {
        let vs = vars_xyz();
        // F = (xy - z^2)^2, dF/dx = 2(xy - z^2) y
        let base = poly_q(&vs, &[(1, &[1, 1, 0]), (-1, &[0, 0, 2])]);
        let f = base.mul(&base);
        let fx = f.derivative(0);
        let g = gcd_multivar_q(&f, &fx);
        assert_eq!(g, base);
    }

    #[test]
    fn gcd_zero_identity() {
        let vs = vars_xyz();
        let f = poly_q(&vs, &[(2, &[1, 0, 0]), (4, &[0, 1, 0])]);
        let z = PolyQ::zero(&vs);
        let g = gcd_multivar_q(&f, &z);
        assert_eq!(g, poly_q(&vs, &[(1, &[1, 0, 0]), (2, &[0, 1, 0])]));
    }

    #[test]
    fn squarefree_examples() {
        let vs = vars_xyz();
        // x^2 y -> [(x,2),(y,1)]
        let f = poly_q(&vs, &[(1, &[2, 1, 0])]);
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.contains(&(poly_q(&vs, &[(1, &[1, 0, 0])]), 2)));
        assert!(d.contains(&(poly_q(&vs, &[(1, &[0, 1, 0])]), 1)));
        // (xy - z^2)^2 -> [(xy - z^2, 2)]
        let base = poly_q(&vs, &[(1, &[1, 1, 0]), (-1, &[0, 0, 2])]);
        let d = squarefree_decomposition(&base.mul(&base)).unwrap();
        assert_eq!(d, vec![(base.clone(), 2)]);
        // squarefree input -> [(f, 1)]
        let d = squarefree_decomposition(&base).unwrap();
        assert_eq!(d, vec![(base.clone(), 1)]);
        assert!(is_squarefree(&base));
        assert!(!is_squarefree(&base.mul(&base)));
    }

    #[test]
    fn factor_cubic_with_multiplicity() {
        // t^3 (t+1)
        let f = up(&[0, 0, 0, 1, 1]);
        let (unit, factors) = factor_univariate(&f).unwrap();
        assert_eq!(unit, rat(1));
        assert!(factors.contains(&(up(&[0, 1]), 3)));
        assert!(factors.contains(&(up(&[1, 1]), 1)));
    }

    #[test]
    fn factor_quartic_irreducible() {
        // t^4 + 1 is irreducible over Q
        let f = up(&[1, 0, 0, 0, 1]);
        let (_, factors) = factor_univariate(&f).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0], (f.clone(), 1));
    }

    #[test]
    fn factor_quartic_into_quadratics() {
        // (t^2 + 1)(t^2 + 2) has no rational roots
        let f = up(&[1, 0, 1]).mul(&up(&[2, 0, 1]));
        let (_, factors) = factor_univariate(&f).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.contains(&(up(&[1, 0, 1]), 1)));
        assert!(factors.contains(&(up(&[2, 0, 1]), 1)));
        // (t^2 + t + 1)(t^2 - t + 3)
        let f = up(&[1, 1, 1]).mul(&up(&[3, -1, 1]));
        let (_, factors) = factor_univariate(&f).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.contains(&(up(&[1, 1, 1]), 1)));
        assert!(factors.contains(&(up(&[3, -1, 1]), 1)));
    }

    #[test]
    fn factor_quadratic_stays_irreducible() {
        // t^2 - 2: irreducible over Q, splits in Q(sqrt 2)
        let f = up(&[-2, 0, 1]);
        let (_, factors) = factor_univariate(&f).unwrap();
        assert_eq!(factors, vec![(f.clone(), 1)]);
        let (d, s, base) = quadratic_roots_data(&f).unwrap();
        assert_eq!(d, 2);
        assert_eq!(s, rat(1));
        assert!(Scalar::is_zero(&base));
    }

    #[test]
    fn factor_rejects_large_squarefree_part() {
        // squarefree of degree 5
        let f = up(&[6, -5, 1]).mul(&up(&[1, 0, 0, 1]));
        assert_eq!(factor_univariate(&f), Err(FactorError::Unsupported(5)));
    }

    #[test]
    fn factor_reconstructs_input() {
        let f = up(&[6, -5, 1]).mul(&up(&[1, 1]).pow(2)).scale(&rat(3));
        let (unit, factors) = factor_univariate(&f).unwrap();
        let mut prod = UniQ::constant(unit);
        for (fac, m) in &factors {
            prod = prod.mul(&fac.pow(*m));
        }
        assert_eq!(prod, f);
    }
}
