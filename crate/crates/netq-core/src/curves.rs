//! Plane curves: singular-point location over Q and Q(√d), ADE
//! classification, and the GIT stability verdict for plane quartics.

use crate::factor::{factor_univariate, gcd_multivar_q, is_squarefree, quadratic_roots_data,
                    squarefree_decomposition, FactorError};
use crate::linalg::resultant;
use crate::local::{local_algebra_dimension, LocalError, DEFAULT_LOCAL_CAP};
use crate::multipoly::{MultiPoly, Monomial, PolyQ, VarSet};
use crate::num::{rat, QuadExt, Rat, Scalar};
use crate::unipoly::{UniPoly, UniQ};
use serde::Serialize;
use smallvec::SmallVec;
use thiserror::Error;

/// Homogeneous polynomial in three variables.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryForm {
    poly: PolyQ,
}

impl TernaryForm {
    pub fn new(poly: PolyQ) -> Result<Self, CurveError> {
        if poly.vars.len() != 3 {
            return Err(CurveError::WrongAmbient);
        }
        if !poly.is_homogeneous() {
            return Err(CurveError::NonHomogeneous);
        }
        Ok(TernaryForm { poly })
    }

    pub fn poly(&self) -> &PolyQ {
        &self.poly
    }

    pub fn vars(&self) -> &VarSet {
        &self.poly.vars
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// Point of the projective plane with coordinates in Q(√d) (or Q when the
/// irrational parts vanish). Scaled so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanePoint {
    pub coords: [QuadExt; 3],
}

impl PlanePoint {
    pub fn new(mut coords: [QuadExt; 3]) -> Self {
        let pivot = coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("point must have a nonzero coordinate");
        let inv = coords[pivot].inv();
        for c in coords.iter_mut() {
            *c = c.mul(&inv);
        }
        PlanePoint { coords }
    }

    pub fn from_rat(coords: [Rat; 3]) -> Self {
        Self::new(coords.map(|c| QuadExt::from_rat(&c)))
    }

    pub fn from_ints(coords: [i64; 3]) -> Self {
        Self::from_rat(coords.map(rat))
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.to_rat().is_some())
    }

    fn pivot(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).unwrap()
    }
}

impl std::fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({} : {} : {})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NonAdeReason {
    MultiplicityAtLeast4,
    TripleLineBadMilnor,
    NotIsolated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SingularityType {
    A(u32),
    D(u32),
    E(u32),
    NonAde(NonAdeReason),
}

impl std::fmt::Display for SingularityType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularityType::A(n) => write!(f, "A{n}"),
            SingularityType::D(n) => write!(f, "D{n}"),
            SingularityType::E(n) => write!(f, "E{n}"),
            SingularityType::NonAde(r) => write!(f, "non-ADE ({r:?})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityRecord {
    pub point: PlanePoint,
    pub multiplicity: u32,
    pub milnor: Option<usize>,
    pub kind: SingularityType,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Stability::Stable => write!(f, "stable"),
            Stability::StrictlySemistable => write!(f, "strictly semistable"),
            Stability::Unstable => write!(f, "unstable"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuarticVerdict {
    pub status: Stability,
    pub reasons: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("polynomial is not in a three-variable ring")]
    WrongAmbient,
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("expected a quartic (or zero), found degree {0}")]
    WrongDegree(u32),
    #[error("local computation did not stabilize: {0}")]
    Local(#[from] LocalError),
    #[error("singular point is not isolated")]
    NotIsolated,
    #[error("singular points over unsupported extensions remain unclassified: {0:?}")]
    UnclassifiedExtensionPoint(Vec<String>),
    #[error("inflectional-tangent test undecidable: {0}")]
    Undecidable(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// Result of the singular-locus search.
#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub points: Vec<PlanePoint>,
    /// Irreducible elimination factors of degree > 2: minimal polynomials of
    /// possible singular points over unsupported extensions.
    pub residual: Vec<String>,
    pub non_isolated: bool,
}

fn lift(p: &PolyQ) -> MultiPoly<QuadExt> {
    p.map_coeffs(QuadExt::from_rat)
}

/// Dehomogenize at a point: chart coordinates (u, v) centered at p, using the
/// first nonzero coordinate of p as the chart.
fn localize(f: &PolyQ, p: &PlanePoint) -> MultiPoly<QuadExt> {
    let uv = VarSet::new(vec!["u", "v"]);
    let fe = lift(f);
    let pivot = p.pivot();
    let mut images = Vec::with_capacity(3);
    let mut chart_idx = 0;
    for i in 0..3 {
        if i == pivot {
            images.push(MultiPoly::constant(&uv, QuadExt::one()));
        } else {
            let var = MultiPoly::variable(&uv, chart_idx);
            let center = MultiPoly::constant(&uv, p.coords[i].clone());
            images.push(var.add(&center));
            chart_idx += 1;
        }
    }
    fe.substitute(&images)
}

fn lowest_degree_part<K: Scalar>(f: &MultiPoly<K>) -> (u32, MultiPoly<K>) {
    let d = f.terms().map(|(m, _)| m.degree()).min().unwrap_or(0);
    let mut part = MultiPoly::zero(&f.vars);
    for (m, c) in f.terms() {
        if m.degree() == d {
            part.add_term(m.clone(), c.clone());
        }
    }
    (d, part)
}

/// Multiplicity of F at p: the order of vanishing of the localized form.
pub fn multiplicity_at(f: &TernaryForm, p: &PlanePoint) -> u32 {
    let loc = localize(&f.poly, p);
    if loc.is_zero() {
        return u32::MAX; // component through p collapsed; cannot happen for nonzero F
    }
    lowest_degree_part(&loc).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConeShape {
    DistinctLines,
    DoublePlusSimple,
    TripleLine,
    Other,
}

/// Tangent cone at a singular point: the lowest-degree part of the localized
/// form and its factorization shape over the algebraic closure, read off from
/// gcd structure without extracting roots.
pub fn tangent_cone(f: &TernaryForm, p: &PlanePoint) -> (MultiPoly<QuadExt>, ConeShape) {
    let loc = localize(&f.poly, p);
    let (m, cone) = lowest_degree_part(&loc);
    let shape = match m {
        2 => {
            // binary quadratic: double line iff the discriminant vanishes
            let a = cone.coeff(&mono2(2, 0));
            let b = cone.coeff(&mono2(1, 1));
            let c = cone.coeff(&mono2(0, 2));
            let disc = b.mul(&b).sub(&rat4().mul(&a).mul(&c));
            if disc.is_zero() {
                ConeShape::TripleLine // repeated;名 used only for m = 3
            } else {
                ConeShape::DistinctLines
            }
        }
        3 => {
            let du = cone.derivative(0);
            let dv = cone.derivative(1);
            let g = crate::factor::gcd_multivar(&cone, &if du.is_zero() { dv.clone() } else if dv.is_zero() { du.clone() } else { crate::factor::gcd_multivar(&du, &dv) });
            match g.total_degree() {
                0 => ConeShape::DistinctLines,
                1 => ConeShape::DoublePlusSimple,
                _ => ConeShape::TripleLine,
            }
        }
        _ => ConeShape::Other,
    };
    (cone, shape)
}

fn mono2(a: u16, b: u16) -> Monomial {
    Monomial(SmallVec::from_slice(&[a, b]))
}

fn rat4() -> QuadExt {
    QuadExt::from_rat(&rat(4))
}

/// Milnor number at an isolated singular point: the dimension of the local
/// Jacobian quotient.
pub fn milnor_number(f: &TernaryForm, p: &PlanePoint) -> Result<usize, CurveError> {
    let loc = localize(&f.poly, p);
    let fu = loc.derivative(0);
    let fv = loc.derivative(1);
    // a shared factor through the origin means a non-isolated singularity
    let g = crate::factor::gcd_multivar(&fu, &fv);
    if g.total_degree() > 0 && g.coeff(&Monomial::unit(2)).is_zero() {
        return Err(CurveError::NotIsolated);
    }
    Ok(local_algebra_dimension(&[fu, fv], DEFAULT_LOCAL_CAP)?)
}

/// ADE classification of an isolated plane-curve singularity:
/// multiplicity 2 gives A(μ); multiplicity 3 gives D(μ) unless the tangent
/// cone is a triple line, which gives E(μ) for μ in {6,7,8}; multiplicity 4
/// or more is never ADE.
pub fn classify_singularity(f: &TernaryForm, p: &PlanePoint) -> Result<SingularityRecord, CurveError> {
    let m = multiplicity_at(f, p);
    debug_assert!(m >= 2, "point must be singular");
    if m >= 4 {
        return Ok(SingularityRecord {
            point: p.clone(),
            multiplicity: m,
            milnor: None,
            kind: SingularityType::NonAde(NonAdeReason::MultiplicityAtLeast4),
        });
    }
    let mu = match milnor_number(f, p) {
        Ok(mu) => mu,
        Err(CurveError::NotIsolated) => {
            return Ok(SingularityRecord {
                point: p.clone(),
                multiplicity: m,
                milnor: None,
                kind: SingularityType::NonAde(NonAdeReason::NotIsolated),
            })
        }
        Err(e) => return Err(e),
    };
    let kind = if m == 2 {
        SingularityType::A(mu as u32)
    } else {
        let (_, shape) = tangent_cone(f, p);
        match shape {
            ConeShape::DistinctLines | ConeShape::DoublePlusSimple => SingularityType::D(mu as u32),
            ConeShape::TripleLine => {
                if (6..=8).contains(&mu) {
                    SingularityType::E(mu as u32)
                } else {
                    SingularityType::NonAde(NonAdeReason::TripleLineBadMilnor)
                }
            }
            ConeShape::Other => SingularityType::NonAde(NonAdeReason::MultiplicityAtLeast4),
        }
    };
    Ok(SingularityRecord { point: p.clone(), multiplicity: m, milnor: Some(mu), kind })
}

/// All singular points of F with coordinates in Q or a quadratic field,
/// found by resultant elimination of the gradient, plus residual certificates
/// for elimination factors that would need deeper extensions.
pub fn singular_points(f: &TernaryForm) -> SingularLocus {
    assert!(!f.is_zero(), "singular locus of the zero form");
    if !is_squarefree(&f.poly) {
        return SingularLocus { points: vec![], residual: vec![], non_isolated: true };
    }
    let vars = f.vars().clone();
    let partials: Vec<PolyQ> = (0..3).map(|v| f.poly.derivative(v)).collect();
    let mut points: Vec<PlanePoint> = vec![];
    let mut residual: Vec<String> = vec![];

    // explicit check of the coordinate point missed by the projection
    let e2 = PlanePoint::from_ints([0, 0, 1]);
    if is_singular_at(&partials, &e2) {
        points.push(e2);
    }

    // eliminate the last variable from pairs of partials
    let mut elim = PolyQ::zero(&vars);
    let mut any_defined = false;
    for i in 0..3 {
        for j in i + 1..3 {
            match resultant(&partials[i], &partials[j], 2) {
                Ok(r) => {
                    any_defined = true;
                    if !r.is_zero() {
                        elim = if elim.is_zero() { r } else { gcd_multivar_q(&elim, &r) };
                    }
                }
                Err(_) => {}
            }
        }
    }
    if !any_defined {
        // every partial is free of the last variable: the only possible
        // singular point off the projection line is e2, already checked, and
        // a common binary root would contradict squarefreeness
        let g = gcd_multivar_q(&partials[0], &partials[1]);
        if g.total_degree() > 0 {
            residual.push(format!("{g}"));
        }
        return SingularLocus { points, residual, non_isolated: false };
    }
    if elim.is_zero() {
        // all defined resultants vanished identically; fall back to combined
        // generators to separate shared factors
        for t in 1..=3i64 {
            let comb = partials[1].add(&partials[2].scale(&rat(t)));
            if let Ok(r) = resultant(&partials[0], &comb, 2) {
                if !r.is_zero() {
                    elim = r;
                    break;
                }
            }
        }
    }
    if elim.is_zero() {
        residual.push("elimination degenerate: all resultants vanish".to_string());
        return SingularLocus { points, residual, non_isolated: false };
    }

    // factor the binary form elim(v0, v1)
    for (dir, min_poly) in binary_form_directions(&elim, &mut residual) {
        collect_fiber_points(&partials, &dir, min_poly.as_ref(), &mut points, &mut residual);
    }
    dedup_points(&mut points);
    SingularLocus { points, residual, non_isolated: false }
}

fn is_singular_at(partials: &[PolyQ], p: &PlanePoint) -> bool {
    partials
        .iter()
        .all(|g| lift(g).eval(&p.coords).is_zero())
}

fn dedup_points(points: &mut Vec<PlanePoint>) {
    let mut seen: Vec<PlanePoint> = vec![];
    points.retain(|p| {
        if seen.contains(p) {
            false
        } else {
            seen.push(p.clone());
            true
        }
    });
}

/// Projective roots (v0 : v1) of a nonzero binary form in the first two
/// variables, over Q and quadratic extensions. Returns direction points
/// (a : b : *) as pairs; degree > 2 irreducible factors go to `residual`.
/// Each direction carries the discriminant context d when quadratic.
fn binary_form_directions(
    elim: &PolyQ,
    residual: &mut Vec<String>,
) -> Vec<((QuadExt, QuadExt), Option<UniQ>)> {
    let mut out = vec![];
    // root at infinity: (1 : 0), present when v1 divides the form
    let v1_val = elim
        .coeffs_in_var(1)
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(0);
    if v1_val > 0 {
        out.push((
            (QuadExt::one(), QuadExt::from_rat(&rat(0))),
            None,
        ));
    }
    // dehomogenize: u = v0 / v1
    let uni = binary_to_unipoly(elim, 0, 1);
    if uni.degree() == 0 {
        return out;
    }
    match factor_univariate(&uni) {
        Ok((_, factors)) => {
            for (fac, _) in factors {
                match fac.degree() {
                    1 => {
                        let root = -&fac.coeff(0) / &fac.coeff(1);
                        out.push(((QuadExt::from_rat(&root), QuadExt::one()), None));
                    }
                    2 => match quadratic_roots_data(&fac) {
                        Some((d, s, base)) => {
                            for sign in [1i64, -1] {
                                let root = QuadExt::new(
                                    base.clone(),
                                    &s * rat(sign),
                                    d,
                                );
                                out.push(((root, QuadExt::one()), Some(fac.clone())));
                            }
                        }
                        None => residual.push(format!("{fac}")),
                    },
                    _ => residual.push(format!("{fac}")),
                }
            }
        }
        Err(FactorError::Unsupported(d)) => {
            residual.push(format!("unfactored elimination part of degree {d}"));
            // still extract the rational roots
            for (root, _) in uni.rational_roots() {
                out.push(((QuadExt::from_rat(&root), QuadExt::one()), None));
            }
        }
        Err(_) => {}
    }
    out
}

/// View a polynomial supported on two variables as univariate in v_a/v_b.
fn binary_to_unipoly(f: &PolyQ, a: usize, b: usize) -> UniQ {
    let d = f.total_degree();
    let mut coeffs = vec![rat(0); d as usize + 1];
    for (m, c) in f.terms() {
        let ea = m.0[a] as usize;
        debug_assert_eq!(ea as u32 + m.0[b] as u32, m.degree());
        coeffs[ea] = c.clone();
    }
    UniQ::new(coeffs)
}

/// Given a direction (a : b) in the first two coordinates, find the fiber
/// values of the last coordinate on which all partials vanish.
fn collect_fiber_points(
    partials: &[PolyQ],
    dir: &(QuadExt, QuadExt),
    _min_poly: Option<&UniQ>,
    points: &mut Vec<PlanePoint>,
    residual: &mut Vec<String>,
) {
    // specialize each partial to (a, b, t)
    let mut fiber: Vec<UniPoly<QuadExt>> = vec![];
    for g in partials {
        let ge = lift(g);
        let d = ge.degree_in(2) as usize;
        let mut coeffs = vec![QuadExt::zero(); d + 1];
        for (m, c) in ge.terms() {
            let mut t = c.clone();
            for _ in 0..m.0[0] {
                t = t.mul(&dir.0);
            }
            for _ in 0..m.0[1] {
                t = t.mul(&dir.1);
            }
            let e = m.0[2] as usize;
            coeffs[e] = coeffs[e].add(&t);
        }
        fiber.push(UniPoly::new(coeffs));
    }
    let mut g = UniPoly::<QuadExt>::zero();
    for h in &fiber {
        if h.is_zero() {
            continue;
        }
        g = if g.is_zero() { h.clone() } else { g.gcd(h) };
    }
    if g.is_zero() {
        // entire fiber line is singular; squarefree inputs never reach this
        residual.push("positive-dimensional fiber".to_string());
        return;
    }
    if g.degree() == 0 {
        return; // no common root over this direction
    }
    // roots of g in the direction's field
    for root in quadext_roots(&g, residual) {
        let p = PlanePoint::new([dir.0.clone(), dir.1.clone(), root]);
        let verified = partials.iter().all(|h| lift(h).eval(&p.coords).is_zero());
        if verified {
            points.push(p);
        }
    }
}

/// Roots of a univariate polynomial over Q(√d) that lie in Q(√d) itself.
/// Works through the rational norm polynomial; factors needing deeper
/// extensions are reported as residuals.
fn quadext_roots(g: &UniPoly<QuadExt>, residual: &mut Vec<String>) -> Vec<QuadExt> {
    // rational polynomial case: direct factorization
    let all_rat: Option<Vec<Rat>> = g.coeffs.iter().map(|c| c.to_rat()).collect();
    let d_ctx = g
        .coeffs
        .iter()
        .find(|c| c.to_rat().is_none())
        .map(|c| c.d);
    let mut out = vec![];
    if let Some(coeffs) = all_rat {
        let gq = UniQ::new(coeffs);
        match factor_univariate(&gq) {
            Ok((_, factors)) => {
                for (fac, _) in factors {
                    match fac.degree() {
                        1 => out.push(QuadExt::from_rat(&(-&fac.coeff(0) / &fac.coeff(1)))),
                        2 => {
                            if let Some((d, s, base)) = quadratic_roots_data(&fac) {
                                for sign in [1i64, -1] {
                                    out.push(QuadExt::new(base.clone(), &s * rat(sign), d));
                                }
                            } else {
                                residual.push(format!("{fac}"));
                            }
                        }
                        _ => residual.push(format!("{fac}")),
                    }
                }
            }
            Err(_) => {
                for (r, _) in gq.rational_roots() {
                    out.push(QuadExt::from_rat(&r));
                }
                residual.push(format!("unfactored fiber polynomial of degree {}", gq.degree()));
            }
        }
        return out;
    }
    // genuine Q(√d) coefficients: use the norm N(g) = g · conj(g) over Q
    let d = d_ctx.unwrap();
    let conj = g.map_coeffs(|c| c.conj());
    let norm = g.mul(&conj).map_coeffs(|c| c.to_rat().expect("norm is rational"));
    match factor_univariate(&norm) {
        Ok((_, factors)) => {
            for (fac, _) in factors {
                let mut candidates: Vec<QuadExt> = vec![];
                match fac.degree() {
                    1 => candidates.push(QuadExt::from_rat(&(-&fac.coeff(0) / &fac.coeff(1)))),
                    2 => {
                        if let Some((fd, s, base)) = quadratic_roots_data(&fac) {
                            if fd == d {
                                for sign in [1i64, -1] {
                                    candidates.push(QuadExt::new(base.clone(), &s * rat(sign), fd));
                                }
                            }
                            // roots in a different quadratic field cannot be
                            // roots of g itself unless rational; skip quietly
                        } else {
                            residual.push(format!("{fac}"));
                        }
                    }
                    _ => residual.push(format!("{fac}")),
                }
                for c in candidates {
                    if g.eval(&c).is_zero() && !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        Err(_) => {
            residual.push(format!(
                "unfactored fiber polynomial of degree {} over sqrt({d})",
                norm.degree()
            ));
        }
    }
    out
}

/// Reducedness of the curve (no repeated factor).
pub fn is_reduced(f: &TernaryForm) -> bool {
    !f.is_zero() && is_squarefree(&f.poly)
}

/// Reduced with all located singular points classifying to A/D/E and no
/// unresolved elimination residue.
pub fn has_only_ade(f: &TernaryForm) -> Result<(bool, Vec<SingularityRecord>), CurveError> {
    if !is_reduced(f) {
        return Ok((false, vec![]));
    }
    let locus = singular_points(f);
    if !locus.residual.is_empty() {
        return Err(CurveError::UnclassifiedExtensionPoint(locus.residual));
    }
    let mut records = vec![];
    let mut all_ade = true;
    for p in &locus.points {
        let rec = classify_singularity(f, p)?;
        if matches!(rec.kind, SingularityType::NonAde(_)) {
            all_ade = false;
        }
        records.push(rec);
    }
    Ok((all_ade, records))
}

/// Is the quartic a double smooth conic c·q² with q of rank 3?
pub fn double_smooth_conic_test(f: &TernaryForm) -> Result<bool, CurveError> {
    if f.degree() != 4 || f.is_zero() {
        return Ok(false);
    }
    let parts = squarefree_decomposition(&f.poly)?;
    if parts.len() != 1 {
        return Ok(false);
    }
    let (q, mult) = &parts[0];
    if *mult != 2 || q.total_degree() != 2 {
        return Ok(false);
    }
    Ok(conic_rank(q) == 3)
}

/// Rank of the symmetric 3×3 matrix of a ternary quadratic form.
pub fn conic_rank(q: &PolyQ) -> usize {
    let mut m = crate::linalg::QMat::zeros(3, 3);
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = (0..3)
            .flat_map(|i| std::iter::repeat(i).take(mono.0[i] as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            *m.at_mut(i, i) = c.clone();
        } else {
            let half = c / rat(2);
            *m.at_mut(i, j) = half.clone();
            *m.at_mut(j, i) = half;
        }
    }
    m.rank()
}

/// Does the reduced quartic split as a line times a cubic with the line
/// meeting the cubic to order three at a smooth point (an inflectional
/// tangent)? Detection runs over the singular points whose tangent cone is a
/// double line.
pub fn inflectional_tangent_quartic_test(f: &TernaryForm) -> Result<bool, CurveError> {
    if f.degree() != 4 {
        return Err(CurveError::WrongDegree(f.degree()));
    }
    let locus = singular_points(f);
    if !locus.residual.is_empty() {
        return Err(CurveError::Undecidable(format!(
            "unclassified singular directions: {:?}",
            locus.residual
        )));
    }
    for p in &locus.points {
        if multiplicity_at(f, p) != 2 {
            continue;
        }
        let (cone, shape) = tangent_cone(f, p);
        if shape != ConeShape::TripleLine {
            continue; // distinct tangents cannot contain an inflectional line
        }
        // tangent line in ambient coordinates: the double line of the cone
        let Some(line) = cone_double_line(f, p, &cone) else {
            return Err(CurveError::Undecidable(
                "tangent line not defined over the working field".to_string(),
            ));
        };
        let fe = lift(&f.poly);
        if let Some(cofactor) = fe.exact_div(&line) {
            if cofactor.total_degree() == 3 {
                let order = contact_order(&cofactor, &line, p);
                if order == Some(3) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// The reduced line of a double-line tangent cone, pulled back to ambient
/// homogeneous coordinates.
fn cone_double_line(
    f: &TernaryForm,
    p: &PlanePoint,
    cone: &MultiPoly<QuadExt>,
) -> Option<MultiPoly<QuadExt>> {
    // cone = c (α u + β v)^2 in chart coordinates
    let a = cone.coeff(&mono2(2, 0));
    let b = cone.coeff(&mono2(1, 1));
    let c = cone.coeff(&mono2(0, 2));
    let (alpha, beta) = if !a.is_zero() {
        // normalize: u + (b/2a) v
        (QuadExt::one(), b.div(&a.mul(&QuadExt::from_rat(&rat(2)))))
    } else if !c.is_zero() {
        (b.div(&c.mul(&QuadExt::from_rat(&rat(2)))), QuadExt::one())
    } else {
        return None; // cone = uv, not a double line
    };
    // chart u = x_i - p_i (affine), so the ambient line is
    // α (x_i p_k - x_k p_i) + β (x_j p_k - x_k p_j) scaled to the chart.
    let pivot = p.pivot();
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let vars3 = f.vars();
    let lifted_var =
        |i: usize| -> MultiPoly<QuadExt> { MultiPoly::variable(vars3, i).map_coeffs(|r: &Rat| QuadExt::from_rat(r)) };
    // in the chart x_pivot = 1: u_k = x_{others[k]} - p_{others[k]} x_pivot
    let u0 = lifted_var(others[0]).sub(&lifted_var(pivot).scale(&p.coords[others[0]]));
    let u1 = lifted_var(others[1]).sub(&lifted_var(pivot).scale(&p.coords[others[1]]));
    Some(u0.scale(&alpha).add(&u1.scale(&beta)))
}

/// Intersection order of a line with a curve at a point of the line, via
/// exact parametrization.
fn contact_order(
    curve: &MultiPoly<QuadExt>,
    line: &MultiPoly<QuadExt>,
    p: &PlanePoint,
) -> Option<usize> {
    // find a second point q on the line independent of p
    let coeffs: Vec<QuadExt> = (0..3)
        .map(|i| line.coeff(&Monomial::var(3, i, 1)))
        .collect();
    let mut q: Option<[QuadExt; 3]> = None;
    let candidates = [
        [QuadExt::one(), QuadExt::zero(), QuadExt::zero()],
        [QuadExt::zero(), QuadExt::one(), QuadExt::zero()],
        [QuadExt::zero(), QuadExt::zero(), QuadExt::one()],
        // direction vector of the line: (b, -a, 0) and friends
        [coeffs[1].clone(), coeffs[0].neg(), QuadExt::zero()],
        [coeffs[2].clone(), QuadExt::zero(), coeffs[0].neg()],
        [QuadExt::zero(), coeffs[2].clone(), coeffs[1].neg()],
    ];
    for cand in candidates {
        if cand.iter().all(|c| c.is_zero()) {
            continue;
        }
        let on_line = coeffs
            .iter()
            .zip(&cand)
            .fold(QuadExt::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
        if !on_line.is_zero() {
            continue;
        }
        // independent of p?
        let indep = (0..3).any(|i| {
            (0..3).any(|j| {
                i < j
                    && !p.coords[i]
                        .mul(&cand[j])
                        .sub(&p.coords[j].mul(&cand[i]))
                        .is_zero()
            })
        });
        if indep {
            q = Some(cand);
            break;
        }
    }
    let q = q?;
    // parametrize: s p + t q, expand curve(s p + t q) as polynomial in (s, t),
    // contact order = order in t at (s : t) = (1 : 0)
    let st = VarSet::new(vec!["s", "t"]);
    let s = MultiPoly::<QuadExt>::variable(&st, 0);
    let t = MultiPoly::<QuadExt>::variable(&st, 1);
    let images: Vec<MultiPoly<QuadExt>> = (0..3)
        .map(|i| s.scale(&p.coords[i]).add(&t.scale(&q[i])))
        .collect();
    let restricted = curve.substitute(&images);
    if restricted.is_zero() {
        return None; // line inside the curve
    }
    restricted.terms().map(|(m, _)| m.0[1] as usize).min()
}

/// Full GIT stability verdict for a plane quartic (or the zero form).
pub fn decide_quartic_stability(f: &TernaryForm) -> Result<QuarticVerdict, CurveError> {
    if f.is_zero() {
        return Ok(QuarticVerdict {
            status: Stability::Unstable,
            reasons: vec!["identically zero discriminant".into()],
        });
    }
    if f.degree() != 4 {
        return Err(CurveError::WrongDegree(f.degree()));
    }
    if !is_reduced(f) {
        if double_smooth_conic_test(f)? {
            return Ok(QuarticVerdict {
                status: Stability::StrictlySemistable,
                reasons: vec!["double smooth conic".into()],
            });
        }
        return Ok(QuarticVerdict {
            status: Stability::Unstable,
            reasons: vec!["non-reduced and not a double smooth conic".into()],
        });
    }
    let locus = singular_points(f);
    // a located point of multiplicity >= 3 settles instability regardless of
    // any unclassified residue
    for p in &locus.points {
        let m = multiplicity_at(f, p);
        if m >= 3 {
            return Ok(QuarticVerdict {
                status: Stability::Unstable,
                reasons: vec![format!("singular point {p} of multiplicity {m}")],
            });
        }
    }
    if !locus.residual.is_empty() {
        return Err(CurveError::UnclassifiedExtensionPoint(locus.residual));
    }
    let mut worst_a = 0u32;
    let mut reasons = vec![];
    for p in &locus.points {
        let rec = classify_singularity(f, p)?;
        match rec.kind {
            SingularityType::A(n) => {
                worst_a = worst_a.max(n);
                reasons.push(format!("{} at {}", rec.kind, p));
            }
            ref k => {
                // multiplicity 2 always classifies as A or non-isolated;
                // non-isolated is impossible for reduced curves
                return Ok(QuarticVerdict {
                    status: Stability::Unstable,
                    reasons: vec![format!("{k} at {p}")],
                });
            }
        }
    }
    if worst_a <= 2 {
        return Ok(QuarticVerdict {
            status: Stability::Stable,
            reasons: if reasons.is_empty() {
                vec!["smooth or nodal/cuspidal only".into()]
            } else {
                reasons
            },
        });
    }
    if inflectional_tangent_quartic_test(f)? {
        return Ok(QuarticVerdict {
            status: Stability::Unstable,
            reasons: vec!["cubic with an inflectional tangent line".into()],
        });
    }
    reasons.push("all singular points are double points".into());
    Ok(QuarticVerdict { status: Stability::StrictlySemistable, reasons })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{poly_q, vars_xyz};

    fn tf(terms: &[(i64, &[u16])]) -> TernaryForm {
        TernaryForm::new(poly_q(&vars_xyz(), terms)).unwrap()
    }

    #[test]
    fn fermat_quartic_is_smooth_and_stable() {
        let f = tf(&[(1, &[4, 0, 0]), (1, &[0, 4, 0]), (1, &[0, 0, 4])]);
        let locus = singular_points(&f);
        assert!(locus.points.is_empty());
        assert!(locus.residual.is_empty());
        assert!(!locus.non_isolated);
        let v = decide_quartic_stability(&f).unwrap();
        assert_eq!(v.status, Stability::Stable);
        let (ade, recs) = has_only_ade(&f).unwrap();
        assert!(ade && recs.is_empty());
    }

    #[test]
    fn double_conic_flags() {
        // (xy - z^2)^2
        let base = poly_q(&vars_xyz(), &[(1, &[1, 1, 0]), (-1, &[0, 0, 2])]);
        let f = TernaryForm::new(base.mul(&base)).unwrap();
        let locus = singular_points(&f);
        assert!(locus.non_isolated);
        assert!(double_smooth_conic_test(&f).unwrap());
        assert_eq!(
            decide_quartic_stability(&f).unwrap().status,
            Stability::StrictlySemistable
        );
        // (xy)^2: rank-2 double conic is unstable
        let xy = poly_q(&vars_xyz(), &[(1, &[1, 1, 0])]);
        let g = TernaryForm::new(xy.mul(&xy)).unwrap();
        assert!(!double_smooth_conic_test(&g).unwrap());
        assert_eq!(decide_quartic_stability(&g).unwrap().status, Stability::Unstable);
    }

    #[test]
    fn cusp_normal_form() {
        // y^2 z - x^3 homogeneous cubic: cusp at (0:0:1)
        let f = tf(&[(1, &[0, 2, 1]), (-1, &[3, 0, 0])]);
        let p = PlanePoint::from_ints([0, 0, 1]);
        assert_eq!(multiplicity_at(&f, &p), 2);
        assert_eq!(milnor_number(&f, &p).unwrap(), 2);
        let rec = classify_singularity(&f, &p).unwrap();
        assert_eq!(rec.kind, SingularityType::A(2));
    }

    #[test]
    fn ade_normal_forms_classify() {
        // A_n: x^2 z^{n-1} + y^{n+1}  (degree n+1), at (0:0:1)
        let p = PlanePoint::from_ints([0, 0, 1]);
        for n in 1..=8u16 {
            let f = tf(&[(1, &[2, 0, n - 1]), (1, &[0, n + 1, 0])]);
            let rec = classify_singularity(&f, &p).unwrap();
            assert_eq!(rec.kind, SingularityType::A(n as u32), "A_{n}");
        }
        // D_n: x^2 y z^{n-3} + y^{n-1} z  (degree n), at (0:0:1)
        for n in 4..=8u16 {
            let f = tf(&[(1, &[2, 1, n - 3]), (1, &[0, n - 1, 1])]);
            let rec = classify_singularity(&f, &p).unwrap();
            assert_eq!(rec.kind, SingularityType::D(n as u32), "D_{n}");
        }
        // E6: x^3 z + y^4, E7: x^3 z + x y^3, E8: x^3 z^2 + y^5
        let e6 = tf(&[(1, &[3, 0, 1]), (1, &[0, 4, 0])]);
        assert_eq!(classify_singularity(&e6, &p).unwrap().kind, SingularityType::E(6));
        let e7 = tf(&[(1, &[3, 0, 1]), (1, &[1, 3, 0])]);
        assert_eq!(classify_singularity(&e7, &p).unwrap().kind, SingularityType::E(7));
        let e8 = tf(&[(1, &[3, 0, 2]), (1, &[0, 5, 0])]);
        assert_eq!(classify_singularity(&e8, &p).unwrap().kind, SingularityType::E(8));
    }

    #[test]
    fn triple_line_with_bad_milnor_is_not_ade() {
        // x^3 + y^6 type: x^3 z^3 + y^6 has milnor 10 at (0:0:1)
        let f = tf(&[(1, &[3, 0, 3]), (1, &[0, 6, 0])]);
        let p = PlanePoint::from_ints([0, 0, 1]);
        let rec = classify_singularity(&f, &p).unwrap();
        assert_eq!(rec.kind, SingularityType::NonAde(NonAdeReason::TripleLineBadMilnor));
    }

    #[test]
    fn inflectional_tangent_detected() {
        // z * (y^2 z - x^3 - x z^2): the line z = 0 meets the cubic with
        // contact order three at (0:1:0)
        let cubic = poly_q(
            &vars_xyz(),
            &[(1, &[0, 2, 1]), (-1, &[3, 0, 0]), (-1, &[1, 0, 2])],
        );
        let z = poly_q(&vars_xyz(), &[(1, &[0, 0, 1])]);
        let f = TernaryForm::new(z.mul(&cubic)).unwrap();
        assert!(inflectional_tangent_quartic_test(&f).unwrap());
        assert_eq!(decide_quartic_stability(&f).unwrap().status, Stability::Unstable);
    }

    #[test]
    fn generic_secant_line_is_not_inflectional() {
        // line x = 0 meets y^2 z - x^3 - x z^2 + x y^2 ... choose cubic with
        // three distinct intersections with the line z = 0: z(y^2 z - x^3 + x^2 y)
        let cubic = poly_q(
            &vars_xyz(),
            &[(1, &[0, 2, 1]), (-1, &[3, 0, 0]), (1, &[2, 1, 0])],
        );
        let z = poly_q(&vars_xyz(), &[(1, &[0, 0, 1])]);
        let f = TernaryForm::new(z.mul(&cubic)).unwrap();
        assert!(!inflectional_tangent_quartic_test(&f).unwrap());
        assert_eq!(
            decide_quartic_stability(&f).unwrap().status,
            Stability::StrictlySemistable
        );
    }

    #[test]
    fn quadratic_point_location() {
        // (x^2 - 2 z^2) y^2 + y^4: singular at (±√2 : 0 : 1) among others
        let f = tf(&[(1, &[2, 2, 0]), (-2, &[0, 2, 2]), (1, &[0, 4, 0])]);
        let locus = singular_points(&f);
        assert!(locus
            .points
            .iter()
            .any(|p| !p.is_rational() && p.coords[0].d == 2));
    }

    #[test]
    fn euler_relation_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let vs = vars_xyz();
        for _ in 0..50 {
            let deg = rng.gen_range(1..=4end);
            let mut f = PolyQ::zero(&vs);
            for _ in 0..rng.gen_range(1..=6) {
                let a = rng.gen_range(0..=deg);
                let b = rng.gen_range(0..=(deg - a));
                let c = deg - a - b;
                f.add_term(
                    Monomial(SmallVec::from_slice(&[a as u16, b as u16, c as u16])),
                    rat(rng.gen_range(-9..=9)),
                );
            }
            if f.is_zero() {
                continue;
            }
            let sum = (0..3).fold(PolyQ::zero(&vs), |acc, v| {
                acc.add(&f.derivative(v).mul(&PolyQ::variable(&vs, v)))
            });
            assert_eq!(sum, f.scale(&rat(deg as i64)));
        }
    }
}
