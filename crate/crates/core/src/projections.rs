//! The headline decisions: membership in `S_V`, the order unit property,
//! order projections, the ideal decomposition `[u] = V_u ⊕∞ V_{e−u}`, the
//! sum-splitting criterion, and the extreme-point necessary condition.
//!
//! Each decision computes every route its backend supports and requires the
//! decisive ones to agree; a disagreement is a bug trap, not a verdict.
//! The order unit property is decided on the positive contractions
//! (`‖u‖ ≤ 1`): its norm characterization and the interval criterion part
//! ways above norm one, so larger elements are rejected loudly.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::adjoined;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix;
use crate::oracle;
use crate::ortho;
use crate::polyhedral;
use crate::scalar::{rat, Rational, Scalar, SPECTRAL_TOL};
use crate::space::{Backend, Decision, Element, Exactness, SpaceRef};

/// Decision about the order unit property with the `S_V` sub-report.
#[derive(Debug, Clone)]
pub struct OupReport {
    pub decision: Decision,
    pub sv: Decision,
}

/// `u ∈ S_V`: positivity plus `‖u‖ = 1 = ‖e − u‖`, exact on rational paths.
pub fn sv_membership(space: &SpaceRef, u: &Element) -> Result<Decision> {
    if u.space() != space {
        return Err(Error::SpaceMismatch);
    }
    let exactness = match space.backend() {
        Backend::Polyhedral => Exactness::Exact,
        Backend::SymMatrix => Exactness::Toleranced,
        Backend::Adjoined => Exactness::Exact, // ℓ2 compares through squares
    };
    let positive = space.positive_within_tol(u)?;
    let one = Rational::one();
    let norm_u = positive && space.norm_eq_const(u, &one)?;
    let norm_complement = norm_u && space.norm_eq_const(&space.unit().sub(u)?, &one)?;
    let holds = positive && norm_u && norm_complement;
    Ok(Decision::new(holds)
        .with_route("positive", positive, exactness)
        .with_route("norm-u-one", norm_u, exactness)
        .with_route("norm-complement-one", norm_complement, exactness))
}

fn norm_at_most_one(space: &SpaceRef, u: &Element) -> Result<bool> {
    Ok(match space.norm(u)? {
        Scalar::Rational(q) => q <= Rational::one(),
        Scalar::Approx { value, .. } => value <= 1.0 + SPECTRAL_TOL,
    })
}

/// Order unit property of a positive contraction `u`.
///
/// Routes per backend: polyhedral A (interval criterion
/// `D_u ⊆ [−u, u]`, the definition made finite) and B (norm conditions plus
/// `(e − u) ⊥∞ [−u, u]`); algebraic projection test on matrices; ball
/// extremality on adjoined spaces. All computed routes must agree.
pub fn has_oup(space: &SpaceRef, u: &Element) -> Result<OupReport> {
    if u.space() != space {
        return Err(Error::SpaceMismatch);
    }
    if !space.positive_within_tol(u)? {
        return Err(Error::Precondition("has_oup requires u ∈ V⁺".into()));
    }
    if !norm_at_most_one(space, u)? {
        return Err(Error::Precondition(
            "the order unit property is decided for positive contractions: ‖u‖ ≤ 1 required".into(),
        ));
    }
    let sv = sv_membership(space, u)?;
    if u.is_zero() || u.is_unit() {
        let decision = Decision::trivial(true).with_route("trivial", true, Exactness::Exact);
        return Ok(OupReport { decision, sv });
    }
    let decision = match space.backend() {
        Backend::Polyhedral => {
            // route A: every unit vector of the ideal lies in [−u, u]
            let slice = polyhedral::norm_slice(space, u)?;
            let box_u = polyhedral::interval(space, &u.neg(), u)?;
            let subset = polyhedral::polytope_subset(&slice, &box_u)?;
            // route B: S_V membership plus the point-against-interval check
            let route_b = if sv.holds {
                let x = space.unit().sub(u)?;
                ortho::perp_inf_point_set(&x, u)?.holds
            } else {
                false
            };
            let mut d = Decision::new(subset.holds)
                .with_route("interval-criterion", subset.holds, Exactness::Exact)
                .with_route("theorem-oup", route_b, Exactness::Exact);
            if let Some(w) = subset.witness {
                d = d.with_witness(w);
            }
            d
        }
        Backend::SymMatrix => {
            let proj = matrix::is_projection(u.as_mat().expect("matrix backend"))?;
            let mut d = Decision::new(proj.holds)
                .with_route("algebraic-projection", proj.holds, Exactness::Toleranced)
                .with_tolerance(SPECTRAL_TOL);
            for r in proj.routes {
                d = d.with_route(&format!("algebraic/{}", r.name), r.holds, r.exactness);
            }
            d
        }
        Backend::Adjoined => {
            let inner = adjoined::oup_adjoined(space, u)?;
            let mut d = Decision::new(inner.holds);
            d.trivial = inner.trivial;
            d.witness = inner.witness.clone();
            d.tolerance = inner.tolerance;
            for r in inner.routes {
                d = d.with_route(&r.name, r.holds, r.exactness);
            }
            d
        }
    };
    decision.check_routes("has_oup")?;
    // necessity: a nontrivial element with the property lies in S_V
    if decision.holds && !sv.holds {
        return Err(Error::TheoremViolation {
            op: "has_oup".into(),
            detail: "property verdict true outside S_V for a nontrivial element".into(),
        });
    }
    Ok(OupReport { decision, sv })
}

/// Is `u` an order projection (`u` and `e − u` both with the property)?
/// Computed through three routes where the backend allows, all required to
/// agree; the set-orthogonality routes apply when `u ∈ S_V`.
pub fn is_order_projection(space: &SpaceRef, u: &Element) -> Result<Decision> {
    if u.space() != space {
        return Err(Error::SpaceMismatch);
    }
    if !space.positive_within_tol(u)? {
        return Err(Error::Precondition("is_order_projection requires u ∈ V⁺".into()));
    }
    let complement = space.unit().sub(u)?;
    if !space.positive_within_tol(&complement)? {
        return Err(Error::Precondition("is_order_projection requires u ≤ e".into()));
    }
    if u.is_zero() || u.is_unit() {
        return Ok(Decision::trivial(true).with_route("trivial", true, Exactness::Exact));
    }
    let oup_u = has_oup(space, u)?;
    let oup_c = has_oup(space, &complement)?;
    let route1 = oup_u.decision.holds && oup_c.decision.holds;
    let exactness = match space.backend() {
        Backend::Polyhedral => Exactness::Exact,
        Backend::SymMatrix => Exactness::Toleranced,
        Backend::Adjoined => Exactness::Exact,
    };
    let mut d = Decision::new(route1).with_route("oup-pair", route1, exactness);
    if !route1 {
        if let Some(w) = oup_u.decision.witness.clone().or(oup_c.decision.witness.clone()) {
            d = d.with_witness(w);
        }
    }
    if oup_u.sv.holds {
        let ext = ortho::perp_ext(u, &complement)?;
        d = d.with_route("extensive-orthogonality", ext.holds, ext_route_exactness(space, &ext));
        if d.witness.is_none() {
            d.witness = ext.witness;
        }
        let ps1 = ortho::perp_inf_point_set(u, &complement)?;
        let ps2 = ortho::perp_inf_point_set(&complement, u)?;
        let both = ps1.holds && ps2.holds;
        let ex = point_set_exactness(&ps1).min_with(point_set_exactness(&ps2));
        d = d.with_route("point-set-both-ways", both, ex);
        if d.witness.is_none() {
            d.witness = ps1.witness.or(ps2.witness);
        }
    }
    d.check_routes("is_order_projection")?;
    Ok(d)
}

fn ext_route_exactness(space: &SpaceRef, d: &Decision) -> Exactness {
    let _ = space;
    d.routes.first().map(|r| r.exactness).unwrap_or(Exactness::Sampled)
}

fn point_set_exactness(d: &Decision) -> Exactness {
    d.routes.first().map(|r| r.exactness).unwrap_or(Exactness::Sampled)
}

trait MinExactness {
    fn min_with(self, other: Exactness) -> Exactness;
}

impl MinExactness for Exactness {
    fn min_with(self, other: Exactness) -> Exactness {
        use Exactness::*;
        match (self, other) {
            (Sampled, _) | (_, Sampled) => Sampled,
            (Toleranced, _) | (_, Toleranced) => Toleranced,
            _ => Exact,
        }
    }
}

/// Report of the splitting `[u] = V_u ⊕∞ V_{e−u}` for an order projection.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub ideal_u: Vec<Element>,
    pub ideal_complement: Vec<Element>,
    pub sum_dim: usize,
    pub direct_sum: bool,
    pub contains_unit: bool,
    /// max over sampled pairs of |‖v+w‖ − max(‖v‖, ‖w‖)|
    pub max_residual: Scalar,
    pub samples: usize,
}

/// Decompose along a certified order projection: bases for both ideals, the
/// direct-sum check, and the sampled ℓ∞-isometry residual (exactly 0 on
/// rational paths).
pub fn decompose(space: &SpaceRef, u: &Element, samples: usize, seed: u64) -> Result<DecompositionReport> {
    let op = is_order_projection(space, u)?;
    if !op.holds {
        return Err(Error::Precondition("decompose requires an order projection".into()));
    }
    let complement = space.unit().sub(u)?;
    match space.backend() {
        Backend::Polyhedral => {
            let basis_u = polyhedral::ideal_basis(space, u)?;
            let basis_c = polyhedral::ideal_basis(space, &complement)?;
            let mut all: Vec<linalg::Vecq> = basis_u.vectors().to_vec();
            all.extend(basis_c.vectors().iter().cloned());
            let sum_dim = linalg::rank(&all);
            let direct_sum = sum_dim == basis_u.dim() + basis_c.dim();
            let unit_vec = space.unit();
            let contains_unit =
                linalg::coordinates_in_span(&all, unit_vec.as_vec().expect("polyhedral")).is_some();
            let to_elements = |vs: &[linalg::Vecq]| -> Result<Vec<Element>> {
                vs.iter().map(|v| Element::vector(space, v.clone())).collect()
            };
            let mut max_residual = Rational::zero();
            for trial in 0..samples {
                let mut rng = oracle::trial_rng(seed, trial as u64);
                let v = random_combination(space, basis_u.vectors(), &mut rng)?;
                let w = random_combination(space, basis_c.vectors(), &mut rng)?;
                let nv = space.norm(&v)?.as_rational().unwrap().clone();
                let nw = space.norm(&w)?.as_rational().unwrap().clone();
                let ns = space.norm(&v.add(&w)?)?.as_rational().unwrap().clone();
                let residual = (ns - nv.clone().max(nw)).abs();
                if residual > max_residual {
                    max_residual = residual;
                }
            }
            Ok(DecompositionReport {
                ideal_u: to_elements(basis_u.vectors())?,
                ideal_complement: to_elements(basis_c.vectors())?,
                sum_dim,
                direct_sum,
                contains_unit,
                max_residual: Scalar::Rational(max_residual),
                samples,
            })
        }
        Backend::SymMatrix => {
            let side = space.matrix_side()?;
            let um = u.as_mat().expect("matrix backend");
            let (values, vectors) = matrix::spectral_decompose(um);
            let range: Vec<usize> =
                (0..side).filter(|&i| (values[i] - 1.0).abs() <= 1e-6).collect();
            let kernel: Vec<usize> = (0..side).filter(|&i| values[i].abs() <= 1e-6).collect();
            let block = |idx: &[usize]| -> Result<Vec<Element>> {
                let mut out = Vec::new();
                for (pos, &i) in idx.iter().enumerate() {
                    for &j in &idx[pos..] {
                        let mut m = matrix::SymMatrix::zero(side);
                        for r in 0..side {
                            for c in r..side {
                                let sym = if i == j {
                                    vectors[(r, i)] * vectors[(c, i)]
                                } else {
                                    0.5 * (vectors[(r, i)] * vectors[(c, j)]
                                        + vectors[(r, j)] * vectors[(c, i)])
                                };
                                m.set(r, c, sym);
                            }
                        }
                        out.push(Element::matrix(space, m)?);
                    }
                }
                Ok(out)
            };
            let ideal_u = block(&range)?;
            let ideal_c = block(&kernel)?;
            let sum_dim = ideal_u.len() + ideal_c.len();
            let mut max_residual = 0.0f64;
            for trial in 0..samples {
                let mut rng = oracle::trial_rng(seed, trial as u64);
                let v = random_f64_combination(space, &ideal_u, &mut rng)?;
                let w = random_f64_combination(space, &ideal_c, &mut rng)?;
                let nv = space.norm_f64(&v)?;
                let nw = space.norm_f64(&w)?;
                let ns = space.norm_f64(&v.add(&w)?)?;
                max_residual = max_residual.max((ns - nv.max(nw)).abs());
            }
            Ok(DecompositionReport {
                ideal_u,
                ideal_complement: ideal_c,
                sum_dim,
                direct_sum: true, // the blocks P·Sym·P and (I−P)·Sym·(I−P) intersect in 0
                contains_unit: true, // I = P + (I − P)
                max_residual: Scalar::approx(max_residual),
                samples,
            })
        }
        Backend::Adjoined => {
            let norm = space.norm_spec()?;
            let rational = norm.is_rational_path();
            let ideal_u = vec![u.clone()];
            let ideal_c = vec![complement.clone()];
            let mut max_residual_q = Rational::zero();
            let mut max_residual_f = 0.0f64;
            for trial in 0..samples {
                let mut rng = oracle::trial_rng(seed, trial as u64);
                let sv = rat(rng.random_range(-32i64..=32), 8);
                let sw = rat(rng.random_range(-32i64..=32), 8);
                let v = u.scale_rational(&sv);
                let w = complement.scale_rational(&sw);
                if rational {
                    let nv = space.norm(&v)?.as_rational().unwrap().clone();
                    let nw = space.norm(&w)?.as_rational().unwrap().clone();
                    let ns = space.norm(&v.add(&w)?)?.as_rational().unwrap().clone();
                    let r = (ns - nv.max(nw)).abs();
                    if r > max_residual_q {
                        max_residual_q = r;
                    }
                } else {
                    let nv = space.norm_f64(&v)?;
                    let nw = space.norm_f64(&w)?;
                    let ns = space.norm_f64(&v.add(&w)?)?;
                    max_residual_f = max_residual_f.max((ns - nv.max(nw)).abs());
                }
            }
            Ok(DecompositionReport {
                ideal_u,
                ideal_complement: ideal_c,
                sum_dim: 2,
                direct_sum: true,
                contains_unit: true, // e = u + (e − u)
                max_residual: if rational {
                    Scalar::Rational(max_residual_q)
                } else {
                    Scalar::approx(max_residual_f)
                },
                samples,
            })
        }
    }
}

fn random_combination(
    space: &SpaceRef,
    basis: &[linalg::Vecq],
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<Element> {
    let mut x = linalg::zeros(space.dim());
    for b in basis {
        let c = rat(rng.random_range(-16i64..=16), 4);
        x = linalg::add(&x, &linalg::scale(b, &c));
    }
    Element::vector(space, x)
}

fn random_f64_combination(
    space: &SpaceRef,
    basis: &[Element],
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<Element> {
    let mut acc = Element::zero(space);
    for b in basis {
        let c: f64 = rng.random_range(-2.0..2.0);
        acc = acc.add(&b.scale_scalar(&Scalar::approx(c))?)?;
    }
    Ok(acc)
}

/// The sum-splitting criterion for `u = v + w`: the parts have the property
/// exactly when they are extensively orthogonal. The biconditional encodes a
/// proved statement, so a violation is an error, not a verdict; when `u` is
/// moreover an order projection the same is asserted with order projections
/// in place of the property.
pub fn sum_split_check(
    space: &SpaceRef,
    u: &Element,
    v: &Element,
    w: &Element,
) -> Result<Decision> {
    for x in [u, v, w] {
        if x.space() != space {
            return Err(Error::SpaceMismatch);
        }
    }
    if &v.add(w)? != u {
        return Err(Error::Precondition("sum_split_check requires u = v + w exactly".into()));
    }
    for (name, x) in [("v", v), ("w", w)] {
        if !sv_membership(space, x)?.holds {
            return Err(Error::Precondition(format!("sum_split_check requires {name} ∈ S_V")));
        }
    }
    // u itself: a norm-one positive with the property (u = e included)
    if !space.positive_within_tol(u)? {
        return Err(Error::Precondition("sum_split_check requires u ∈ V⁺".into()));
    }
    if !space.norm_eq_const(u, &Rational::one())? {
        return Err(Error::Precondition("sum_split_check requires ‖u‖ = 1".into()));
    }
    let oup_u = has_oup(space, u)?;
    if !oup_u.decision.holds {
        return Err(Error::Precondition("sum_split_check requires u with the order unit property".into()));
    }

    let ext = ortho::perp_ext(v, w)?;
    let parts = has_oup(space, v)?.decision.holds && has_oup(space, w)?.decision.holds;
    if ext.holds != parts {
        return Err(Error::TheoremViolation {
            op: "sum_split_check".into(),
            detail: format!(
                "extensive orthogonality = {} but part-wise property = {}",
                ext.holds, parts
            ),
        });
    }
    let ext_exactness = ext_route_exactness(space, &ext);
    let mut d = Decision::new(ext.holds)
        .with_route("extensive-orthogonality", ext.holds, ext_exactness)
        .with_route("part-wise-oup", parts, ext_exactness);
    if let Some(wit) = ext.witness {
        d = d.with_witness(wit);
    }

    // the order-projection variant, when it applies
    let u_is_contraction = space.positive_within_tol(&space.unit().sub(u)?)?;
    if u_is_contraction || u.is_unit() {
        if is_order_projection(space, u)?.holds {
            let parts_op =
                is_order_projection(space, v)?.holds && is_order_projection(space, w)?.holds;
            if parts_op != ext.holds {
                return Err(Error::TheoremViolation {
                    op: "sum_split_check".into(),
                    detail: format!(
                        "extensive orthogonality = {} but part-wise order projections = {}",
                        ext.holds, parts_op
                    ),
                });
            }
            d = d.with_route("part-wise-order-projection", parts_op, ext_exactness);
        }
    }
    Ok(d)
}

/// Is `u` a vertex of `V₁⁺ = [0, e]`? Exact, polyhedral backend only.
pub fn is_extreme_positive_contraction(space: &SpaceRef, u: &Element) -> Result<Decision> {
    if space.backend() != Backend::Polyhedral {
        return Err(Error::UnsupportedBackend {
            backend: space.backend().name().to_string(),
            detail: "extreme-point test of V₁⁺ uses exact vertex enumeration".to_string(),
        });
    }
    if u.space() != space {
        return Err(Error::SpaceMismatch);
    }
    if !space.cone_contains(u)? {
        return Err(Error::Precondition("is_extreme_positive_contraction requires u ∈ V⁺".into()));
    }
    if !norm_at_most_one(space, u)? {
        return Err(Error::Precondition("is_extreme_positive_contraction requires ‖u‖ ≤ 1".into()));
    }
    let body = positive_unit_ball(space)?;
    let holds = body.is_vertex(u.as_vec().expect("polyhedral"));
    Ok(Decision::new(holds).with_route("vertex-of-unit-interval", holds, Exactness::Exact))
}

/// `V₁⁺ = {v ∈ V⁺ : ‖v‖ ≤ 1} = [0, e]` with vertices enumerated.
pub fn positive_unit_ball(space: &SpaceRef) -> Result<polyhedral::Polytope> {
    let zero = Element::zero(space);
    let e = space.unit();
    polyhedral::interval(space, &zero, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SymMatrix;
    use crate::scalar::rat_int;
    use crate::space::Witness;

    fn quadrant(n: usize) -> SpaceRef {
        let mut rows = Vec::new();
        for i in 0..n {
            let mut r = linalg::zeros(n);
            r[i] = Rational::one();
            rows.push(r);
        }
        SpaceRef::polyhedral(Some(rows), None, vec![rat_int(1); n]).unwrap()
    }

    fn el(s: &SpaceRef, xs: &[(i64, i64)]) -> Element {
        Element::vector(s, xs.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn sv_examples() {
        let s = quadrant(2);
        assert!(sv_membership(&s, &el(&s, &[(1, 1), (0, 1)])).unwrap().holds);
        assert!(!sv_membership(&s, &s.unit()).unwrap().holds);
        let adj = adjoined::adjoin(adjoined::NormSpec::lp(adjoined::LpExp::Infinity, 2)).unwrap();
        let v = Element::pair(&adj, rat(1, 2), vec![rat(1, 2), rat(0, 1)]).unwrap();
        assert!(sv_membership(&adj, &v).unwrap().holds);
    }

    #[test]
    fn oup_polyhedral_examples() {
        let s = quadrant(2);
        let good = has_oup(&s, &el(&s, &[(1, 1), (0, 1)])).unwrap();
        assert!(good.decision.holds && good.sv.holds);

        let bad = has_oup(&s, &el(&s, &[(1, 1), (1, 2)])).unwrap();
        assert!(!bad.decision.holds);
        match bad.decision.witness {
            Some(Witness::Element(w)) => {
                let wv = w.as_vec().unwrap().clone();
                assert_eq!(wv, vec![rat_int(1), rat_int(1)]);
                // the witness violates the definition: ‖w‖ = 1, w ∈ V_u,
                // but u ± w ∉ V⁺
                let u = el(&s, &[(1, 1), (1, 2)]);
                assert!(!s.cone_contains(&u.sub(&w).unwrap()).unwrap());
            }
            _ => panic!("expected a slice-vertex witness"),
        }

        // trivial elements
        assert!(has_oup(&s, &Element::zero(&s)).unwrap().decision.trivial);
        assert!(has_oup(&s, &s.unit()).unwrap().decision.trivial);
        // domain guard
        assert!(has_oup(&s, &el(&s, &[(2, 1), (0, 1)])).is_err());
        assert!(has_oup(&s, &el(&s, &[(-1, 1), (0, 1)])).is_err());
        // strictly sub-norm positives never have the property
        assert!(!has_oup(&s, &el(&s, &[(1, 2), (0, 1)])).unwrap().decision.holds);
    }

    #[test]
    fn oup_matrix_example() {
        let m = SpaceRef::sym_matrix(2).unwrap();
        let u = Element::matrix(&m, SymMatrix::diagonal(&[1.0, 0.5])).unwrap();
        let rep = has_oup(&m, &u).unwrap();
        assert!(!rep.decision.holds);
        // the explicit hand witness v = diag(0, ½): u ± v stays PSD while
        // ‖v‖u − v has a negative eigenvalue
        let v = Element::matrix(&m, SymMatrix::diagonal(&[0.0, 0.5])).unwrap();
        // exact eigenvalue signs: u ± v stays PSD (boundary counts)
        assert!(m.positive_within_tol(&u.add(&v).unwrap()).unwrap());
        assert!(m.positive_within_tol(&u.sub(&v).unwrap()).unwrap());
        let nv = m.norm_f64(&v).unwrap();
        let bad = u.scale_scalar(&Scalar::approx(nv)).unwrap().sub(&v).unwrap();
        assert!(!m.cone_contains(&bad).unwrap());

        let p = Element::matrix(&m, SymMatrix::diagonal(&[1.0, 0.0])).unwrap();
        assert!(has_oup(&m, &p).unwrap().decision.holds);
    }

    #[test]
    fn order_projection_examples() {
        let s = quadrant(2);
        assert!(is_order_projection(&s, &el(&s, &[(1, 1), (0, 1)])).unwrap().holds);
        let d = is_order_projection(&s, &el(&s, &[(1, 1), (1, 2)])).unwrap();
        assert!(!d.holds);

        let s3 = quadrant(3);
        assert!(is_order_projection(&s3, &el(&s3, &[(1, 1), (1, 1), (0, 1)])).unwrap().holds);

        let m = SpaceRef::sym_matrix(3).unwrap();
        let p = Element::matrix(&m, SymMatrix::diagonal(&[1.0, 1.0, 0.0])).unwrap();
        assert!(is_order_projection(&m, &p).unwrap().holds);

        // precondition u ≤ e
        let over = el(&s, &[(1, 1), (2, 1)]);
        assert!(is_order_projection(&s, &over).is_err());
        // trivial
        assert!(is_order_projection(&s, &s.unit()).unwrap().trivial);
    }

    #[test]
    fn decompose_examples() {
        let s3 = quadrant(3);
        let u = el(&s3, &[(1, 1), (1, 1), (0, 1)]);
        let rep = decompose(&s3, &u, 64, 5).unwrap();
        assert_eq!(rep.ideal_u.len(), 2);
        assert_eq!(rep.ideal_complement.len(), 1);
        assert!(rep.direct_sum && rep.contains_unit);
        assert_eq!(rep.sum_dim, 3);
        assert_eq!(rep.max_residual, Scalar::Rational(Rational::zero()));

        // e decomposes against the zero ideal
        let rep = decompose(&s3, &s3.unit(), 16, 5).unwrap();
        assert_eq!(rep.ideal_u.len(), 3);
        assert!(rep.ideal_complement.is_empty());

        // non-projections are rejected
        assert!(decompose(&s3, &el(&s3, &[(1, 1), (1, 2), (0, 1)]), 16, 5).is_err());
    }

    #[test]
    fn sum_split_examples() {
        let s3 = quadrant(3);
        let u = el(&s3, &[(1, 1), (1, 1), (0, 1)]);
        let v = el(&s3, &[(1, 1), (0, 1), (0, 1)]);
        let w = el(&s3, &[(0, 1), (1, 1), (0, 1)]);
        let d = sum_split_check(&s3, &u, &v, &w).unwrap();
        assert!(d.holds);

        let v = el(&s3, &[(1, 1), (1, 2), (0, 1)]);
        let w = el(&s3, &[(0, 1), (1, 2), (1, 1)]);
        let d = sum_split_check(&s3, &s3.unit(), &v, &w).unwrap();
        assert!(!d.holds);
        match d.witness {
            Some(Witness::Pair(p, q)) => {
                assert_eq!(p.as_vec().unwrap(), &vec![rat_int(1), rat_int(1), rat_int(0)]);
                assert_eq!(q.as_vec().unwrap(), &vec![rat_int(0), rat_int(1), rat_int(1)]);
            }
            _ => panic!("expected the violating vertex pair"),
        }

        // matrix: complementary diagonal projections split the identity
        let m = SpaceRef::sym_matrix(2).unwrap();
        let v = Element::matrix(&m, SymMatrix::diagonal(&[1.0, 0.0])).unwrap();
        let w = Element::matrix(&m, SymMatrix::diagonal(&[0.0, 1.0])).unwrap();
        assert!(sum_split_check(&m, &m.unit(), &v, &w).unwrap().holds);

        // violated preconditions are reported individually
        let v = el(&s3, &[(1, 1), (0, 1), (0, 1)]);
        let w = el(&s3, &[(0, 1), (0, 1), (1, 1)]);
        let bad = sum_split_check(&s3, &u, &v, &w);
        assert!(matches!(bad, Err(Error::Precondition(_))), "v + w ≠ u must be rejected");
    }

    #[test]
    fn extreme_positive_contraction_examples() {
        let s = quadrant(2);
        assert!(is_extreme_positive_contraction(&s, &el(&s, &[(1, 1), (0, 1)])).unwrap().holds);
        assert!(!is_extreme_positive_contraction(&s, &el(&s, &[(1, 2), (1, 2)])).unwrap().holds);
        assert!(!is_extreme_positive_contraction(&s, &el(&s, &[(1, 1), (1, 2)])).unwrap().holds);
        let m = SpaceRef::sym_matrix(2).unwrap();
        let p = Element::matrix(&m, SymMatrix::diagonal(&[1.0, 0.0])).unwrap();
        assert!(is_extreme_positive_contraction(&m, &p).is_err());
    }
}
