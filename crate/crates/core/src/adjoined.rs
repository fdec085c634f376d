//! The adjoined order unit space `X̃ = ℝ ⊕₁ X` over a normed space `X`,
//! with cone `{(α, x) : ‖x‖_X ≤ α}` and unit `e = (1, 0)`.
//!
//! The order unit property of `(½, x)` on this backend reduces to ball
//! geometry: the order ideal of `(½, x)` is the line `ℝ(½, x)` exactly when
//! `x` is an extreme point of the `½`-ball of `X`, and an element of
//! `S_{X̃}` has the property precisely in that case. The implementation
//! cross-validates this reduction against the exported polyhedral decision
//! (for polyhedral balls) and against the definition-level sampling oracle,
//! and fails loudly on any disagreement.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Vecq};
use crate::scalar::{rat, rational_to_f64, Rational, Scalar, SPECTRAL_TOL};
use crate::space::{Backend, Decision, Element, Exactness, SpaceRef, Tri, Witness};

/// Description of a norm on the raw space `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSpec {
    kind: NormKind,
    dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormKind {
    Lp(LpExp),
    /// unit ball `{x : ⟨h, x⟩ ≤ 1 for each row h}`, rows closed under negation
    PolyBall { rows: Vec<Vecq> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpExp {
    One,
    Two,
    Infinity,
    /// exponent strictly between 1 and ∞, evaluated in floating point
    General(Rational),
}

impl NormSpec {
    pub fn lp(p: LpExp, dim: usize) -> NormSpec {
        NormSpec { kind: NormKind::Lp(p), dim }
    }

    pub fn poly_ball(rows: Vec<Vecq>, dim: usize) -> NormSpec {
        NormSpec { kind: NormKind::PolyBall { rows }, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Validation { reason: "norm dimension must be at least 1".into() });
        }
        match &self.kind {
            NormKind::Lp(LpExp::General(p)) => {
                if p <= &Rational::one() {
                    return Err(Error::Validation {
                        reason: format!("lp exponent must satisfy p ≥ 1, got {p}"),
                    });
                }
                Ok(())
            }
            NormKind::Lp(_) => Ok(()),
            NormKind::PolyBall { rows } => {
                if rows.is_empty() {
                    return Err(Error::Validation { reason: "polyhedral ball needs facet rows".into() });
                }
                for h in rows {
                    if h.len() != self.dim {
                        return Err(Error::DimensionMismatch { expected: self.dim, got: h.len() });
                    }
                    if linalg::is_zero_vec(h) {
                        return Err(Error::Validation { reason: "zero ball facet row".into() });
                    }
                    let neg = linalg::neg(h);
                    if !rows.contains(&neg) {
                        return Err(Error::Validation {
                            reason: "polyhedral ball must be symmetric: missing the negated row".into(),
                        });
                    }
                }
                if linalg::rank(rows) != self.dim {
                    return Err(Error::Validation {
                        reason: "polyhedral ball is unbounded: facet rows do not have full rank".into(),
                    });
                }
                Ok(())
            }
        }
    }

    /// Is the norm value rational for rational inputs?
    pub fn is_rational_path(&self) -> bool {
        matches!(
            self.kind,
            NormKind::Lp(LpExp::One) | NormKind::Lp(LpExp::Infinity) | NormKind::PolyBall { .. }
        )
    }

    /// Facet rows of the unit ball when polyhedral (ℓ1, ℓ∞, explicit ball).
    pub fn ball_rows(&self) -> Option<Vec<Vecq>> {
        match &self.kind {
            NormKind::PolyBall { rows } => Some(rows.clone()),
            NormKind::Lp(LpExp::Infinity) => {
                let mut rows = Vec::with_capacity(2 * self.dim);
                for i in 0..self.dim {
                    let mut r = linalg::zeros(self.dim);
                    r[i] = Rational::one();
                    rows.push(r.clone());
                    rows.push(linalg::neg(&r));
                }
                Some(rows)
            }
            NormKind::Lp(LpExp::One) => {
                assert!(self.dim <= 12, "ℓ1 ball facet enumeration limited to dim ≤ 12");
                let mut rows = Vec::with_capacity(1 << self.dim);
                for mask in 0..(1u32 << self.dim) {
                    let row: Vecq = (0..self.dim)
                        .map(|i| if mask & (1 << i) != 0 { -Rational::one() } else { Rational::one() })
                        .collect();
                    rows.push(row);
                }
                Some(rows)
            }
            NormKind::Lp(LpExp::Two) | NormKind::Lp(LpExp::General(_)) => None,
        }
    }

    /// `‖x‖_X` as a scalar: exact on rational paths, tolerance-tagged floats
    /// on the ℓ2 and general-p paths.
    pub fn eval(&self, x: &[Rational]) -> Scalar {
        match &self.kind {
            NormKind::Lp(LpExp::One) => {
                Scalar::Rational(x.iter().map(|v| v.abs()).fold(Rational::zero(), |a, b| a + b))
            }
            NormKind::Lp(LpExp::Infinity) => {
                Scalar::Rational(x.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero))
            }
            NormKind::PolyBall { rows } => {
                let g = rows
                    .iter()
                    .map(|h| linalg::dot(h, x))
                    .max()
                    .unwrap_or_else(Rational::zero);
                Scalar::Rational(if g.is_negative() { Rational::zero() } else { g })
            }
            NormKind::Lp(LpExp::Two) => {
                let s: f64 = x.iter().map(|v| rational_to_f64(v).powi(2)).sum();
                Scalar::approx(s.sqrt())
            }
            NormKind::Lp(LpExp::General(p)) => {
                let pf = rational_to_f64(p);
                let s: f64 = x.iter().map(|v| rational_to_f64(v).abs().powf(pf)).sum();
                Scalar::approx(s.powf(1.0 / pf))
            }
        }
    }

    /// Exact `Σ x_i²` for the ℓ2 closed forms.
    fn sum_squares(x: &[Rational]) -> Rational {
        x.iter().map(|v| v * v).fold(Rational::zero(), |a, b| a + b)
    }

    /// Three-valued `‖x‖ ≤ c`. Exact on rational paths and on ℓ2 (compared
    /// through squares); undecided only inside the general-p band.
    pub fn le_const(&self, x: &[Rational], c: &Rational) -> Tri {
        match &self.kind {
            NormKind::Lp(LpExp::Two) => {
                if c.is_negative() {
                    return Tri::False;
                }
                Tri::from_bool(Self::sum_squares(x) <= c * c)
            }
            NormKind::Lp(LpExp::General(_)) => {
                let v = self.eval(x).to_f64();
                let slack = rational_to_f64(c) - v;
                if slack > SPECTRAL_TOL {
                    Tri::True
                } else if slack < -SPECTRAL_TOL {
                    Tri::False
                } else if linalg::is_zero_vec(x) && !c.is_negative() {
                    Tri::True
                } else {
                    Tri::Undecided
                }
            }
            _ => {
                let Scalar::Rational(v) = self.eval(x) else { unreachable!() };
                Tri::from_bool(v <= *c)
            }
        }
    }

    /// `‖x‖ = c`, exact where possible and within the 1e−9 band on the
    /// general-p path.
    pub fn eq_const(&self, x: &[Rational], c: &Rational) -> bool {
        match &self.kind {
            NormKind::Lp(LpExp::Two) => !c.is_negative() && Self::sum_squares(x) == c * c,
            NormKind::Lp(LpExp::General(_)) => {
                (self.eval(x).to_f64() - rational_to_f64(c)).abs() <= SPECTRAL_TOL
            }
            _ => {
                let Scalar::Rational(v) = self.eval(x) else { unreachable!() };
                &v == c
            }
        }
    }

    pub fn is_strictly_convex_kind(&self) -> bool {
        matches!(self.kind, NormKind::Lp(LpExp::Two) | NormKind::Lp(LpExp::General(_)))
    }
}

/// Build the validated adjoined space over the given norm.
pub fn adjoin(norm: NormSpec) -> Result<SpaceRef> {
    SpaceRef::adjoined(norm)
}

fn pair_of<'a>(space: &SpaceRef, v: &'a Element) -> Result<(&'a Rational, &'a Vecq)> {
    if v.space() != space {
        return Err(Error::SpaceMismatch);
    }
    v.as_pair().ok_or(Error::SpaceMismatch)
}

/// Membership of `(α, x)` in `S_{X̃}`, decided by the closed form
/// `α = ½ ∧ ‖x‖ = ½` and cross-checked against the generic S_V test.
pub fn s_membership_adjoined(space: &SpaceRef, v: &Element) -> Result<Decision> {
    let norm = space.norm_spec()?;
    let (alpha, x) = pair_of(space, v)?;
    let half = rat(1, 2);
    let formula = *alpha == half && norm.eq_const(x, &half);
    let generic = crate::projections::sv_membership(space, v)?;
    let exactness = if norm.is_rational_path() || matches!(norm.kind, NormKind::Lp(LpExp::Two)) {
        Exactness::Exact
    } else {
        Exactness::Toleranced
    };
    let d = Decision::new(formula)
        .with_route("half-half-formula", formula, exactness)
        .with_route("generic-sv", generic.holds, exactness);
    d.check_routes("s_membership_adjoined")?;
    Ok(d)
}

/// Witness segment for a non-extreme boundary point: `(y, z)` on the
/// `radius`-sphere with `x = (y + z)/2` and `y ≠ z`.
#[derive(Debug, Clone)]
pub struct SphereSegment {
    pub y: Vecq,
    pub z: Vecq,
}

/// Is `x` an extreme point of the `radius`-ball of `X`?
///
/// Strictly convex exponents are always extreme on the sphere; ℓ1, ℓ∞ and
/// explicit polyhedral balls get the exact vertex test with a sphere-segment
/// witness on failure.
pub fn is_extreme_ball_point(
    norm: &NormSpec,
    x: &Vecq,
    radius: &Rational,
) -> Result<(Decision, Option<SphereSegment>)> {
    if x.len() != norm.dim() {
        return Err(Error::DimensionMismatch { expected: norm.dim(), got: x.len() });
    }
    if radius.is_negative() {
        return Err(Error::Precondition("ball radius must be nonnegative".into()));
    }
    if !norm.eq_const(x, radius) {
        return Err(Error::Precondition(format!(
            "is_extreme_ball_point requires ‖x‖ = {radius}"
        )));
    }
    if radius.is_zero() {
        return Ok((Decision::new(true).with_route("zero-ball", true, Exactness::Exact), None));
    }
    if norm.is_strictly_convex_kind() {
        let exactness = if matches!(norm.kind, NormKind::Lp(LpExp::Two)) {
            Exactness::Exact
        } else {
            Exactness::Toleranced
        };
        return Ok((
            Decision::new(true).with_route("strictly-convex-ball", true, exactness),
            None,
        ));
    }
    let rows = norm.ball_rows().expect("non-strict kinds have polyhedral balls");
    let active: Vec<Vecq> = rows
        .iter()
        .filter(|h| &linalg::dot(h, x) == radius)
        .cloned()
        .collect();
    if linalg::rank(&active) == norm.dim() {
        return Ok((Decision::new(true).with_route("ball-vertex", true, Exactness::Exact), None));
    }
    // not a vertex: slide along a direction that keeps every active row
    // tight; the |⟨h, d⟩| bound protects both endpoints at once
    let d = linalg::null_space(&active, norm.dim())
        .into_iter()
        .next()
        .expect("rank deficit leaves a free direction");
    let mut eps: Option<Rational> = None;
    for h in &rows {
        let hd = linalg::dot(h, &d).abs();
        if hd.is_positive() {
            let room = (radius - linalg::dot(h, x)) / hd;
            if eps.as_ref().map_or(true, |e| room < *e) {
                eps = Some(room);
            }
        }
    }
    let eps = eps.expect("bounded ball bounds every direction");
    debug_assert!(eps.is_positive());
    let step = linalg::scale(&d, &eps);
    let seg = SphereSegment { y: linalg::add(x, &step), z: linalg::sub(x, &step) };
    debug_assert!(norm.eq_const(&seg.y, radius) && norm.eq_const(&seg.z, radius));
    let witness_pair = seg.clone();
    Ok((
        Decision::new(false).with_route("ball-vertex", false, Exactness::Exact),
        Some(witness_pair),
    ))
}

/// Export an adjoined space with a polyhedral ball to the generic polyhedral
/// backend: facet rows `(1, −h)` reproduce cone membership and the norm
/// `|α| + ‖x‖` exactly.
pub fn export_polyhedral(space: &SpaceRef) -> Result<SpaceRef> {
    let norm = space.norm_spec()?;
    let rows = norm.ball_rows().ok_or_else(|| Error::UnsupportedBackend {
        backend: Backend::Adjoined.name().to_string(),
        detail: "export requires a polyhedral ball (ℓ1, ℓ∞ or explicit facets)".to_string(),
    })?;
    let n = norm.dim();
    let facets: Vec<Vecq> = rows
        .iter()
        .map(|h| {
            let mut a = Vec::with_capacity(n + 1);
            a.push(Rational::one());
            a.extend(h.iter().map(|v| -v));
            a
        })
        .collect();
    let mut unit = linalg::zeros(n + 1);
    unit[0] = Rational::one();
    SpaceRef::polyhedral(Some(facets), None, unit)
}

/// Map `(α, x)` to its coordinates `[α, x…]` in the exported space.
pub fn to_exported(exported: &SpaceRef, v: &Element) -> Result<Element> {
    let (alpha, x) = v.as_pair().ok_or(Error::SpaceMismatch)?;
    let mut coords = Vec::with_capacity(x.len() + 1);
    coords.push(alpha.clone());
    coords.extend(x.iter().cloned());
    Element::vector(exported, coords)
}

/// Map exported coordinates back to an adjoined pair.
pub fn from_exported(space: &SpaceRef, v: &Element) -> Result<Element> {
    let coords = v.as_vec().ok_or(Error::SpaceMismatch)?;
    Element::pair(space, coords[0].clone(), coords[1..].to_vec())
}

/// OUP of `(α, x)` in the adjoined space, decided through ball extremality
/// and guarded by the exported generic decision and the sampling oracle.
pub fn oup_adjoined(space: &SpaceRef, v: &Element) -> Result<Decision> {
    let norm = space.norm_spec()?.clone();
    let (_, x) = pair_of(space, v)?;
    let x = x.clone();
    if v.is_zero() || v.is_unit() {
        return Ok(Decision::trivial(true).with_route("trivial", true, Exactness::Exact));
    }
    // the decision surface is the positive contractions
    if space.cone_membership(v)?.0 == Tri::True {
        let over_one = match space.norm(v)? {
            Scalar::Rational(q) => q > Rational::one(),
            Scalar::Approx { value, .. } => value > 1.0 + SPECTRAL_TOL,
        };
        if over_one {
            return Err(Error::Precondition(
                "oup is decided for positive contractions: ‖v‖ ≤ 1 required".into(),
            ));
        }
    }

    let s = s_membership_adjoined(space, v)?;
    let mut decision = if !s.holds {
        Decision::new(false)
            .with_route("s-membership", false, Exactness::Exact)
            .with_witness(Witness::Element(v.clone()))
    } else {
        let half = rat(1, 2);
        let (extreme, segment) = is_extreme_ball_point(&norm, &x, &half)?;
        let mut d = Decision::new(extreme.holds);
        for r in &extreme.routes {
            d = d.with_route(&format!("ball-extremality/{}", r.name), r.holds, r.exactness);
        }
        if let Some(seg) = segment {
            // (¼, ½z) lies in [0, (½,x)] but outside ℝ(½,x)
            let w = Element::pair(space, rat(1, 4), linalg::scale(&seg.z, &half))?;
            d = d.with_witness(Witness::Element(w));
        }
        d
    };

    // mandatory cross-validation of the reduction
    if norm.ball_rows().is_some() {
        let exported = export_polyhedral(space)?;
        let ev = to_exported(&exported, v)?;
        let generic = crate::projections::has_oup(&exported, &ev)?;
        decision = decision.with_route("export-generic", generic.decision.holds, Exactness::Exact);
    }
    let falsifier = crate::oracle::falsify_oup(space, v, OUP_ORACLE_TRIALS, OUP_ORACLE_SEED)?;
    decision = decision.with_route("definition-falsifier", falsifier.holds, Exactness::Sampled);
    decision.check_routes("oup_adjoined")?;
    Ok(decision)
}

const OUP_ORACLE_TRIALS: usize = 128;
const OUP_ORACLE_SEED: u64 = 0xA11CE;

/// Strict convexity of `X`: no nondegenerate segment on the unit sphere.
/// Cross-checked by per-point OUP decisions on sampled `½`-sphere points.
pub fn strict_convexity(norm: &NormSpec, samples: usize, seed: u64) -> Result<Decision> {
    norm.validate()?;
    let half = rat(1, 2);
    let (verdict, witness): (bool, Option<SphereSegment>) = if norm.dim() == 1 {
        (true, None)
    } else {
        match &norm.kind {
            NormKind::Lp(LpExp::Two) | NormKind::Lp(LpExp::General(_)) => (true, None),
            NormKind::Lp(LpExp::One) => {
                let mut y = linalg::zeros(norm.dim());
                y[0] = half.clone();
                let mut z = linalg::zeros(norm.dim());
                z[1] = half.clone();
                (false, Some(SphereSegment { y, z }))
            }
            NormKind::Lp(LpExp::Infinity) => {
                let mut y = linalg::zeros(norm.dim());
                y[0] = half.clone();
                y[1] = half.clone();
                let mut z = linalg::zeros(norm.dim());
                z[0] = half.clone();
                z[1] = -half.clone();
                (false, Some(SphereSegment { y, z }))
            }
            NormKind::PolyBall { .. } => {
                let seg = poly_ball_sphere_segment(norm, &half)?;
                (false, Some(seg))
            }
        }
    };

    let space = adjoin(norm.clone())?;
    let exactness =
        if matches!(norm.kind, NormKind::Lp(LpExp::General(_))) { Exactness::Toleranced } else { Exactness::Exact };
    let mut d = Decision::new(verdict).with_route("ball-geometry", verdict, exactness);
    if let Some(seg) = &witness {
        debug_assert!(norm.eq_const(&seg.y, &half) && norm.eq_const(&seg.z, &half));
        let wy = Element::pair(&space, half.clone(), seg.y.clone())?;
        let wz = Element::pair(&space, half.clone(), seg.z.clone())?;
        d = d.with_witness(Witness::Pair(wy, wz));
    }

    // sampled agreement with the per-point OUP decisions
    let mut all_oup = true;
    let mut rng = crate::oracle::trial_rng(seed, 0);
    for trial in 0..samples {
        let x = if let (Some(seg), true) = (&witness, trial % 4 == 0) {
            // exercise the witness segment as well as generic points
            interpolate_segment(seg, trial)
        } else {
            sample_sphere(norm, &half, &mut rng)
        };
        let v = Element::pair(&space, half.clone(), x)?;
        if !oup_adjoined(&space, &v)?.holds {
            all_oup = false;
            break;
        }
    }
    d = d.with_route("per-point-oup", all_oup, Exactness::Sampled);
    d.check_routes("strict_convexity")?;
    Ok(d)
}

fn interpolate_segment(seg: &SphereSegment, trial: usize) -> Vecq {
    let t = rat(1 + (trial as i64 % 5), 8); // points strictly inside the segment
    let one_minus = Rational::one() - t.clone();
    linalg::add(&linalg::scale(&seg.y, &t), &linalg::scale(&seg.z, &one_minus))
}

/// A nondegenerate segment on the `radius`-sphere, when one exists (that
/// is, for non-strictly-convex polyhedral kinds in dimension ≥ 2).
pub fn sphere_segment(norm: &NormSpec, radius: &Rational) -> Result<Option<SphereSegment>> {
    if norm.dim() < 2 || norm.is_strictly_convex_kind() {
        return Ok(None);
    }
    poly_ball_sphere_segment(norm, radius).map(Some)
}

fn poly_ball_sphere_segment(norm: &NormSpec, radius: &Rational) -> Result<SphereSegment> {
    let rows = norm.ball_rows().expect("polyhedral ball");
    let facets: Vec<crate::polyhedral::Halfspace> = rows
        .iter()
        .map(|h| crate::polyhedral::Halfspace::new(h.clone(), radius.clone()))
        .collect();
    let vertices = crate::polyhedral::dd::vertices_of(&facets, &[], norm.dim())?;
    for h in &rows {
        let on: Vec<&Vecq> = vertices.iter().filter(|v| &linalg::dot(h, v) == radius).collect();
        if on.len() >= 2 {
            return Ok(SphereSegment { y: on[0].clone(), z: on[1].clone() });
        }
    }
    Err(Error::TheoremViolation {
        op: "strict_convexity".into(),
        detail: "polyhedral ball of dimension ≥ 2 must have a facet with two vertices".into(),
    })
}

/// Random rational point with `‖x‖ = radius` exactly (approximately on the
/// general-p path).
pub fn sample_sphere(norm: &NormSpec, radius: &Rational, rng: &mut rand_chacha::ChaCha8Rng) -> Vecq {
    use rand::Rng;
    let n = norm.dim();
    match &norm.kind {
        NormKind::Lp(LpExp::Two) => {
            // stereographic parametrization: rational points, exact ℓ2 norm
            let t: Vecq = (0..n - 1).map(|_| rat(rng.random_range(-12i64..=12), 8)).collect();
            let s = NormSpec::sum_squares(&t);
            let denom = Rational::one() + s.clone();
            let mut x = Vec::with_capacity(n);
            let first = (Rational::one() - s) / denom.clone();
            let sign = if rng.random_bool(0.5) { Rational::one() } else { -Rational::one() };
            x.push(radius * first * sign);
            for ti in &t {
                x.push(radius * rat(2, 1) * ti / denom.clone());
            }
            let k = rng.random_range(0..n);
            x.rotate_left(k);
            x
        }
        NormKind::Lp(LpExp::General(_)) => loop {
            let d: Vecq = (0..n).map(|_| rat(rng.random_range(-12i64..=12), 4)).collect();
            if linalg::is_zero_vec(&d) {
                continue;
            }
            let g = norm.eval(&d).to_f64();
            let s = rational_to_f64(radius) / g;
            let sq = Rational::from_float(s).unwrap();
            return linalg::scale(&d, &sq);
        },
        _ => loop {
            let d: Vecq = (0..n).map(|_| rat(rng.random_range(-12i64..=12), 4)).collect();
            if linalg::is_zero_vec(&d) {
                continue;
            }
            let Scalar::Rational(g) = norm.eval(&d) else { unreachable!() };
            if g.is_zero() {
                continue;
            }
            return linalg::scale(&d, &(radius / g));
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn linf2() -> SpaceRef {
        adjoin(NormSpec::lp(LpExp::Infinity, 2)).unwrap()
    }

    fn pr(space: &SpaceRef, a: (i64, i64), xs: &[(i64, i64)]) -> Element {
        Element::pair(space, rat(a.0, a.1), xs.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn adjoined_norm_and_membership() {
        let s = linf2();
        let v = pr(&s, (1, 2), &[(1, 4), (-1, 4)]);
        assert_eq!(s.norm(&v).unwrap(), Scalar::Rational(rat(3, 4)));
        assert!(s.cone_contains(&v).unwrap());
        let v = pr(&s, (1, 2), &[(1, 2), (0, 1)]);
        assert_eq!(s.norm(&v).unwrap(), Scalar::Rational(rat_int(1)));

        let l2 = adjoin(NormSpec::lp(LpExp::Two, 3)).unwrap();
        let inside = pr(&l2, (1, 1), &[(3, 5), (4, 5), (0, 1)]);
        assert!(l2.cone_contains(&inside).unwrap());
        let outside = pr(&l2, (1, 1), &[(3, 5), (4, 5), (1, 10)]);
        assert!(!l2.cone_contains(&outside).unwrap());
    }

    #[test]
    fn s_membership_examples() {
        let s = linf2();
        assert!(s_membership_adjoined(&s, &pr(&s, (1, 2), &[(1, 2), (0, 1)])).unwrap().holds);
        assert!(!s_membership_adjoined(&s, &pr(&s, (1, 4), &[(1, 4), (0, 1)])).unwrap().holds);
        assert!(!s_membership_adjoined(&s, &pr(&s, (1, 2), &[(1, 4), (0, 1)])).unwrap().holds);
    }

    #[test]
    fn extreme_ball_points() {
        let l2 = NormSpec::lp(LpExp::Two, 2);
        let (d, _) = is_extreme_ball_point(&l2, &vec![rat(1, 2), rat_int(0)], &rat(1, 2)).unwrap();
        assert!(d.holds);

        let linf = NormSpec::lp(LpExp::Infinity, 2);
        let (d, seg) = is_extreme_ball_point(&linf, &vec![rat(1, 2), rat_int(0)], &rat(1, 2)).unwrap();
        assert!(!d.holds);
        let seg = seg.unwrap();
        assert_eq!(seg.y, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(seg.z, vec![rat(1, 2), rat(-1, 2)]);

        let (d, _) = is_extreme_ball_point(&linf, &vec![rat(1, 2), rat(1, 2)], &rat(1, 2)).unwrap();
        assert!(d.holds);

        // precondition: x must sit on the sphere
        assert!(is_extreme_ball_point(&linf, &vec![rat(1, 4), rat_int(0)], &rat(1, 2)).is_err());
    }

    #[test]
    fn export_agrees_on_norm_and_membership() {
        let s = linf2();
        let exported = export_polyhedral(&s).unwrap();
        assert_eq!(exported.dim(), 3);
        assert_eq!(exported.facets().unwrap().len(), 4);
        let mut rng = crate::oracle::trial_rng(3, 0);
        use rand::Rng;
        for _ in 0..200 {
            let v = pr(
                &s,
                (rng.random_range(-8i64..=8), 4),
                &[(rng.random_range(-8i64..=8), 4), (rng.random_range(-8i64..=8), 4)],
            );
            let ev = to_exported(&exported, &v).unwrap();
            assert_eq!(s.norm(&v).unwrap(), exported.norm(&ev).unwrap());
            assert_eq!(s.cone_contains(&v).unwrap(), exported.cone_contains(&ev).unwrap());
        }
        assert!(export_polyhedral(&adjoin(NormSpec::lp(LpExp::Two, 2)).unwrap()).is_err());
    }

    #[test]
    fn oup_examples() {
        let l2 = adjoin(NormSpec::lp(LpExp::Two, 2)).unwrap();
        let v = pr(&l2, (1, 2), &[(1, 2), (0, 1)]);
        assert!(oup_adjoined(&l2, &v).unwrap().holds);

        let s = linf2();
        let v = pr(&s, (1, 2), &[(1, 2), (0, 1)]);
        let d = oup_adjoined(&s, &v).unwrap();
        assert!(!d.holds);
        match d.witness {
            Some(Witness::Element(w)) => {
                let (a, x) = w.as_pair().unwrap();
                assert_eq!(a, &rat(1, 4));
                assert_eq!(x, &vec![rat(1, 4), rat(-1, 4)]);
                // the witness certifies the failure: w ∈ [0, v] but
                // ‖w‖ v − w ∉ V⁺
                assert!(s.cone_contains(&w).unwrap());
                assert!(s.cone_contains(&v.sub(&w).unwrap()).unwrap());
                let nw = s.norm(&w).unwrap().as_rational().unwrap().clone();
                let bad = v.scale_rational(&nw).sub(&w).unwrap();
                assert!(!s.cone_contains(&bad).unwrap());
            }
            _ => panic!("expected the (¼, ½z) witness"),
        }

        // vertices of the cube are extreme, so they do have the property
        let v = pr(&s, (1, 2), &[(1, 2), (1, 2)]);
        assert!(oup_adjoined(&s, &v).unwrap().holds);
        // trivial elements
        assert!(oup_adjoined(&s, &s.unit()).unwrap().trivial);
    }

    #[test]
    fn strict_convexity_examples() {
        assert!(strict_convexity(&NormSpec::lp(LpExp::Two, 3), 40, 7).unwrap().holds);
        assert!(strict_convexity(&NormSpec::lp(LpExp::Infinity, 1), 40, 7).unwrap().holds);
        let d = strict_convexity(&NormSpec::lp(LpExp::One, 2), 40, 7).unwrap();
        assert!(!d.holds);
        match d.witness {
            Some(Witness::Pair(y, z)) => {
                assert_eq!(y.as_pair().unwrap().1, &vec![rat(1, 2), rat_int(0)]);
                assert_eq!(z.as_pair().unwrap().1, &vec![rat_int(0), rat(1, 2)]);
            }
            _ => panic!("expected a segment witness"),
        }
    }

    #[test]
    fn sphere_sampler_exact() {
        let mut rng = crate::oracle::trial_rng(5, 0);
        let half = rat(1, 2);
        for kind in [
            NormSpec::lp(LpExp::Two, 3),
            NormSpec::lp(LpExp::One, 2),
            NormSpec::lp(LpExp::Infinity, 4),
        ] {
            for _ in 0..50 {
                let x = sample_sphere(&kind, &half, &mut rng);
                assert!(kind.eq_const(&x, &half), "sample off the sphere for {kind:?}");
            }
        }
    }
}
