//! Independent, definition-level randomized falsifiers.
//!
//! These evaluate the defining equalities directly through norm and cone
//! membership, never through the reductions they guard. Every negative
//! verdict re-checks its witness before surfacing, and every run is
//! deterministic in the seed: trial `i` uses stream `i` of a ChaCha stream
//! cipher seeded once.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adjoined;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix;
use crate::polyhedral;
use crate::scalar::{rat, rat_int, Rational, Scalar, ORACLE_TOL};
use crate::space::{Backend, Decision, Element, Exactness, SpaceRef, Tri, Witness};

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub const DEFAULT_GRID_DEPTH: i32 = 5;

/// The sampled quantifier for "for all k ∈ ℝ": always contains {0, ±1}, the
/// critical ratios ±‖x‖/‖y‖, and the geometric ladder ±2^j.
#[derive(Debug, Clone)]
pub struct KGrid {
    entries: Vec<Scalar>,
}

impl KGrid {
    pub fn for_pair(x: &Element, y: &Element, depth: i32) -> Result<KGrid> {
        let space = x.space();
        let nx = space.norm(x)?;
        let ny = space.norm(y)?;
        let rational = nx.is_exact() && ny.is_exact();
        if rational {
            let mut vals: Vec<Rational> = vec![Rational::zero(), Rational::one(), -Rational::one()];
            if let (Some(a), Some(b)) = (nx.as_rational(), ny.as_rational()) {
                if !b.is_zero() {
                    let r = a / b;
                    vals.push(r.clone());
                    vals.push(-r);
                }
            }
            for j in -depth..=depth {
                let p = pow2(j);
                vals.push(p.clone());
                vals.push(-p);
            }
            vals.sort();
            vals.dedup();
            Ok(KGrid { entries: vals.into_iter().map(Scalar::Rational).collect() })
        } else {
            let mut vals: Vec<f64> = vec![0.0, 1.0, -1.0];
            let (a, b) = (nx.to_f64(), ny.to_f64());
            if b > 0.0 {
                vals.push(a / b);
                vals.push(-a / b);
            }
            for j in -depth..=depth {
                let p = 2f64.powi(j);
                vals.push(p);
                vals.push(-p);
            }
            vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
            vals.dedup();
            Ok(KGrid { entries: vals.into_iter().map(Scalar::approx).collect() })
        }
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }
}

fn pow2(j: i32) -> Rational {
    if j >= 0 {
        rat_int(1i64 << j)
    } else {
        rat(1, 1i64 << (-j))
    }
}

fn norms_equal(lhs: &Scalar, rhs: &Scalar) -> bool {
    match (lhs, rhs) {
        (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
        (a, b) => (a.to_f64() - b.to_f64()).abs() <= ORACLE_TOL,
    }
}

fn scalar_abs_mul(k: &Scalar, n: &Scalar) -> Scalar {
    match (k, n) {
        (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.abs() * b),
        (a, b) => Scalar::approx(a.to_f64().abs() * b.to_f64()),
    }
}

fn scalar_max(a: Scalar, b: Scalar) -> Scalar {
    match (&a, &b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => {
            if x >= y {
                a
            } else {
                b
            }
        }
        _ => {
            if a.to_f64() >= b.to_f64() {
                a
            } else {
                b
            }
        }
    }
}

fn scalar_add(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
        _ => Scalar::approx(a.to_f64() + b.to_f64()),
    }
}

/// Check `‖x + ky‖ = max(‖x‖, ‖ky‖)` for every grid multiplier.
pub fn perp_inf_defn_check(x: &Element, y: &Element, grid: &KGrid) -> Result<Decision> {
    defn_check(x, y, grid, true)
}

/// Check `‖x + ky‖ = ‖x‖ + ‖ky‖` for every grid multiplier.
pub fn perp_one_defn_check(x: &Element, y: &Element, grid: &KGrid) -> Result<Decision> {
    defn_check(x, y, grid, false)
}

fn defn_check(x: &Element, y: &Element, grid: &KGrid, take_max: bool) -> Result<Decision> {
    let space = x.space();
    if y.space() != space {
        return Err(Error::SpaceMismatch);
    }
    let nx = space.norm(x)?;
    let ny = space.norm(y)?;
    let exactness = if nx.is_exact() && ny.is_exact() { Exactness::Exact } else { Exactness::Toleranced };
    let name = if take_max { "inf-defn-grid" } else { "one-defn-grid" };
    for k in grid.entries() {
        let ky = y.scale_scalar(k)?;
        let lhs = space.norm(&x.add(&ky)?)?;
        let kn = scalar_abs_mul(k, &ny);
        let rhs = if take_max { scalar_max(nx.clone(), kn) } else { scalar_add(&nx, &kn) };
        if !norms_equal(&lhs, &rhs) {
            // witness soundness: re-evaluate the violated equality afresh
            let again = space.norm(&x.add(&y.scale_scalar(k)?)?)?;
            debug_assert!(!norms_equal(&again, &rhs));
            return Ok(Decision::new(false)
                .with_route(name, false, exactness)
                .with_tolerance(ORACLE_TOL)
                .with_witness(Witness::Scale { k: k.clone(), x: x.clone(), y: y.clone() }));
        }
    }
    Ok(Decision::new(true).with_route(name, true, exactness).with_tolerance(ORACLE_TOL))
}

/// Random convex combinations of the vertices of `[a, b]`, exchangeable
/// integer weights, exact containment, deterministic per seed.
pub fn sample_interval_polyhedral(
    space: &SpaceRef,
    a: &Element,
    b: &Element,
    count: usize,
    seed: u64,
) -> Result<Vec<Element>> {
    let iv = polyhedral::interval(space, a, b)?;
    if iv.is_empty() {
        return Err(Error::EmptyInterval);
    }
    let verts = iv.vertices();
    let mut out = Vec::with_capacity(count);
    for trial in 0..count {
        let mut rng = trial_rng(seed, trial as u64);
        out.push(Element::vector(space, convex_combination(verts, &mut rng))?);
    }
    Ok(out)
}

fn convex_combination(verts: &[linalg::Vecq], rng: &mut ChaCha8Rng) -> linalg::Vecq {
    // sparse exchangeable weights over a random support of bounded size
    let k = rng.random_range(1..=verts.len().min(6));
    let mut weights: Vec<(usize, i64)> = Vec::with_capacity(k);
    let mut total = 0i64;
    for _ in 0..k {
        let i = rng.random_range(0..verts.len());
        let w = rng.random_range(1i64..=8);
        weights.push((i, w));
        total += w;
    }
    let dim = verts[0].len();
    let mut x = linalg::zeros(dim);
    for (i, w) in weights {
        x = linalg::add(&x, &linalg::scale(&verts[i], &rat(w, total)));
    }
    x
}

/// Try to falsify the order unit property of `u` straight from its norm
/// characterization: sample `v ∈ [−u, u]` and test
/// `‖ ‖v‖(e − u) ± v ‖ = ‖v‖`. A `false` always carries a re-checked
/// witness; `true` only means "not falsified".
pub fn falsify_oup(space: &SpaceRef, u: &Element, trials: usize, seed: u64) -> Result<Decision> {
    if space.cone_membership(u)?.0 == Tri::False {
        return Err(Error::Precondition("falsify_oup requires u ∈ V⁺".into()));
    }
    let candidates = interval_candidates(space, u, trials, seed)?;
    let e = space.unit();
    let e_minus_u = e.sub(u)?;
    let exact = space.norm(u)?.is_exact();
    for v in candidates {
        if v.is_zero() {
            continue;
        }
        let nv = space.norm(&v)?;
        let base = e_minus_u.scale_scalar(&nv)?;
        let plus = space.norm(&base.add(&v)?)?;
        let minus = space.norm(&base.sub(&v)?)?;
        if !norms_equal(&plus, &nv) || !norms_equal(&minus, &nv) {
            return Ok(Decision::new(false)
                .with_route("lemma-equality", false, if exact { Exactness::Sampled } else { Exactness::Sampled })
                .with_tolerance(ORACLE_TOL)
                .with_witness(Witness::Element(v)));
        }
    }
    Ok(Decision::new(true)
        .with_route("lemma-equality", true, Exactness::Sampled)
        .with_tolerance(ORACLE_TOL))
}

/// Deterministic-first candidate list for `[−u, u]`: the interval vertices
/// (polyhedral), the eigendirection probes (matrix), or the segment through
/// `±u` (non-exportable adjoined), followed by seeded random samples.
fn interval_candidates(
    space: &SpaceRef,
    u: &Element,
    trials: usize,
    seed: u64,
) -> Result<Vec<Element>> {
    match space.backend() {
        Backend::Polyhedral => {
            let iv = polyhedral::interval(space, &u.neg(), u)?;
            let mut out = iv.vertex_elements()?;
            if !iv.is_empty() {
                let n = trials.saturating_sub(out.len());
                for trial in 0..n {
                    let mut rng = trial_rng(seed, trial as u64);
                    out.push(Element::vector(space, convex_combination(iv.vertices(), &mut rng))?);
                }
            }
            Ok(out)
        }
        Backend::SymMatrix => {
            let m = u.as_mat().expect("matrix backend");
            let mut out: Vec<Element> = matrix::interval_probes(m)
                .into_iter()
                .map(|w| Element::matrix(space, w))
                .collect::<Result<_>>()?;
            for w in matrix::sample_interval(m, trials.saturating_sub(out.len()), seed)? {
                out.push(Element::matrix(space, w)?);
            }
            Ok(out)
        }
        Backend::Adjoined => {
            if adjoined::export_polyhedral(space).is_ok() {
                let exported = adjoined::export_polyhedral(space)?;
                let eu = adjoined::to_exported(&exported, u)?;
                let iv = polyhedral::interval(&exported, &eu.neg(), &eu)?;
                let mut out = Vec::new();
                for v in iv.vertices() {
                    out.push(adjoined::from_exported(space, &Element::vector(&exported, v.clone())?)?);
                }
                if !iv.is_empty() {
                    for trial in 0..trials.saturating_sub(out.len()) {
                        let mut rng = trial_rng(seed, trial as u64);
                        let v = Element::vector(&exported, convex_combination(iv.vertices(), &mut rng))?;
                        out.push(adjoined::from_exported(space, &v)?);
                    }
                }
                Ok(out)
            } else {
                // strictly convex balls: the interval is the segment [−u, u]·t
                let mut out = vec![u.clone(), u.neg()];
                for trial in 0..trials {
                    let mut rng = trial_rng(seed, trial as u64);
                    let t = rat(rng.random_range(-16i64..=16), 16);
                    out.push(u.scale_rational(&t));
                }
                Ok(out)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    /// quantify over [0, u] × [0, v]
    Abs,
    /// quantify over [−u, u] × [−v, v]
    Ext,
}

/// Sample the quantified set-orthogonality definitions and grid-check each
/// sampled pair.
pub fn falsify_perp_set(
    space: &SpaceRef,
    u: &Element,
    v: &Element,
    kind: SetKind,
    trials: usize,
    seed: u64,
    depth: i32,
) -> Result<Decision> {
    for w in [u, v] {
        if space.cone_membership(w)?.0 == Tri::False {
            return Err(Error::Precondition("falsify_perp_set requires positive arguments".into()));
        }
    }
    let us = set_candidates(space, u, kind, trials, seed)?;
    let vs = set_candidates(space, v, kind, trials, seed ^ 0x9E37_79B9)?;
    let pairs = us.len().min(vs.len());
    for i in 0..pairs {
        let (u0, v0) = (&us[i], &vs[i]);
        if u0.is_zero() || v0.is_zero() {
            continue;
        }
        let grid = KGrid::for_pair(u0, v0, depth)?;
        let check = perp_inf_defn_check(u0, v0, &grid)?;
        if !check.holds {
            return Ok(Decision::new(false)
                .with_route("set-defn-sampler", false, Exactness::Sampled)
                .with_tolerance(ORACLE_TOL)
                .with_witness(check.witness.unwrap()));
        }
    }
    // vertex pairs carry the extremes on the polyhedral backend; cross them
    if space.backend() == Backend::Polyhedral {
        let uverts = interval_vertices_for(space, u, kind)?;
        let vverts = interval_vertices_for(space, v, kind)?;
        for u0 in uverts.iter().take(24) {
            for v0 in vverts.iter().take(24) {
                if u0.is_zero() || v0.is_zero() {
                    continue;
                }
                let grid = KGrid::for_pair(u0, v0, depth)?;
                let check = perp_inf_defn_check(u0, v0, &grid)?;
                if !check.holds {
                    return Ok(Decision::new(false)
                        .with_route("set-defn-sampler", false, Exactness::Sampled)
                        .with_tolerance(ORACLE_TOL)
                        .with_witness(check.witness.unwrap()));
                }
            }
        }
    }
    Ok(Decision::new(true)
        .with_route("set-defn-sampler", true, Exactness::Sampled)
        .with_tolerance(ORACLE_TOL))
}

fn interval_vertices_for(space: &SpaceRef, u: &Element, kind: SetKind) -> Result<Vec<Element>> {
    let lower = match kind {
        SetKind::Abs => Element::zero(space),
        SetKind::Ext => u.neg(),
    };
    polyhedral::interval(space, &lower, u)?.vertex_elements()
}

fn set_candidates(
    space: &SpaceRef,
    u: &Element,
    kind: SetKind,
    trials: usize,
    seed: u64,
) -> Result<Vec<Element>> {
    match (space.backend(), kind) {
        (Backend::Polyhedral, SetKind::Abs) => {
            let zero = Element::zero(space);
            sample_interval_polyhedral(space, &zero, u, trials, seed)
        }
        (Backend::Polyhedral, SetKind::Ext) => {
            sample_interval_polyhedral(space, &u.neg(), u, trials, seed)
        }
        (Backend::SymMatrix, _) => {
            let m = u.as_mat().expect("matrix backend");
            let mut out = Vec::with_capacity(trials + 8);
            for w in matrix::interval_probes(m) {
                let keep = match kind {
                    SetKind::Ext => true,
                    // probes λ_j q_j q_jᵀ and u itself are positive
                    SetKind::Abs => w.min_eigenvalue() >= -crate::scalar::SPECTRAL_TOL,
                };
                if keep {
                    out.push(Element::matrix(space, w)?);
                }
            }
            for w in matrix::sample_interval(m, trials, seed)? {
                let w = match kind {
                    SetKind::Ext => w,
                    // fold a [−u,u] sample into [0, u]
                    SetKind::Abs => w.add(m).scale(0.5),
                };
                out.push(Element::matrix(space, w)?);
            }
            Ok(out)
        }
        (Backend::Adjoined, _) => {
            let all = interval_candidates(space, u, trials, seed)?;
            Ok(match kind {
                SetKind::Ext => all,
                SetKind::Abs => all
                    .into_iter()
                    .map(|w| {
                        let folded = w.add(u)?.scale_rational(&rat(1, 2));
                        Ok(folded)
                    })
                    .collect::<Result<_>>()?,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;
    use crate::space::SpaceRef;

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
    fn grid_contains_required_points() {
        let s = quadrant(2);
        let x = el(&s, &[(3, 1), (0, 1)]);
        let y = el(&s, &[(0, 1), (2, 1)]);
        let grid = KGrid::for_pair(&x, &y, 5).unwrap();
        let want = [rat_int(0), rat_int(1), rat_int(-1), rat(3, 2), rat(-3, 2), rat_int(32), rat(1, 32)];
        for w in want {
            assert!(
                grid.entries().iter().any(|k| k.as_rational() == Some(&w)),
                "missing grid point {w}"
            );
        }
        // symmetric under negation
        for k in grid.entries() {
            let neg = -k.as_rational().unwrap().clone();
            assert!(grid.entries().iter().any(|j| j.as_rational() == Some(&neg)));
        }
    }

    #[test]
    fn defn_checks_on_linf_pairs() {
        let s = quadrant(2);
        let x = el(&s, &[(1, 1), (0, 1)]);
        let y = el(&s, &[(0, 1), (1, 1)]);
        let grid = KGrid::for_pair(&x, &y, 5).unwrap();
        assert!(perp_inf_defn_check(&x, &y, &grid).unwrap().holds);

        let a = el(&s, &[(1, 1), (1, 1)]);
        let b = el(&s, &[(1, 1), (-1, 1)]);
        let grid = KGrid::for_pair(&a, &b, 5).unwrap();
        let d = perp_inf_defn_check(&a, &b, &grid).unwrap();
        assert!(!d.holds, "(1,1) and (1,−1) are 1- but not ∞-orthogonal");
        match d.witness {
            Some(Witness::Scale { ref k, ref x, ref y }) => {
                // the witness re-validates: ‖x + ky‖ ≠ max(‖x‖, ‖ky‖) at this k
                let kq = k.as_rational().unwrap();
                let lhs = s.norm(&x.add(&y.scale_rational(kq).clone()).unwrap()).unwrap();
                let nx = s.norm(x).unwrap().as_rational().unwrap().clone();
                let ny = s.norm(y).unwrap().as_rational().unwrap().clone();
                let rhs = nx.max(kq.abs() * ny);
                assert_ne!(lhs.as_rational().unwrap(), &rhs);
            }
            _ => panic!("expected a grid witness"),
        }
        assert!(perp_one_defn_check(&a, &b, &grid).unwrap().holds);

        // zero second argument is orthogonal in every sense
        let z = Element::zero(&s);
        let grid = KGrid::for_pair(&x, &z, 5).unwrap();
        assert!(perp_inf_defn_check(&x, &z, &grid).unwrap().holds);
    }

    #[test]
    fn interval_sampler_stays_inside() {
        let s = quadrant(2);
        let u = el(&s, &[(1, 1), (1, 2)]);
        let samples = sample_interval_polyhedral(&s, &u.neg(), &u, 100, 9).unwrap();
        assert_eq!(samples.len(), 100);
        for v in &samples {
            assert!(s.cone_contains(&u.sub(v).unwrap()).unwrap());
            assert!(s.cone_contains(&v.add(&u).unwrap()).unwrap());
        }
        // deterministic per seed
        let again = sample_interval_polyhedral(&s, &u.neg(), &u, 100, 9).unwrap();
        assert_eq!(samples, again);

        let zero = Element::zero(&s);
        let degenerate = sample_interval_polyhedral(&s, &zero, &zero, 3, 1).unwrap();
        assert!(degenerate.iter().all(|v| v.is_zero()));
        assert!(sample_interval_polyhedral(&s, &u, &u.neg(), 3, 1).is_err());
        assert!(sample_interval_polyhedral(&s, &zero, &u, 0, 1).unwrap().is_empty());
    }

    #[test]
    fn falsify_oup_examples() {
        let s = quadrant(2);
        // u = (1, 0) has the property: never falsified
        let u = el(&s, &[(1, 1), (0, 1)]);
        assert!(falsify_oup(&s, &u, 2000, 3).unwrap().holds);
        // u = e as well
        assert!(falsify_oup(&s, &s.unit(), 500, 3).unwrap().holds);
        // u = (1, ½) is falsified, and the witness re-checks exactly
        let u = el(&s, &[(1, 1), (1, 2)]);
        let d = falsify_oup(&s, &u, 2000, 3).unwrap();
        assert!(!d.holds);
        let Witness::Element(v) = d.witness.unwrap() else { panic!() };
        let nv = s.norm(&v).unwrap().as_rational().unwrap().clone();
        let base = s.unit().sub(&u).unwrap().scale_rational(&nv);
        let plus = s.norm(&base.add(&v).unwrap()).unwrap();
        let minus = s.norm(&base.sub(&v).unwrap()).unwrap();
        assert!(
            plus.as_rational() != Some(&nv) || minus.as_rational() != Some(&nv),
            "witness must violate the equality"
        );
    }

    #[test]
    fn falsify_perp_set_examples() {
        let s = quadrant(3);
        let u = el(&s, &[(1, 1), (0, 1), (0, 1)]);
        let v = el(&s, &[(0, 1), (0, 1), (1, 1)]);
        assert!(falsify_perp_set(&s, &u, &v, SetKind::Ext, 200, 4, 5).unwrap().holds);

        let u = el(&s, &[(1, 1), (1, 2), (0, 1)]);
        let v = el(&s, &[(0, 1), (1, 2), (1, 1)]);
        let d = falsify_perp_set(&s, &u, &v, SetKind::Ext, 200, 4, 5).unwrap();
        assert!(!d.holds, "overlapping ideals must be falsified");
    }
}
