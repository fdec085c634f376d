//! Seeded instance generators for the verification suites: random pointed
//! generating cones, product spaces, S_V samplers, constructed orthogonal
//! pairs, and matrix instances.

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::{self, Vecq};
use crate::matrix::SymMatrix;
use crate::polyhedral;
use crate::scalar::{rat, rat_int, Rational};
use crate::space::{Element, SpaceRef};

pub fn quadrant_space(n: usize) -> SpaceRef {
    let rows = (0..n)
        .map(|i| {
            let mut r = linalg::zeros(n);
            r[i] = Rational::one();
            r
        })
        .collect();
    SpaceRef::polyhedral(Some(rows), None, vec![rat_int(1); n]).expect("quadrant is valid")
}

fn random_row(rng: &mut ChaCha8Rng, dim: usize) -> Vecq {
    loop {
        let row: Vecq = (0..dim).map(|_| rat_int(rng.random_range(-3i64..=3))).collect();
        if linalg::is_zero_vec(&row) {
            continue;
        }
        let ones = vec![Rational::one(); dim];
        let gap = linalg::dot(&row, &ones);
        if gap.is_zero() {
            continue;
        }
        return if gap.is_negative() { linalg::neg(&row) } else { row };
    }
}

/// Random pointed generating cone with an interior unit near the all-ones
/// vector. Every facet row has a strictly positive pairing with the unit by
/// construction.
pub fn random_cone_space(rng: &mut ChaCha8Rng, dim: usize, max_facets: usize) -> SpaceRef {
    let extra = rng.random_range(0..=max_facets.saturating_sub(dim));
    let mut rows: Vec<Vecq> = (0..dim + extra).map(|_| random_row(rng, dim)).collect();
    // guarantee pointedness
    for i in 0..dim {
        if linalg::rank(&rows) == dim {
            break;
        }
        let mut r = linalg::zeros(dim);
        r[i] = Rational::one();
        rows.push(r);
    }
    let ones = vec![Rational::one(); dim];
    // perturb the unit while keeping it strictly interior
    let delta: Vecq = (0..dim).map(|_| rat(rng.random_range(-2i64..=2), 4)).collect();
    let mut t = rat_int(1);
    for row in &rows {
        let rd = linalg::dot(row, &delta);
        if rd.is_negative() {
            let room = linalg::dot(row, &ones) / (rd.abs() * rat_int(2));
            if room < t {
                t = room;
            }
        }
    }
    let unit = linalg::add(&ones, &linalg::scale(&delta, &t));
    SpaceRef::polyhedral(Some(rows), None, unit).expect("constructed cone is valid")
}

/// Block-diagonal product of cone spaces; the norm is the max over blocks.
pub struct ProductSpace {
    pub space: SpaceRef,
    pub blocks: Vec<SpaceRef>,
    offsets: Vec<usize>,
}

impl ProductSpace {
    pub fn new(blocks: Vec<SpaceRef>) -> Result<ProductSpace> {
        let total: usize = blocks.iter().map(|b| b.dim()).sum();
        let mut rows: Vec<Vecq> = Vec::new();
        let mut unit = linalg::zeros(total);
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut at = 0usize;
        for b in &blocks {
            offsets.push(at);
            for row in b.facets()? {
                let mut r = linalg::zeros(total);
                r[at..at + b.dim()].clone_from_slice(row);
                rows.push(r);
            }
            let bu = b.unit();
            let bv = bu.as_vec().expect("polyhedral block");
            unit[at..at + b.dim()].clone_from_slice(bv);
            at += b.dim();
        }
        let space = SpaceRef::polyhedral(Some(rows), None, unit)?;
        Ok(ProductSpace { space, blocks, offsets })
    }

    /// Assemble an element from per-block parts (`None` = zero block).
    pub fn embed(&self, parts: &[Option<&Element>]) -> Result<Element> {
        assert_eq!(parts.len(), self.blocks.len());
        let mut coords = linalg::zeros(self.space.dim());
        for ((part, block), &off) in parts.iter().zip(&self.blocks).zip(&self.offsets) {
            if let Some(p) = part {
                let pv = p.as_vec().expect("polyhedral block element");
                coords[off..off + block.dim()].clone_from_slice(pv);
            }
        }
        Element::vector(&self.space, coords)
    }

    /// The indicator-style element with the chosen block units and zeros
    /// elsewhere; an order projection of the product.
    pub fn block_indicator(&self, chosen: &[bool]) -> Result<Element> {
        let parts: Vec<Option<Element>> = self
            .blocks
            .iter()
            .zip(chosen)
            .map(|(b, &on)| if on { Some(b.unit()) } else { None })
            .collect();
        let refs: Vec<Option<&Element>> = parts.iter().map(|p| p.as_ref()).collect();
        self.embed(&refs)
    }
}

pub fn random_product_space(rng: &mut ChaCha8Rng, block_dims: &[usize]) -> Result<ProductSpace> {
    let blocks = block_dims
        .iter()
        .map(|&d| {
            if rng.random_bool(0.5) {
                quadrant_space(d)
            } else {
                random_cone_space(rng, d, d + 3)
            }
        })
        .collect();
    ProductSpace::new(blocks)
}

/// Random rational vector element (not necessarily positive).
pub fn random_vector_element(rng: &mut ChaCha8Rng, space: &SpaceRef) -> Result<Element> {
    let coords: Vecq = (0..space.dim())
        .map(|_| rat(rng.random_range(-12i64..=12), rng.random_range(1i64..=4)))
        .collect();
    Element::vector(space, coords)
}

/// Random element of `[0, e]` (a positive contraction), as a convex
/// combination of the vertices of the positive unit ball.
pub fn random_positive_contraction(rng: &mut ChaCha8Rng, space: &SpaceRef) -> Result<Element> {
    let body = crate::projections::positive_unit_ball(space)?;
    Ok(Element::vector(space, convex_combination(body.vertices(), rng))?)
}

pub fn convex_combination(verts: &[Vecq], rng: &mut ChaCha8Rng) -> Vecq {
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

/// Random element of `S_V`: a positive boundary combination normalized to
/// norm one. `None` when no facet carries rays (dimension-1 spaces).
pub fn random_sv_element(rng: &mut ChaCha8Rng, space: &SpaceRef) -> Result<Option<Element>> {
    let rays = space.cone_rays()?.to_vec();
    if rays.is_empty() {
        return Ok(None);
    }
    let facets = space.facets()?.to_vec();
    let start = rng.random_range(0..facets.len());
    let mut on_facet: Vec<Vecq> = Vec::new();
    for k in 0..facets.len() {
        let fi = (start + k) % facets.len();
        on_facet = rays
            .iter()
            .filter(|r| linalg::dot(&facets[fi], r).is_zero())
            .cloned()
            .collect();
        if !on_facet.is_empty() {
            break;
        }
    }
    if on_facet.is_empty() {
        return Ok(None);
    }
    let mut x = linalg::zeros(space.dim());
    let mut any = false;
    for r in &on_facet {
        if rng.random_bool(0.7) {
            let w = rat_int(rng.random_range(1i64..=4));
            x = linalg::add(&x, &linalg::scale(r, &w));
            any = true;
        }
    }
    if !any {
        x = on_facet[0].clone();
    }
    let e = Element::vector(space, x)?;
    let n = space.norm(&e)?.as_rational().expect("polyhedral norm").clone();
    if n.is_zero() {
        return Ok(None);
    }
    let u = e.scale_rational(&n.recip());
    debug_assert!(crate::projections::sv_membership(space, &u)?.holds);
    Ok(Some(u))
}

/// Random normalized extreme ray; such elements always carry the order unit
/// property.
pub fn random_unit_ray(rng: &mut ChaCha8Rng, space: &SpaceRef) -> Result<Option<Element>> {
    let rays = space.cone_rays()?.to_vec();
    if rays.is_empty() {
        return Ok(None);
    }
    let r = rays[rng.random_range(0..rays.len())].clone();
    let e = Element::vector(space, r)?;
    let n = space.norm(&e)?.as_rational().expect("polyhedral norm").clone();
    Ok(Some(e.scale_rational(&n.recip())))
}

/// Constructed orthogonal pairs from the unit ball geometry: vertex pairs
/// `(v, w)` sharing a facet both as `(v, w)` and `(v, −w)` are 1-orthogonal,
/// and their normalized sum/difference halves are ∞-orthogonal.
pub struct OrthPairs {
    pub one: Vec<(Element, Element)>,
    pub inf: Vec<(Element, Element)>,
}

pub fn constructed_orth_pairs(space: &SpaceRef, limit: usize) -> Result<OrthPairs> {
    let e = space.unit();
    let ball = polyhedral::interval(space, &e.neg(), &e)?;
    let facets = space.facets()?.to_vec();
    let gaps = space.facet_unit()?.to_vec();
    let signed_active = |v: &Vecq| -> Vec<(usize, i8)> {
        let mut out = Vec::new();
        for (i, (a, g)) in facets.iter().zip(&gaps).enumerate() {
            let d = linalg::dot(a, v);
            if &d == g {
                out.push((i, 1));
            } else if d == -g.clone() {
                out.push((i, -1));
            }
        }
        out
    };
    let verts = ball.vertices();
    let actives: Vec<Vec<(usize, i8)>> = verts.iter().map(|v| signed_active(v)).collect();
    let mut one = Vec::new();
    let mut inf = Vec::new();
    'outer: for (i, v) in verts.iter().enumerate() {
        for (j, w) in verts.iter().enumerate() {
            if i == j || v == &linalg::neg(w) {
                continue;
            }
            let shares_same = actives[i].iter().any(|s| actives[j].contains(s));
            let shares_flipped =
                actives[i].iter().any(|&(r, s)| actives[j].contains(&(r, -s)));
            if shares_same && shares_flipped {
                let ev = Element::vector(space, v.clone())?;
                let ew = Element::vector(space, w.clone())?;
                let half = rat(1, 2);
                let x = ev.add(&ew)?.scale_rational(&half);
                let y = ev.sub(&ew)?.scale_rational(&half);
                one.push((ev, ew));
                inf.push((x, y));
                if one.len() >= limit {
                    break 'outer;
                }
            }
        }
    }
    Ok(OrthPairs { one, inf })
}

// ---------------------------------------------------------------------------
// matrix instances

pub fn random_orthogonal(rng: &mut ChaCha8Rng, side: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(side, side, |_, _| rng.random_range(-1.0..1.0));
    let qr = g.qr();
    qr.q()
}

pub fn conjugated_projection(rng: &mut ChaCha8Rng, side: usize, rank: usize) -> SymMatrix {
    let q = random_orthogonal(rng, side);
    let d = DMatrix::from_fn(side, side, |i, j| if i == j && i < rank { 1.0 } else { 0.0 });
    SymMatrix::from_dmatrix(&(&q * d * q.transpose()))
}

/// Positive contraction that is not a projection: at least one eigenvalue
/// is kept well inside (0, 1).
pub fn non_idempotent_contraction(rng: &mut ChaCha8Rng, side: usize) -> SymMatrix {
    let q = random_orthogonal(rng, side);
    let mut eigs: Vec<f64> = (0..side)
        .map(|_| match rng.random_range(0..3) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.random_range(0.1..0.9),
        })
        .collect();
    let middle = rng.random_range(0..side);
    eigs[middle] = rng.random_range(0.1..0.9);
    let d = DMatrix::from_fn(side, side, |i, j| if i == j { eigs[i] } else { 0.0 });
    SymMatrix::from_dmatrix(&(&q * d * q.transpose()))
}

pub fn random_psd(rng: &mut ChaCha8Rng, side: usize, max_norm: f64) -> SymMatrix {
    let q = random_orthogonal(rng, side);
    let d = DMatrix::from_fn(
        side,
        side,
        |i, j| if i == j { rng.random_range(0.0..max_norm) } else { 0.0 },
    );
    SymMatrix::from_dmatrix(&(&q * d * q.transpose()))
}

/// Pair of PSD matrices with product exactly zero by construction: disjoint
/// diagonal blocks conjugated by a common rotation.
pub fn zero_product_pair(rng: &mut ChaCha8Rng, side: usize) -> (SymMatrix, SymMatrix) {
    let split = rng.random_range(1..side);
    let q = random_orthogonal(rng, side);
    let a = DMatrix::from_fn(side, side, |i, j| {
        if i == j && i < split {
            rng.random_range(0.2..1.0)
        } else {
            0.0
        }
    });
    let b = DMatrix::from_fn(side, side, |i, j| {
        if i == j && i >= split {
            rng.random_range(0.2..1.0)
        } else {
            0.0
        }
    });
    (
        SymMatrix::from_dmatrix(&(&q * a * q.transpose())),
        SymMatrix::from_dmatrix(&(&q * b * q.transpose())),
    )
}

/// Matrix pairs that are 1-orthogonal (`diag(1,1,…) / diag(1,−1,…)` up to a
/// common rotation) and ∞-orthogonal (complementary projections).
pub fn matrix_orth_pairs(rng: &mut ChaCha8Rng, side: usize) -> (SymMatrix, SymMatrix, SymMatrix, SymMatrix) {
    let q = random_orthogonal(rng, side);
    let mk = |f: &dyn Fn(usize) -> f64| {
        let d = DMatrix::from_fn(side, side, |i, j| if i == j { f(i) } else { 0.0 });
        SymMatrix::from_dmatrix(&(&q * d * q.transpose()))
    };
    let one_x = mk(&|i| if i <= 1 { 1.0 } else { 0.0 });
    let one_y = mk(&|i| match i {
        0 => 1.0,
        1 => -1.0,
        _ => 0.0,
    });
    let inf_x = mk(&|i| if i == 0 { 1.0 } else { 0.0 });
    let inf_y = mk(&|i| if i == 1 { 1.0 } else { 0.0 });
    (one_x, one_y, inf_x, inf_y)
}

pub fn matrix_element(space: &SpaceRef, m: SymMatrix) -> Element {
    Element::matrix(space, m).expect("side matches")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix;
    use crate::oracle::trial_rng;

    #[test]
    fn random_cones_validate() {
        for seed in 0..30u64 {
            let mut rng = trial_rng(101, seed);
            let dim = rng.random_range(2..=5);
            let s = random_cone_space(&mut rng, dim, 10);
            assert!(s.validate().ok());
            assert!(s.facets().unwrap().len() <= 13);
        }
    }

    #[test]
    fn sv_sampler_lands_in_sv() {
        let mut rng = trial_rng(7, 0);
        let mut produced = 0;
        for _ in 0..40 {
            let dim = rng.random_range(2..=4);
            let s = random_cone_space(&mut rng, dim, 8);
            if let Some(u) = random_sv_element(&mut rng, &s).unwrap() {
                produced += 1;
                assert!(crate::projections::sv_membership(&s, &u).unwrap().holds);
            }
        }
        assert!(produced > 20, "sampler should usually succeed, got {produced}");
    }

    #[test]
    fn product_space_block_indicators_are_order_projections() {
        let mut rng = trial_rng(8, 0);
        let p = random_product_space(&mut rng, &[2, 2, 1]).unwrap();
        let u = p.block_indicator(&[true, true, false]).unwrap();
        assert!(crate::projections::is_order_projection(&p.space, &u).unwrap().holds);
    }

    #[test]
    fn constructed_pairs_are_orthogonal() {
        let s = quadrant_space(3);
        let pairs = constructed_orth_pairs(&s, 16).unwrap();
        assert!(!pairs.one.is_empty());
        for (x, y) in &pairs.one {
            assert!(crate::ortho::perp_one(x, y).unwrap().holds);
        }
        for (x, y) in &pairs.inf {
            assert!(crate::ortho::perp_inf(x, y).unwrap().holds);
        }
    }

    #[test]
    fn matrix_generators_shape() {
        let mut rng = trial_rng(9, 0);
        let p = conjugated_projection(&mut rng, 4, 2);
        assert!(matrix::is_projection(&p).unwrap().holds);
        let n = non_idempotent_contraction(&mut rng, 4);
        assert!(!matrix::is_projection(&n).unwrap().holds);
        let (a, b) = zero_product_pair(&mut rng, 4);
        assert!(matrix::product_vanishes(&a, &b).unwrap().holds);
    }
}
