//! Double description over the rationals.
//!
//! Converts between facet and generator representations of polyhedral cones
//! and polytopes. Insertion follows lexicographic row order and adjacency is
//! decided by exact rank tests, so the output is deterministic and
//! irredundant. Dimensions stay small here; clarity wins over speed.

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{self, Vecq};
use crate::scalar::Rational;

/// Generator description of a polyhedral cone: conic hull of `rays` plus the
/// linear span of `lineality`.
#[derive(Debug, Clone)]
pub struct ConeRays {
    pub rays: Vec<Vecq>,
    pub lineality: Vec<Vecq>,
}

/// Extreme rays of the cone `{x : ⟨row, x⟩ ≥ 0 for all rows}`.
///
/// Lineality is factored out first, so the input need not be pointed.
pub fn extreme_rays(rows: &[Vecq], dim: usize) -> ConeRays {
    let rows: Vec<Vecq> = rows.iter().filter(|r| !linalg::is_zero_vec(r)).cloned().collect();
    let lineality = linalg::null_space(&rows, dim);
    if lineality.len() == dim {
        // no constraints at all: the cone is the whole space
        return ConeRays { rays: Vec::new(), lineality };
    }
    if lineality.is_empty() {
        let rays = dd_pointed(&rows, dim);
        return ConeRays { rays, lineality };
    }
    // Complement the lineality with standard basis vectors and run the
    // pointed algorithm in the quotient coordinates.
    let mut full = lineality.clone();
    let mut complement: Vec<Vecq> = Vec::new();
    for i in 0..dim {
        let mut e = linalg::zeros(dim);
        e[i] = Rational::one();
        full.push(e.clone());
        if linalg::rank(&full) == full.len() {
            complement.push(e);
        } else {
            full.pop();
        }
    }
    let k = complement.len();
    let projected: Vec<Vecq> = rows
        .iter()
        .map(|r| complement.iter().map(|w| linalg::dot(r, w)).collect())
        .collect();
    let rays_q = dd_pointed(&projected, k);
    let rays = rays_q
        .iter()
        .map(|y| {
            let mut x = linalg::zeros(dim);
            for (c, w) in y.iter().zip(&complement) {
                x = linalg::add(&x, &linalg::scale(w, c));
            }
            linalg::normalize_ray(&x)
        })
        .collect();
    ConeRays { rays, lineality }
}

/// Core double description for a pointed cone (`rank(rows) == dim`).
fn dd_pointed(rows: &[Vecq], dim: usize) -> Vec<Vecq> {
    if dim == 0 {
        return Vec::new();
    }
    // canonical row order: normalized, sorted, deduplicated
    let mut sorted: Vec<Vecq> = rows.iter().map(|r| linalg::normalize_ray(r)).collect();
    sorted.sort_by(cmp_lex);
    sorted.dedup();
    let nrows = sorted.len();
    assert!(nrows <= 128, "double description limited to 128 rows");
    debug_assert_eq!(linalg::rank(&sorted), dim, "dd_pointed requires a pointed cone");

    let init = linalg::independent_subset(&sorted);
    let base: Vec<Vecq> = init.iter().map(|&i| sorted[i].clone()).collect();
    let inv = linalg::invert(&base).expect("independent subset must be invertible");

    struct Ray {
        coords: Vecq,
        active: u128, // bits over the sorted row indices, processed rows only
    }

    // initial simplicial cone: rays are the columns of the inverse
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let coords: Vecq = (0..dim).map(|i| inv[i][j].clone()).collect();
            let mut active = 0u128;
            for (pos, &ri) in init.iter().enumerate() {
                if pos != j {
                    active |= 1 << ri;
                }
            }
            Ray { coords: linalg::normalize_ray(&coords), active }
        })
        .collect();

    let mut processed: u128 = init.iter().fold(0u128, |m, &i| m | (1 << i));

    for k in 0..nrows {
        if processed & (1 << k) != 0 {
            continue;
        }
        let row = &sorted[k];
        let mut pos: Vec<Ray> = Vec::new();
        let mut zero: Vec<Ray> = Vec::new();
        let mut negs: Vec<Ray> = Vec::new();
        for ray in rays.drain(..) {
            let s = linalg::dot(row, &ray.coords);
            if s.is_zero() {
                zero.push(Ray { coords: ray.coords, active: ray.active | (1 << k) });
            } else if s.is_positive() {
                pos.push(ray);
            } else {
                negs.push(ray);
            }
        }
        let mut created: Vec<Ray> = Vec::new();
        for p in &pos {
            for n in &negs {
                let common = p.active & n.active;
                if !adjacent(&sorted, common, dim) {
                    continue;
                }
                let sp = linalg::dot(row, &p.coords);
                let sn = linalg::dot(row, &n.coords);
                // sp·n − sn·p: positive combination lying on the new hyperplane
                let coords = linalg::sub(
                    &linalg::scale(&n.coords, &sp),
                    &linalg::scale(&p.coords, &sn),
                );
                created.push(Ray {
                    coords: linalg::normalize_ray(&coords),
                    active: common | (1 << k),
                });
            }
        }
        rays = pos;
        rays.extend(zero);
        rays.extend(created);
        processed |= 1 << k;
    }

    let mut out: Vec<Vecq> = rays.into_iter().map(|r| r.coords).collect();
    out.sort_by(|a, b| cmp_lex(b, a)); // descending, canonical output order
    out.dedup();
    // exact irredundancy check: an extreme ray of a pointed cone is active on
    // rows of rank dim − 1
    for r in &out {
        let active: Vec<Vecq> = sorted
            .iter()
            .filter(|row| linalg::dot(row, r).is_zero())
            .cloned()
            .collect();
        debug_assert!(
            linalg::rank(&active) == dim - 1,
            "double description produced a non-extreme ray"
        );
        debug_assert!(sorted.iter().all(|row| !linalg::dot(row, r).is_negative()));
    }
    out
}

fn adjacent(sorted: &[Vecq], common: u128, dim: usize) -> bool {
    if dim < 2 {
        return false;
    }
    if (common.count_ones() as usize) < dim - 2 {
        return false;
    }
    let active: Vec<Vecq> = (0..sorted.len())
        .filter(|&i| common & (1 << i) != 0)
        .map(|i| sorted[i].clone())
        .collect();
    linalg::rank(&active) == dim - 2
}

pub fn cmp_lex(a: &Vecq, b: &Vecq) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// A halfspace `⟨normal, x⟩ ≤ offset` (or the hyperplane with `=` in
/// equality position).
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: Vecq,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vecq, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    pub fn satisfied_le(&self, x: &[Rational]) -> bool {
        linalg::dot(&self.normal, x) <= self.offset
    }

    pub fn satisfied_eq(&self, x: &[Rational]) -> bool {
        linalg::dot(&self.normal, x) == self.offset
    }
}

/// Vertices of `{x : ⟨a,x⟩ ≤ b (ineqs), ⟨c,x⟩ = d (eqs)}` by homogenization.
///
/// Returns an empty list for the empty set and `Error::Unbounded` when the
/// set is nonempty but not a polytope.
pub fn vertices_of(ineqs: &[Halfspace], eqs: &[Halfspace], dim: usize) -> Result<Vec<Vecq>> {
    let mut rows: Vec<Vecq> = Vec::with_capacity(ineqs.len() + 2 * eqs.len() + 1);
    let mut t_row = linalg::zeros(dim + 1);
    t_row[0] = Rational::one();
    rows.push(t_row);
    for h in ineqs {
        let mut row = Vec::with_capacity(dim + 1);
        row.push(h.offset.clone());
        row.extend(h.normal.iter().map(|x| -x));
        rows.push(row);
    }
    for h in eqs {
        let mut row = Vec::with_capacity(dim + 1);
        row.push(-h.offset.clone());
        row.extend(h.normal.iter().cloned());
        rows.push(linalg::neg(&row));
        rows.push(row);
    }
    let cone = extreme_rays(&rows, dim + 1);
    let mut vertices = Vec::new();
    let mut recession = false;
    for r in &cone.rays {
        if r[0].is_zero() {
            recession = true;
        } else {
            let t = r[0].clone();
            vertices.push(r[1..].iter().map(|x| x / &t).collect::<Vecq>());
        }
    }
    if vertices.is_empty() {
        return Ok(Vec::new());
    }
    if recession || !cone.lineality.is_empty() {
        return Err(Error::Unbounded);
    }
    vertices.sort_by(|a, b| cmp_lex(b, a));
    vertices.dedup();
    Ok(vertices)
}

/// Facet and affine-hull description of the convex hull of `points`.
pub fn facets_of(points: &[Vecq], dim: usize) -> (Vec<Halfspace>, Vec<Halfspace>) {
    if points.is_empty() {
        // canonical infeasible description of the empty set
        return (vec![Halfspace::new(linalg::zeros(dim), -Rational::one())], Vec::new());
    }
    let lifted: Vec<Vecq> = points
        .iter()
        .map(|p| {
            let mut g = Vec::with_capacity(dim + 1);
            g.push(Rational::one());
            g.extend(p.iter().cloned());
            g
        })
        .collect();
    // the dual of cone(lifted) is the H-cone with the lifted points as rows
    let dual = extreme_rays(&lifted, dim + 1);
    let mut ineqs = Vec::new();
    for r in &dual.rays {
        let normal: Vecq = r[1..].iter().map(|x| -x).collect();
        if linalg::is_zero_vec(&normal) {
            continue; // the trivial row t ≥ 0
        }
        ineqs.push(Halfspace::new(normal, r[0].clone()));
    }
    let mut eqs = Vec::new();
    for l in &dual.lineality {
        let normal: Vecq = l[1..].to_vec();
        if linalg::is_zero_vec(&normal) {
            continue;
        }
        eqs.push(Halfspace::new(normal, -l[0].clone()));
    }
    (ineqs, eqs)
}

/// Facet rows of `cone(gens)`: the cone equals
/// `{x : ⟨row, x⟩ ≥ 0 for all rows, ⟨n, x⟩ = 0 for all span normals}`.
pub fn cone_facets_of(gens: &[Vecq], dim: usize) -> (Vec<Vecq>, Vec<Vecq>) {
    let dual = extreme_rays(gens, dim);
    let rows = dual.rays;
    let span_normals = dual.lineality;
    (rows, span_normals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn v(xs: &[i64]) -> Vecq {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn quadrant_rays() {
        let cone = extreme_rays(&[v(&[1, 0]), v(&[0, 1])], 2);
        assert!(cone.lineality.is_empty());
        assert_eq!(cone.rays, vec![v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn halfplane_has_lineality() {
        let cone = extreme_rays(&[v(&[1, 0])], 2);
        assert_eq!(cone.lineality.len(), 1);
        assert_eq!(cone.rays.len(), 1);
    }

    #[test]
    fn unit_square_vertices() {
        // {±v₁ ≤ 1, ±v₂ ≤ 1}
        let ineqs = vec![
            Halfspace::new(v(&[1, 0]), rat_int(1)),
            Halfspace::new(v(&[-1, 0]), rat_int(1)),
            Halfspace::new(v(&[0, 1]), rat_int(1)),
            Halfspace::new(v(&[0, -1]), rat_int(1)),
        ];
        let vs = vertices_of(&ineqs, &[], 2).unwrap();
        assert_eq!(vs, vec![v(&[1, 1]), v(&[1, -1]), v(&[-1, 1]), v(&[-1, -1])]);
    }

    #[test]
    fn segment_facets_carry_affine_hull() {
        let (ineqs, eqs) = facets_of(&[v(&[0, 0]), v(&[1, 0])], 2);
        assert_eq!(eqs.len(), 1, "segment in the plane has one hull equality");
        let eq = &eqs[0];
        assert!(eq.satisfied_eq(&v(&[0, 0])) && eq.satisfied_eq(&v(&[1, 0])));
        assert!(!eq.satisfied_eq(&v(&[0, 1])));
        // both endpoints satisfy every inequality, the far point does not
        for h in &ineqs {
            assert!(h.satisfied_le(&v(&[0, 0])) && h.satisfied_le(&v(&[1, 0])));
        }
        assert!(ineqs.iter().any(|h| !h.satisfied_le(&v(&[2, 0]))));
    }

    #[test]
    fn empty_and_unbounded() {
        // x ≤ 0 and x ≥ 1 is empty (second coordinate free in the system)
        let ineqs = vec![
            Halfspace::new(v(&[1, 0]), rat_int(0)),
            Halfspace::new(v(&[-1, 0]), rat_int(-1)),
        ];
        assert!(vertices_of(&ineqs, &[], 2).unwrap().is_empty());
        // x ≥ 0 alone is unbounded
        let ineqs = vec![Halfspace::new(v(&[-1, 0]), rat_int(0))];
        assert!(matches!(vertices_of(&ineqs, &[], 2), Err(Error::Unbounded)));
    }

    #[test]
    fn box_roundtrip_is_identity() {
        let pts = vec![v(&[1, 1]), v(&[1, -1]), v(&[-1, 1]), v(&[-1, -1]), v(&[0, 0])];
        let (ineqs, eqs) = facets_of(&pts, 2);
        let vs = vertices_of(&ineqs, &eqs, 2).unwrap();
        assert_eq!(vs, vec![v(&[1, 1]), v(&[1, -1]), v(&[-1, 1]), v(&[-1, -1])]);
    }

    #[test]
    fn skew_interval_vertices() {
        // [−u, u] for u = (1, ½) in the quadrant: |v₁| ≤ 1, |v₂| ≤ ½
        let ineqs = vec![
            Halfspace::new(v(&[1, 0]), rat_int(1)),
            Halfspace::new(v(&[-1, 0]), rat_int(1)),
            Halfspace::new(v(&[0, 1]), rat(1, 2)),
            Halfspace::new(v(&[0, -1]), rat(1, 2)),
        ];
        let vs = vertices_of(&ineqs, &[], 2).unwrap();
        let want: Vec<Vecq> = vec![
            vec![rat_int(1), rat(1, 2)],
            vec![rat_int(1), rat(-1, 2)],
            vec![rat_int(-1), rat(1, 2)],
            vec![rat_int(-1), rat(-1, 2)],
        ];
        assert_eq!(vs, want);
    }
}
