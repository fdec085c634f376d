//! Exact convex geometry on the polyhedral backend: representation
//! conversion, order intervals, order ideals, norm slices, and containment.
//! These make the universally quantified conditions of the decision layer
//! finitely checkable.

pub mod dd;

use num_traits::{One, Zero};

pub use dd::Halfspace;

use crate::error::{Error, Result};
use crate::linalg::{self, Vecq};
use crate::scalar::Rational;
use crate::space::{Backend, Decision, Element, Exactness, SpaceRef, Witness};

/// Exact bounded convex set with both representations. Vertices are stored
/// in descending lexicographic order and are irredundant; facets plus
/// equalities describe the same set. `basis` parametrizes the carrier
/// subspace when the polytope is not full-dimensional by construction.
#[derive(Debug, Clone)]
pub struct Polytope {
    space: SpaceRef,
    vertices: Vec<Vecq>,
    facets: Vec<Halfspace>,
    equalities: Vec<Halfspace>,
    basis: Option<Vec<Vecq>>,
}

impl Polytope {
    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn vertices(&self) -> &[Vecq] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equalities(&self) -> &[Halfspace] {
        &self.equalities
    }

    pub fn basis(&self) -> Option<&[Vecq]> {
        self.basis.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_elements(&self) -> Result<Vec<Element>> {
        self.vertices.iter().map(|v| Element::vector(&self.space, v.clone())).collect()
    }

    /// H-to-V: enumerate the vertices of an inequality/equality description.
    pub fn from_h(space: &SpaceRef, facets: Vec<Halfspace>, equalities: Vec<Halfspace>) -> Result<Polytope> {
        require_polyhedral(space)?;
        let vertices = dd::vertices_of(&facets, &equalities, space.dim())?;
        Ok(Polytope { space: space.clone(), vertices, facets, equalities, basis: None })
    }

    /// V-to-H: the convex hull of `points` with its facet inequalities and
    /// affine-hull equalities, both irredundant.
    pub fn from_vertices(space: &SpaceRef, points: &[Vecq]) -> Result<Polytope> {
        require_polyhedral(space)?;
        for p in points {
            if p.len() != space.dim() {
                return Err(Error::DimensionMismatch { expected: space.dim(), got: p.len() });
            }
        }
        let (facets, equalities) = dd::facets_of(points, space.dim());
        let vertices = dd::vertices_of(&facets, &equalities, space.dim())?;
        Ok(Polytope { space: space.clone(), vertices, facets, equalities, basis: None })
    }

    pub fn contains(&self, x: &Vecq) -> bool {
        if self.is_empty() {
            return false;
        }
        self.facets.iter().all(|h| h.satisfied_le(x)) && self.equalities.iter().all(|h| h.satisfied_eq(x))
    }

    pub fn is_vertex(&self, x: &Vecq) -> bool {
        self.vertices.iter().any(|v| v == x)
    }
}

fn require_polyhedral(space: &SpaceRef) -> Result<()> {
    if space.backend() != Backend::Polyhedral {
        return Err(Error::UnsupportedBackend {
            backend: space.backend().name().to_string(),
            detail: "exact polyhedral geometry".to_string(),
        });
    }
    Ok(())
}

fn vector_coords<'a>(e: &'a Element, space: &SpaceRef) -> Result<&'a Vecq> {
    if e.space() != space {
        return Err(Error::SpaceMismatch);
    }
    e.as_vec().ok_or(Error::SpaceMismatch)
}

/// The order interval `[a, b] = {v : v − a ∈ C, b − v ∈ C}` with vertices
/// enumerated. Incomparable bounds give the legal empty polytope.
pub fn interval(space: &SpaceRef, a: &Element, b: &Element) -> Result<Polytope> {
    require_polyhedral(space)?;
    let av = vector_coords(a, space)?;
    let bv = vector_coords(b, space)?;
    let mut facets = Vec::new();
    for row in space.facets()? {
        // ⟨row, v⟩ ≥ ⟨row, a⟩  and  ⟨row, v⟩ ≤ ⟨row, b⟩
        facets.push(Halfspace::new(linalg::neg(row), -linalg::dot(row, av)));
        facets.push(Halfspace::new(row.clone(), linalg::dot(row, bv)));
    }
    let vertices = dd::vertices_of(&facets, &[], space.dim())?;
    Ok(Polytope { space: space.clone(), vertices, facets, equalities: Vec::new(), basis: None })
}

/// Basis of the order ideal `V_u = span [−u, u]`, computed as the row
/// reduction of the extreme points of `[0, u]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealBasis {
    vectors: Vec<Vecq>,
}

impl IdealBasis {
    pub fn vectors(&self) -> &[Vecq] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Ambient coordinates of the point with the given basis coordinates.
    pub fn embed(&self, y: &[Rational]) -> Vecq {
        debug_assert_eq!(y.len(), self.vectors.len());
        let dim = self.vectors.first().map_or(0, |v| v.len());
        let mut x = linalg::zeros(dim);
        for (c, b) in y.iter().zip(&self.vectors) {
            x = linalg::add(&x, &linalg::scale(b, c));
        }
        x
    }

    pub fn coordinates_of(&self, x: &[Rational]) -> Option<Vecq> {
        linalg::coordinates_in_span(&self.vectors, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.coordinates_of(x).is_some()
    }
}

pub fn ideal_basis(space: &SpaceRef, u: &Element) -> Result<IdealBasis> {
    require_polyhedral(space)?;
    if !space.cone_contains(u)? {
        return Err(Error::Precondition("ideal_basis requires u ∈ V⁺".into()));
    }
    let zero = Element::zero(space);
    let iv = interval(space, &zero, u)?;
    let (rows, _) = linalg::rref(iv.vertices());
    let vectors = rows.into_iter().filter(|r| !linalg::is_zero_vec(r)).collect();
    Ok(IdealBasis { vectors })
}

/// The norm slice `D_u = [−e, e] ∩ V_u`: the unit ball of the ambient norm
/// restricted to the order ideal of `u`. Computed full-dimensionally in the
/// ideal-basis parametrization; every vertex has norm exactly 1 when
/// `V_u ≠ {0}`.
pub fn norm_slice(space: &SpaceRef, u: &Element) -> Result<Polytope> {
    let basis = ideal_basis(space, u)?;
    norm_slice_of_basis(space, &basis)
}

pub fn norm_slice_of_basis(space: &SpaceRef, basis: &IdealBasis) -> Result<Polytope> {
    require_polyhedral(space)?;
    let dim = space.dim();
    if basis.is_empty() {
        // V_u = {0}: the slice is the single point 0
        return Ok(Polytope {
            space: space.clone(),
            vertices: vec![linalg::zeros(dim)],
            facets: Vec::new(),
            equalities: std_basis_halfspaces(dim),
            basis: Some(Vec::new()),
        });
    }
    let k = basis.dim();
    let mut y_facets = Vec::with_capacity(2 * space.facets()?.len());
    for (row, gap) in space.facets()?.iter().zip(space.facet_unit()?) {
        let projected: Vecq = basis.vectors().iter().map(|b| linalg::dot(row, b)).collect();
        y_facets.push(Halfspace::new(projected.clone(), gap.clone()));
        y_facets.push(Halfspace::new(linalg::neg(&projected), gap.clone()));
    }
    let y_vertices = dd::vertices_of(&y_facets, &[], k)?;
    let mut vertices: Vec<Vecq> = y_vertices.iter().map(|y| basis.embed(y)).collect();
    vertices.sort_by(|a, b| dd::cmp_lex(b, a));

    let mut facets = Vec::new();
    for (row, gap) in space.facets()?.iter().zip(space.facet_unit()?) {
        facets.push(Halfspace::new(row.clone(), gap.clone()));
        facets.push(Halfspace::new(linalg::neg(row), gap.clone()));
    }
    let equalities = linalg::null_space(basis.vectors(), dim)
        .into_iter()
        .map(|n| Halfspace::new(n, Rational::zero()))
        .collect();
    Ok(Polytope {
        space: space.clone(),
        vertices,
        facets,
        equalities,
        basis: Some(basis.vectors().to_vec()),
    })
}

fn std_basis_halfspaces(dim: usize) -> Vec<Halfspace> {
    (0..dim)
        .map(|i| {
            let mut n = linalg::zeros(dim);
            n[i] = Rational::one();
            Halfspace::new(n, Rational::zero())
        })
        .collect()
}

/// Ball slice of the cone generated by `[0, u]`: the normalized quantifier
/// set for absolute orthogonality. Vertices are 0 and points of norm 1.
pub fn cone_ball_slice(space: &SpaceRef, u: &Element) -> Result<Polytope> {
    require_polyhedral(space)?;
    let basis = ideal_basis(space, u)?;
    let dim = space.dim();
    if basis.is_empty() {
        return Ok(Polytope {
            space: space.clone(),
            vertices: vec![linalg::zeros(dim)],
            facets: Vec::new(),
            equalities: std_basis_halfspaces(dim),
            basis: Some(Vec::new()),
        });
    }
    let k = basis.dim();
    let zero = Element::zero(space);
    let iv = interval(space, &zero, u)?;
    let y_gens: Vec<Vecq> = iv
        .vertices()
        .iter()
        .filter(|v| !linalg::is_zero_vec(v))
        .map(|v| basis.coordinates_of(v).expect("interval vertices lie in the ideal"))
        .collect();
    let (cone_rows, span_normals) = dd::cone_facets_of(&y_gens, k);
    debug_assert!(span_normals.is_empty(), "generators span the ideal by construction");
    let mut y_facets: Vec<Halfspace> = cone_rows
        .into_iter()
        .map(|r| Halfspace::new(linalg::neg(&r), Rational::zero()))
        .collect();
    for (row, gap) in space.facets()?.iter().zip(space.facet_unit()?) {
        let projected: Vecq = basis.vectors().iter().map(|b| linalg::dot(row, b)).collect();
        y_facets.push(Halfspace::new(projected.clone(), gap.clone()));
        y_facets.push(Halfspace::new(linalg::neg(&projected), gap.clone()));
    }
    let y_vertices = dd::vertices_of(&y_facets, &[], k)?;
    let mut vertices: Vec<Vecq> = y_vertices.iter().map(|y| basis.embed(y)).collect();
    vertices.sort_by(|a, b| dd::cmp_lex(b, a));
    let (facets, equalities) = dd::facets_of(&vertices, dim);
    Ok(Polytope {
        space: space.clone(),
        vertices,
        facets,
        equalities,
        basis: Some(basis.vectors().to_vec()),
    })
}

/// Is every point of `p` inside `q`? Checked exactly: each vertex of `p`
/// against each facet and equality of `q`; the witness is the first
/// violating vertex in canonical order.
pub fn polytope_subset(p: &Polytope, q: &Polytope) -> Result<Decision> {
    if p.space() != q.space() {
        return Err(Error::SpaceMismatch);
    }
    if p.is_empty() {
        return Ok(Decision::new(true).with_route("vertex-scan", true, Exactness::Exact));
    }
    if q.is_empty() {
        let w = Element::vector(p.space(), p.vertices()[0].clone())?;
        return Ok(Decision::new(false)
            .with_route("vertex-scan", false, Exactness::Exact)
            .with_witness(Witness::Element(w)));
    }
    for v in p.vertices() {
        if !q.contains(v) {
            let w = Element::vector(p.space(), v.clone())?;
            return Ok(Decision::new(false)
                .with_route("vertex-scan", false, Exactness::Exact)
                .with_witness(Witness::Element(w)));
        }
    }
    Ok(Decision::new(true).with_route("vertex-scan", true, Exactness::Exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int, Scalar};

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
    fn interval_examples() {
        let s = quadrant(2);
        let zero = Element::zero(&s);
        let u = el(&s, &[(1, 1), (0, 1)]);
        let iv = interval(&s, &zero, &u).unwrap();
        assert_eq!(iv.vertices(), &[vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(0)]]);

        let u = el(&s, &[(1, 1), (1, 2)]);
        let sym = interval(&s, &u.neg(), &u).unwrap();
        assert_eq!(sym.vertices().len(), 4);
        // Minkowski symmetry: v is a vertex iff −v is
        for v in sym.vertices() {
            assert!(sym.is_vertex(&linalg::neg(v)));
        }

        // incomparable bounds give the empty interval
        let a = el(&s, &[(1, 1), (0, 1)]);
        let b = el(&s, &[(0, 1), (1, 1)]);
        assert!(interval(&s, &a, &b).unwrap().is_empty());
    }

    #[test]
    fn ideal_basis_examples() {
        let s = quadrant(2);
        let b = ideal_basis(&s, &el(&s, &[(1, 1), (0, 1)])).unwrap();
        assert_eq!(b.vectors(), &[vec![rat_int(1), rat_int(0)]]);

        let b = ideal_basis(&s, &el(&s, &[(1, 1), (1, 2)])).unwrap();
        assert_eq!(b.dim(), 2);

        let s3 = quadrant(3);
        let b = ideal_basis(&s3, &el(&s3, &[(1, 1), (1, 1), (0, 1)])).unwrap();
        assert_eq!(
            b.vectors(),
            &[vec![rat_int(1), rat_int(0), rat_int(0)], vec![rat_int(0), rat_int(1), rat_int(0)]]
        );

        assert!(ideal_basis(&s, &Element::zero(&s)).unwrap().is_empty());
        assert!(ideal_basis(&s, &el(&s, &[(-1, 1), (0, 1)])).is_err());
    }

    #[test]
    fn norm_slice_examples() {
        let s = quadrant(2);
        let sl = norm_slice(&s, &el(&s, &[(1, 1), (0, 1)])).unwrap();
        assert_eq!(sl.vertices(), &[vec![rat_int(1), rat_int(0)], vec![rat_int(-1), rat_int(0)]]);

        let sl = norm_slice(&s, &el(&s, &[(1, 1), (1, 2)])).unwrap();
        assert_eq!(sl.vertices().len(), 4);
        assert!(sl.is_vertex(&vec![rat_int(1), rat_int(1)]));

        let s3 = quadrant(3);
        let sl = norm_slice(&s3, &el(&s3, &[(1, 1), (1, 2), (0, 1)])).unwrap();
        assert_eq!(sl.vertices().len(), 4);
        assert!(sl.is_vertex(&vec![rat_int(1), rat_int(1), rat_int(0)]));
        // every vertex has norm exactly 1
        for v in sl.vertices() {
            let e = Element::vector(&s3, v.clone()).unwrap();
            assert_eq!(s3.norm(&e).unwrap(), Scalar::Rational(rat_int(1)));
        }
    }

    #[test]
    fn subset_examples() {
        let s = quadrant(2);
        let u = el(&s, &[(1, 1), (1, 2)]);
        let box_u = interval(&s, &u.neg(), &u).unwrap();
        let e = s.unit();
        let ball = interval(&s, &e.neg(), &e).unwrap();
        let seg = norm_slice(&s, &el(&s, &[(1, 1), (0, 1)])).unwrap();

        assert!(polytope_subset(&seg, &ball).unwrap().holds);
        let d = polytope_subset(&ball, &box_u).unwrap();
        assert!(!d.holds);
        // first violating vertex in descending order is (1,1)
        match d.witness {
            Some(Witness::Element(w)) => {
                assert_eq!(w.as_vec().unwrap(), &vec![rat_int(1), rat_int(1)])
            }
            _ => panic!("expected a vertex witness"),
        }

        let a = el(&s, &[(1, 1), (0, 1)]);
        let b = el(&s, &[(0, 1), (1, 1)]);
        let empty = interval(&s, &a, &b).unwrap();
        assert!(polytope_subset(&empty, &box_u).unwrap().holds);
    }

    #[test]
    fn dd_convert_roundtrip() {
        let s = quadrant(2);
        let pts = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(0)],
            vec![rat(1, 2), rat_int(0)],
        ];
        let p = Polytope::from_vertices(&s, &pts).unwrap();
        assert_eq!(p.vertices().len(), 2, "interior point dropped");
        assert_eq!(p.equalities().len(), 1, "segment carries its hull equality");
        let q = Polytope::from_h(&s, p.facets().to_vec(), p.equalities().to_vec()).unwrap();
        assert_eq!(p.vertices(), q.vertices());
    }

    #[test]
    fn unbounded_from_h_errors() {
        let s = quadrant(2);
        let facets = vec![Halfspace::new(vec![rat_int(-1), rat_int(0)], rat_int(0))];
        assert!(matches!(Polytope::from_h(&s, facets, vec![]), Err(Error::Unbounded)));
    }

    #[test]
    fn cone_ball_slice_square() {
        let s = quadrant(2);
        // cone([0, u]) for u = (1, ½) is the whole quadrant; its ball slice
        // is the unit square of the positive orthant
        let sl = cone_ball_slice(&s, &el(&s, &[(1, 1), (1, 2)])).unwrap();
        assert_eq!(sl.vertices().len(), 4);
        assert!(sl.is_vertex(&vec![rat_int(1), rat_int(1)]));
        assert!(sl.is_vertex(&vec![rat_int(0), rat_int(0)]));
    }
}
