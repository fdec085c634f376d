//! Shared domain types: validated order unit spaces, elements tagged with
//! their space, and the `Decision` record every predicate returns.
//!
//! A space is immutable once validated. The order-unit norm is
//! `‖v‖ = min { λ ≥ 0 : λe ± v ∈ V⁺ }`; on the polyhedral backend with facet
//! rows `a_i` this evaluates exactly to `max_i |⟨a_i,v⟩| / ⟨a_i,e⟩`.

use num_traits::{Signed, Zero};
use std::sync::{Arc, OnceLock};

use crate::adjoined::NormSpec;
use crate::error::{Error, Result};
use crate::linalg::{self, Vecq};
use crate::matrix::SymMatrix;
use crate::polyhedral::dd;
use crate::scalar::{format_rational, rational_to_f64, Rational, Scalar, SPECTRAL_TOL};

/// Three-valued verdict for tolerance-band checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Undecided,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn into_result(self, slack: f64, tol: f64) -> Result<bool> {
        match self {
            Tri::True => Ok(true),
            Tri::False => Ok(false),
            Tri::Undecided => Err(Error::Undecided { slack, tol }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Polyhedral,
    SymMatrix,
    Adjoined,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Polyhedral => "polyhedral",
            Backend::SymMatrix => "sym-matrix",
            Backend::Adjoined => "adjoined",
        }
    }
}

#[derive(Debug)]
pub enum BackendData {
    Polyhedral {
        /// facet rows `a_i`; the cone is `{v : ⟨a_i, v⟩ ≥ 0}`
        facets: Vec<Vecq>,
        /// `⟨a_i, e⟩`, strictly positive after validation
        facet_unit: Vec<Rational>,
        /// generator list as supplied by the descriptor, if any
        given_generators: Option<Vec<Vecq>>,
        /// extreme rays, computed on demand
        rays: OnceLock<Vec<Vecq>>,
    },
    SymMatrix {
        side: usize,
    },
    Adjoined {
        norm: NormSpec,
    },
}

#[derive(Debug)]
pub struct SpaceData {
    pub(crate) dim: usize,
    pub(crate) backend: BackendData,
    pub(crate) unit: Coords,
}

/// Immutable handle to a validated order unit space.
#[derive(Clone, Debug)]
pub struct SpaceRef(pub(crate) Arc<SpaceData>);

impl PartialEq for SpaceRef {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.dim != other.0.dim || self.0.unit != other.0.unit {
            return false;
        }
        match (&self.0.backend, &other.0.backend) {
            (
                BackendData::Polyhedral { facets: a, .. },
                BackendData::Polyhedral { facets: b, .. },
            ) => a == b,
            (BackendData::SymMatrix { side: a }, BackendData::SymMatrix { side: b }) => a == b,
            (BackendData::Adjoined { norm: a }, BackendData::Adjoined { norm: b }) => a == b,
            _ => false,
        }
    }
}

/// Coordinates of an element, matching the backend of its space.
#[derive(Clone, Debug, PartialEq)]
pub enum Coords {
    Vector(Vecq),
    Matrix(SymMatrix),
    Pair { alpha: Rational, x: Vecq },
}

/// A coordinate vector (or symmetric matrix, or (α, x) pair) tagged with the
/// space it lives in. Cross-space arithmetic errors instead of coercing.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    space: SpaceRef,
    coords: Coords,
}

// ---------------------------------------------------------------------------
// decisions

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    /// exact rational arithmetic, no tolerance anywhere
    Exact,
    /// floating point under the stated tolerance band
    Toleranced,
    /// randomized sampling; a `true` only means "not falsified"
    Sampled,
}

impl Exactness {
    pub fn name(&self) -> &'static str {
        match self {
            Exactness::Exact => "exact",
            Exactness::Toleranced => "tolerance",
            Exactness::Sampled => "sampled",
        }
    }

    pub fn decisive(&self) -> bool {
        !matches!(self, Exactness::Sampled)
    }
}

#[derive(Debug, Clone)]
pub struct Route {
    pub name: String,
    pub holds: bool,
    pub exactness: Exactness,
}

impl Route {
    pub fn new(name: &str, holds: bool, exactness: Exactness) -> Route {
        Route { name: name.to_string(), holds, exactness }
    }
}

/// Certificate attached to a negative decision; re-evaluating the violated
/// inequality on the witness must reproduce the verdict.
#[derive(Debug, Clone)]
pub enum Witness {
    Element(Element),
    Pair(Element, Element),
    /// a grid multiplier k violating a definitional equality on (x, y)
    Scale { k: Scalar, x: Element, y: Element },
}

/// Boolean verdict plus the evidence that produced it.
#[derive(Debug, Clone)]
pub struct Decision {
    pub holds: bool,
    pub trivial: bool,
    pub witness: Option<Witness>,
    pub routes: Vec<Route>,
    pub tolerance: Option<f64>,
}

impl Decision {
    pub fn new(holds: bool) -> Decision {
        Decision { holds, trivial: false, witness: None, routes: Vec::new(), tolerance: None }
    }

    pub fn trivial(holds: bool) -> Decision {
        Decision { trivial: true, ..Decision::new(holds) }
    }

    pub fn with_route(mut self, name: &str, holds: bool, exactness: Exactness) -> Decision {
        self.routes.push(Route::new(name, holds, exactness));
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Decision {
        self.witness = Some(w);
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Decision {
        self.tolerance = Some(tol);
        self
    }

    /// All decisive routes must agree, and no verified sampled witness may
    /// contradict a decisive `true`. Anything else is the bug trap.
    pub fn check_routes(&self, op: &str) -> Result<()> {
        let mut decisive: Option<bool> = None;
        for r in &self.routes {
            if r.exactness.decisive() {
                match decisive {
                    None => decisive = Some(r.holds),
                    Some(v) if v != r.holds => {
                        return Err(Error::RouteDisagreement {
                            op: op.to_string(),
                            detail: route_summary(&self.routes),
                        });
                    }
                    _ => {}
                }
            }
        }
        if let Some(true) = decisive {
            if self.routes.iter().any(|r| !r.exactness.decisive() && !r.holds) {
                return Err(Error::RouteDisagreement {
                    op: op.to_string(),
                    detail: format!("sampled falsifier contradicts exact routes: {}", route_summary(&self.routes)),
                });
            }
        }
        Ok(())
    }
}

fn route_summary(routes: &[Route]) -> String {
    routes
        .iter()
        .map(|r| format!("{}={} ({})", r.name, r.holds, r.exactness.name()))
        .collect::<Vec<_>>()
        .join(", ")
}

// ---------------------------------------------------------------------------
// validation

#[derive(Debug, Clone)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Vec<String>>,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, witness: Option<&[Rational]>, detail: String) {
        self.checks.push(ValidationCheck {
            name: name.to_string(),
            passed,
            witness: witness.map(|w| w.iter().map(format_rational).collect()),
            detail,
        });
    }

    pub fn first_failure(&self) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn into_result(self) -> Result<ValidationReport> {
        if let Some(fail) = self.first_failure() {
            return Err(Error::Validation { reason: format!("{}: {}", fail.name, fail.detail) });
        }
        Ok(self)
    }
}

// ---------------------------------------------------------------------------
// construction

impl SpaceRef {
    /// Build and validate a polyhedral space from facet rows and/or
    /// generators plus the order unit.
    pub fn polyhedral(
        facets: Option<Vec<Vecq>>,
        generators: Option<Vec<Vecq>>,
        unit: Vecq,
    ) -> Result<SpaceRef> {
        let dim = unit.len();
        if dim == 0 {
            return Err(Error::Validation { reason: "ambient dimension must be at least 1".into() });
        }
        let check_dim = |rows: &[Vecq], what: &str| -> Result<()> {
            for r in rows {
                if r.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
                }
                if linalg::is_zero_vec(r) {
                    return Err(Error::Validation { reason: format!("zero {what} row") });
                }
            }
            Ok(())
        };
        if let Some(h) = &facets {
            check_dim(h, "facet")?;
        }
        if let Some(g) = &generators {
            check_dim(g, "generator")?;
        }
        let derived_rows;
        let rows: &Vec<Vecq> = match (&facets, &generators) {
            (Some(h), _) => h,
            (None, Some(g)) => {
                let (mut rows, span_normals) = dd::cone_facets_of(g, dim);
                for n in span_normals {
                    rows.push(linalg::neg(&n));
                    rows.push(n);
                }
                derived_rows = rows;
                &derived_rows
            }
            (None, None) => {
                return Err(Error::Validation { reason: "cone needs facets or generators".into() })
            }
        };
        let mut canon: Vec<Vecq> = rows.iter().map(|r| linalg::normalize_ray(r)).collect();
        canon.sort_by(dd::cmp_lex);
        canon.dedup();

        let mut report = ValidationReport::default();
        validate_polyhedral_into(&mut report, &canon, generators.as_deref(), &unit);
        report.into_result()?;

        let facet_unit: Vec<Rational> = canon.iter().map(|a| linalg::dot(a, &unit)).collect();
        Ok(SpaceRef(Arc::new(SpaceData {
            dim,
            backend: BackendData::Polyhedral {
                facets: canon,
                facet_unit,
                given_generators: generators,
                rays: OnceLock::new(),
            },
            unit: Coords::Vector(unit),
        })))
    }

    /// Real symmetric `side × side` matrices with the PSD cone and `e = I`.
    pub fn sym_matrix(side: usize) -> Result<SpaceRef> {
        if side == 0 {
            return Err(Error::Validation { reason: "matrix side must be at least 1".into() });
        }
        Ok(SpaceRef(Arc::new(SpaceData {
            dim: side,
            backend: BackendData::SymMatrix { side },
            unit: Coords::Matrix(SymMatrix::identity(side)),
        })))
    }

    /// The adjoined space `ℝ ⊕₁ X` with cone `{(α, x) : ‖x‖_X ≤ α}` and
    /// unit `(1, 0)`.
    pub fn adjoined(norm: NormSpec) -> Result<SpaceRef> {
        norm.validate()?;
        let dim = norm.dim() + 1;
        let x_dim = norm.dim();
        Ok(SpaceRef(Arc::new(SpaceData {
            dim,
            backend: BackendData::Adjoined { norm },
            unit: Coords::Pair { alpha: Rational::from_integer(1.into()), x: linalg::zeros(x_dim) },
        })))
    }

    pub fn backend(&self) -> Backend {
        match &self.0.backend {
            BackendData::Polyhedral { .. } => Backend::Polyhedral,
            BackendData::SymMatrix { .. } => Backend::SymMatrix,
            BackendData::Adjoined { .. } => Backend::Adjoined,
        }
    }

    /// Coordinate dimension of elements (matrix backend: side length).
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn unit(&self) -> Element {
        Element { space: self.clone(), coords: self.0.unit.clone() }
    }

    pub fn facets(&self) -> Result<&[Vecq]> {
        match &self.0.backend {
            BackendData::Polyhedral { facets, .. } => Ok(facets),
            other => Err(unsupported(other, "facet access")),
        }
    }

    pub(crate) fn facet_unit(&self) -> Result<&[Rational]> {
        match &self.0.backend {
            BackendData::Polyhedral { facet_unit, .. } => Ok(facet_unit),
            other => Err(unsupported(other, "facet access")),
        }
    }

    pub fn norm_spec(&self) -> Result<&NormSpec> {
        match &self.0.backend {
            BackendData::Adjoined { norm } => Ok(norm),
            other => Err(unsupported(other, "adjoined norm access")),
        }
    }

    pub fn matrix_side(&self) -> Result<usize> {
        match &self.0.backend {
            BackendData::SymMatrix { side } => Ok(*side),
            other => Err(unsupported(other, "matrix access")),
        }
    }

    /// Extreme rays of the cone (polyhedral backend), cached.
    pub fn cone_rays(&self) -> Result<&[Vecq]> {
        match &self.0.backend {
            BackendData::Polyhedral { facets, rays, .. } => Ok(rays.get_or_init(|| {
                dd::extreme_rays(facets, self.0.dim).rays
            })),
            other => Err(unsupported(other, "ray enumeration")),
        }
    }

    /// Re-run the construction-time axioms and report each with a witness.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        match &self.0.backend {
            BackendData::Polyhedral { facets, given_generators, .. } => {
                let Coords::Vector(unit) = &self.0.unit else { unreachable!() };
                validate_polyhedral_into(&mut report, facets, given_generators.as_deref(), unit);
            }
            BackendData::SymMatrix { side } => {
                report.push(
                    "psd-cone",
                    *side >= 1,
                    None,
                    format!("PSD cone on {side}x{side} symmetric matrices, e = I"),
                );
            }
            BackendData::Adjoined { norm } => {
                let passed = norm.validate().is_ok();
                report.push(
                    "norm-spec",
                    passed,
                    None,
                    format!("norm on X validated, dim {}", norm.dim()),
                );
                report.push(
                    "pointed",
                    true,
                    None,
                    "cone ‖x‖ ≤ α is pointed: (α,x) and (−α,−x) force α = 0, x = 0".into(),
                );
                report.push("unit-interior", true, None, "(1, 0) has slack 1 − ‖x‖ > 0 at x = 0".into());
            }
        }
        report
    }
}

fn validate_polyhedral_into(
    report: &mut ValidationReport,
    facets: &[Vecq],
    generators: Option<&[Vecq]>,
    unit: &Vecq,
) {
    let dim = unit.len();
    let kernel = linalg::null_space(facets, dim);
    if kernel.is_empty() {
        report.push("pointed", true, None, "facet matrix has full rank".into());
    } else {
        report.push(
            "pointed",
            false,
            Some(&kernel[0]),
            "cone not pointed: witness direction lies in C ∩ −C".into(),
        );
    }
    match facets.iter().find(|a| !linalg::dot(a, unit).is_positive()) {
        None => {
            report.push("unit-interior", true, None, "⟨a_i, e⟩ > 0 for every facet row".into())
        }
        Some(a) => report.push(
            "unit-interior",
            false,
            Some(a),
            "order unit not interior: ⟨a, e⟩ ≤ 0 for the witness row".into(),
        ),
    }
    if let Some(gens) = generators {
        let mut ok = true;
        let mut witness: Option<Vecq> = None;
        for g in gens {
            if facets.iter().any(|a| linalg::dot(a, g).is_negative()) {
                ok = false;
                witness = Some(g.clone());
                break;
            }
        }
        if ok && kernel.is_empty() {
            // every derived extreme ray must lie in cone(generators)
            let rays = dd::extreme_rays(facets, dim).rays;
            let (rows, span_normals) = dd::cone_facets_of(gens, dim);
            for r in &rays {
                let inside = rows.iter().all(|a| !linalg::dot(a, r).is_negative())
                    && span_normals.iter().all(|n| linalg::dot(n, r).is_zero());
                if !inside {
                    ok = false;
                    witness = Some(r.clone());
                    break;
                }
            }
        }
        report.push(
            "representations-consistent",
            ok,
            witness.as_deref(),
            if ok {
                "facet and generator representations describe the same cone".into()
            } else {
                "facet/generator representations disagree at the witness".into()
            },
        );
    }
}

fn unsupported(b: &BackendData, detail: &str) -> Error {
    let backend = match b {
        BackendData::Polyhedral { .. } => Backend::Polyhedral,
        BackendData::SymMatrix { .. } => Backend::SymMatrix,
        BackendData::Adjoined { .. } => Backend::Adjoined,
    };
    Error::UnsupportedBackend { backend: backend.name().to_string(), detail: detail.to_string() }
}

// ---------------------------------------------------------------------------
// elements

impl Element {
    pub fn vector(space: &SpaceRef, coords: Vecq) -> Result<Element> {
        match space.backend() {
            Backend::Polyhedral => {
                if coords.len() != space.dim() {
                    return Err(Error::DimensionMismatch { expected: space.dim(), got: coords.len() });
                }
                Ok(Element { space: space.clone(), coords: Coords::Vector(coords) })
            }
            _ => Err(unsupported_el(space, "vector coordinates")),
        }
    }

    pub fn matrix(space: &SpaceRef, m: SymMatrix) -> Result<Element> {
        let side = space.matrix_side()?;
        if m.side() != side {
            return Err(Error::DimensionMismatch { expected: side, got: m.side() });
        }
        Ok(Element { space: space.clone(), coords: Coords::Matrix(m) })
    }

    pub fn pair(space: &SpaceRef, alpha: Rational, x: Vecq) -> Result<Element> {
        let norm = space.norm_spec()?;
        if x.len() != norm.dim() {
            return Err(Error::DimensionMismatch { expected: norm.dim(), got: x.len() });
        }
        Ok(Element { space: space.clone(), coords: Coords::Pair { alpha, x } })
    }

    pub fn zero(space: &SpaceRef) -> Element {
        let coords = match &space.0.backend {
            BackendData::Polyhedral { .. } => Coords::Vector(linalg::zeros(space.dim())),
            BackendData::SymMatrix { side } => Coords::Matrix(SymMatrix::zero(*side)),
            BackendData::Adjoined { norm } => {
                Coords::Pair { alpha: Rational::zero(), x: linalg::zeros(norm.dim()) }
            }
        };
        Element { space: space.clone(), coords }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn as_vec(&self) -> Option<&Vecq> {
        match &self.coords {
            Coords::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_mat(&self) -> Option<&SymMatrix> {
        match &self.coords {
            Coords::Matrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Rational, &Vecq)> {
        match &self.coords {
            Coords::Pair { alpha, x } => Some((alpha, x)),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.coords {
            Coords::Vector(v) => linalg::is_zero_vec(v),
            Coords::Matrix(m) => m.is_zero(),
            Coords::Pair { alpha, x } => alpha.is_zero() && linalg::is_zero_vec(x),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.coords == self.space.0.unit
    }

    fn same_space(&self, other: &Element) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_space(other)?;
        let coords = match (&self.coords, &other.coords) {
            (Coords::Vector(a), Coords::Vector(b)) => Coords::Vector(linalg::add(a, b)),
            (Coords::Matrix(a), Coords::Matrix(b)) => Coords::Matrix(a.add(b)),
            (Coords::Pair { alpha: a, x }, Coords::Pair { alpha: b, x: y }) => {
                Coords::Pair { alpha: a + b, x: linalg::add(x, y) }
            }
            _ => unreachable!("same space implies same coordinate kind"),
        };
        Ok(Element { space: self.space.clone(), coords })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let coords = match &self.coords {
            Coords::Vector(v) => Coords::Vector(linalg::neg(v)),
            Coords::Matrix(m) => Coords::Matrix(m.scale(-1.0)),
            Coords::Pair { alpha, x } => Coords::Pair { alpha: -alpha, x: linalg::neg(x) },
        };
        Element { space: self.space.clone(), coords }
    }

    pub fn scale_rational(&self, s: &Rational) -> Element {
        let coords = match &self.coords {
            Coords::Vector(v) => Coords::Vector(linalg::scale(v, s)),
            Coords::Matrix(m) => Coords::Matrix(m.scale(rational_to_f64(s))),
            Coords::Pair { alpha, x } => Coords::Pair { alpha: alpha * s, x: linalg::scale(x, s) },
        };
        Element { space: self.space.clone(), coords }
    }

    /// Scale by a scalar. Approximate scalars become exact binary rationals
    /// on rational backends; the result then carries the policy of its
    /// producing tolerance when compared.
    pub fn scale_scalar(&self, s: &Scalar) -> Result<Element> {
        match s {
            Scalar::Rational(q) => Ok(self.scale_rational(q)),
            Scalar::Approx { value, .. } => match &self.coords {
                Coords::Matrix(m) => Ok(Element {
                    space: self.space.clone(),
                    coords: Coords::Matrix(m.scale(*value)),
                }),
                _ => {
                    let q = Rational::from_float(*value).ok_or_else(|| {
                        Error::Precondition(format!("cannot scale by non-finite value {value}"))
                    })?;
                    Ok(self.scale_rational(&q))
                }
            },
        }
    }

    /// `v / ‖v‖`. Errors on zero.
    pub fn normalized(&self) -> Result<Element> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.space.norm(self)?;
        match n {
            Scalar::Rational(q) => Ok(self.scale_rational(&q.recip())),
            Scalar::Approx { value, .. } => self.scale_scalar(&Scalar::approx(1.0 / value)),
        }
    }
}

fn unsupported_el(space: &SpaceRef, detail: &str) -> Error {
    Error::UnsupportedBackend { backend: space.backend().name().to_string(), detail: detail.to_string() }
}

// ---------------------------------------------------------------------------
// norm and cone membership

impl SpaceRef {
    /// Order-unit norm. Exact rational on polyhedral and rational adjoined
    /// paths, tolerance-tagged float elsewhere.
    pub fn norm(&self, v: &Element) -> Result<Scalar> {
        if &v.space != self {
            return Err(Error::SpaceMismatch);
        }
        match (&self.0.backend, &v.coords) {
            (BackendData::Polyhedral { facets, facet_unit, .. }, Coords::Vector(x)) => {
                let mut best = Rational::zero();
                for (a, gap) in facets.iter().zip(facet_unit) {
                    let r = linalg::dot(a, x).abs() / gap;
                    if r > best {
                        best = r;
                    }
                }
                Ok(Scalar::Rational(best))
            }
            (BackendData::SymMatrix { .. }, Coords::Matrix(m)) => {
                Ok(Scalar::approx(m.spectral_radius()))
            }
            (BackendData::Adjoined { norm }, Coords::Pair { alpha, x }) => {
                Ok(match norm.eval(x) {
                    Scalar::Rational(q) => Scalar::Rational(alpha.abs() + q),
                    Scalar::Approx { value, tol } => {
                        Scalar::Approx { value: rational_to_f64(alpha).abs() + value, tol }
                    }
                })
            }
            _ => unreachable!("element coordinates match their backend by construction"),
        }
    }

    pub fn norm_f64(&self, v: &Element) -> Result<f64> {
        Ok(self.norm(v)?.to_f64())
    }

    /// Membership of `v` in the positive cone. Exact verdict on rational
    /// paths; on spectral and general-p paths an `Undecided` error reports a
    /// slack inside the tolerance band.
    pub fn cone_contains(&self, v: &Element) -> Result<bool> {
        match self.cone_membership(v)? {
            (Tri::True, _) => Ok(true),
            (Tri::False, _) => Ok(false),
            (Tri::Undecided, slack) => Err(Error::Undecided { slack, tol: SPECTRAL_TOL }),
        }
    }

    /// Three-valued membership plus the float slack where relevant.
    pub fn cone_membership(&self, v: &Element) -> Result<(Tri, f64)> {
        if &v.space != self {
            return Err(Error::SpaceMismatch);
        }
        match (&self.0.backend, &v.coords) {
            (BackendData::Polyhedral { facets, .. }, Coords::Vector(x)) => {
                let inside = facets.iter().all(|a| !linalg::dot(a, x).is_negative());
                Ok((Tri::from_bool(inside), 0.0))
            }
            (BackendData::SymMatrix { .. }, Coords::Matrix(m)) => {
                let slack = m.min_eigenvalue();
                let tri = if slack > SPECTRAL_TOL {
                    Tri::True
                } else if slack < -SPECTRAL_TOL {
                    Tri::False
                } else if m.is_zero() {
                    Tri::True
                } else {
                    Tri::Undecided
                };
                Ok((tri, slack))
            }
            (BackendData::Adjoined { norm }, Coords::Pair { alpha, x }) => {
                if alpha.is_negative() && linalg::is_zero_vec(x) {
                    return Ok((Tri::False, rational_to_f64(alpha)));
                }
                let tri = norm.le_const(x, alpha);
                let slack = rational_to_f64(alpha) - norm.eval(x).to_f64();
                Ok((tri, slack))
            }
            _ => unreachable!(),
        }
    }

    /// Positivity as a precondition: boundary elements inside the tolerance
    /// band count as positive here, unlike the three-valued membership op.
    pub fn positive_within_tol(&self, v: &Element) -> Result<bool> {
        Ok(self.cone_membership(v)?.0 != Tri::False)
    }

    /// Does `‖v‖ = c` hold? Exact on rational paths (including the closed
    /// form for ℓ2), within the 1e−9 band on float paths.
    pub fn norm_eq_const(&self, v: &Element, c: &Rational) -> Result<bool> {
        if &v.space != self {
            return Err(Error::SpaceMismatch);
        }
        match (&self.0.backend, &v.coords) {
            (BackendData::Polyhedral { .. }, _) => {
                let n = self.norm(v)?;
                Ok(n.as_rational() == Some(c))
            }
            (BackendData::SymMatrix { .. }, Coords::Matrix(m)) => {
                Ok((m.spectral_radius() - rational_to_f64(c)).abs() <= SPECTRAL_TOL)
            }
            (BackendData::Adjoined { norm }, Coords::Pair { alpha, x }) => {
                let rest = c - alpha.abs();
                Ok(norm.eq_const(x, &rest))
            }
            _ => unreachable!(),
        }
    }

    /// `a ≤ b` in the cone order.
    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool> {
        self.cone_contains(&b.sub(a)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    pub(crate) fn quadrant2() -> SpaceRef {
        SpaceRef::polyhedral(
            Some(vec![vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(1)]]),
            None,
            vec![rat_int(1), rat_int(1)],
        )
        .unwrap()
    }

    #[test]
    fn quadrant_norm_is_linf() {
        let s = quadrant2();
        let v = Element::vector(&s, vec![rat_int(3), rat_int(-4)]).unwrap();
        assert_eq!(s.norm(&v).unwrap(), Scalar::Rational(rat_int(4)));
        assert_eq!(s.norm(&s.unit()).unwrap(), Scalar::Rational(rat_int(1)));
    }

    #[test]
    fn quadrant_membership() {
        let s = quadrant2();
        let inside = Element::vector(&s, vec![rat_int(1), rat_int(2)]).unwrap();
        let outside = Element::vector(&s, vec![rat_int(1), rat_int(-2)]).unwrap();
        assert!(s.cone_contains(&inside).unwrap());
        assert!(!s.cone_contains(&outside).unwrap());
    }

    #[test]
    fn rejects_non_interior_unit() {
        let err = SpaceRef::polyhedral(
            Some(vec![vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(1)]]),
            None,
            vec![rat_int(1), rat_int(0)],
        )
        .unwrap_err();
        assert!(err.to_string().contains("order unit not interior"), "{err}");
    }

    #[test]
    fn rejects_unpointed_cone() {
        let err = SpaceRef::polyhedral(
            Some(vec![vec![rat_int(1), rat_int(0)]]),
            None,
            vec![rat_int(1), rat_int(1)],
        )
        .unwrap_err();
        assert!(err.to_string().contains("not pointed"), "{err}");
    }

    #[test]
    fn generator_only_descriptor_detects_unpointed() {
        // generators {(1,0), (−1,0), (0,1)} span a halfplane
        let err = SpaceRef::polyhedral(
            None,
            Some(vec![
                vec![rat_int(1), rat_int(0)],
                vec![rat_int(-1), rat_int(0)],
                vec![rat_int(0), rat_int(1)],
            ]),
            vec![rat_int(0), rat_int(1)],
        )
        .unwrap_err();
        assert!(err.to_string().contains("not pointed"), "{err}");
    }

    #[test]
    fn skew_cone_via_generators_roundtrips() {
        // cone{(1,0),(1,1)} has facets x₂ ≥ 0 and x₁ − x₂ ≥ 0
        let s = SpaceRef::polyhedral(
            None,
            Some(vec![vec![rat_int(1), rat_int(0)], vec![rat_int(1), rat_int(1)]]),
            vec![rat_int(2), rat_int(1)],
        )
        .unwrap();
        assert!(s.validate().ok());
        let u = Element::vector(&s, vec![rat_int(1), rat_int(0)]).unwrap();
        assert_eq!(s.norm(&u).unwrap(), Scalar::Rational(rat_int(1)));
        let rays = s.cone_rays().unwrap();
        assert_eq!(rays.len(), 2);
    }

    #[test]
    fn cross_space_arithmetic_errors() {
        let a = quadrant2();
        let b = SpaceRef::polyhedral(
            Some(vec![vec![rat_int(1), rat_int(0)], vec![rat(1, 2), rat_int(1)]]),
            None,
            vec![rat_int(1), rat_int(1)],
        )
        .unwrap();
        let va = Element::vector(&a, vec![rat_int(1), rat_int(0)]).unwrap();
        let vb = Element::vector(&b, vec![rat_int(1), rat_int(0)]).unwrap();
        assert!(matches!(va.add(&vb), Err(Error::SpaceMismatch)));
        assert!(matches!(b.norm(&va), Err(Error::SpaceMismatch)));
    }

    #[test]
    fn norm_axioms_on_random_rationals() {
        let s = quadrant2();
        // deterministic pseudo-random triples with small denominators
        let vals = [-7i64, -3, -1, 0, 1, 2, 5];
        for &a in &vals {
            for &b in &vals {
                let v = Element::vector(&s, vec![rat(a, 2), rat(b, 3)]).unwrap();
                let n = s.norm(&v).unwrap();
                let nq = n.as_rational().unwrap().clone();
                assert_eq!(nq.is_zero(), v.is_zero());
                // order-unit consistency: ‖v‖·e ± v ∈ V⁺
                let ne = s.unit().scale_rational(&nq);
                assert!(s.cone_contains(&ne.add(&v).unwrap()).unwrap());
                assert!(s.cone_contains(&ne.sub(&v).unwrap()).unwrap());
                // homogeneity
                let w = v.scale_rational(&rat(-3, 2));
                assert_eq!(
                    s.norm(&w).unwrap().as_rational().unwrap(),
                    &(nq.clone() * rat(3, 2))
                );
            }
        }
    }
}
