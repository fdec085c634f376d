//! Decision procedures for finite-dimensional order unit spaces.
//!
//! Three backends realize the same contract. The polyhedral backend carries
//! exact rational arithmetic end to end: cones arrive as facet rows or
//! generators, order intervals and norm slices are enumerated by double
//! description, and every predicate (orthogonality, the order unit property,
//! order projections, ideal decompositions) is decided by finite vertex
//! scans with machine-checkable witnesses. The symmetric-matrix backend
//! carries the PSD cone with `e = I` under a fixed 1e−9 spectral tolerance.
//! The adjoined backend builds `ℝ ⊕₁ X` over a pluggable norm and reduces
//! its decisions to ball geometry, exporting to the polyhedral backend for
//! cross-validation whenever the ball is polyhedral.
//!
//! Every derived reduction is guarded by the definition-level randomized
//! falsifiers in [`oracle`]; the named suites in [`suites`] run those guards
//! wholesale and exit loudly on any route disagreement.

pub mod adjoined;
pub mod error;
pub mod jsonio;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod ortho;
pub mod polyhedral;
pub mod projections;
pub mod scalar;
pub mod space;
pub mod suites;
pub mod testgen;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
pub use space::{Backend, Decision, Element, Exactness, SpaceRef, Tri, Witness};

pub use adjoined::{adjoin, NormSpec};
pub use jsonio::{load_space, parse_element};
