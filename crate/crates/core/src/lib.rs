//! Multilinear polynomial identities of quiver path algebras and of the
//! incidence algebras attached to them.
//!
//! A quiver `Q` with a set of paths `π` gives two algebras: `FQ_π`, spanned
//! by products of paths in `π`, and the incidence algebra `A_π` of the
//! transitive relation generated by the endpoints of `π`. The crate computes
//! the multilinear identities of `A_π` exactly and checks, up to a path
//! length bound, that they also hold in `FQ_π` when `Q` is PI.

pub mod algebra;
pub mod error;
pub mod identities;
pub mod incidence;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod quiver;
pub mod subspace;
pub mod syntax;
pub mod verifier;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

pub use algebra::{evaluate, Algebra};
pub use error::{Error, Result};
pub use identities::{identity_space, nonvanishing_unit_tuple, tideal_component, Budget, UnitWitness};
pub use incidence::{maximal_chains, phi, Chain, IncidenceAlgebra, IncidenceElement, TransitiveRelation};
pub use perm::{Permutation, MAX_DEGREE};
pub use poly::{commutator, product, standard_poly, Factor, MultilinearPoly};
pub use quiver::{Arrow, Path, PathAlgebraElement, PathSet, PiStatus, Quiver, Vertex, DEFAULT_MAX_LEN};
pub use subspace::{Comparison, IdentitySubspace};
pub use syntax::{parse_poly, SyntaxError};
pub use verifier::{
    sector_decompose, theorem_report, verify_identity_on_paths, verify_unique_products, PathTuple, ReportOptions,
    ScanOptions, SectorReport, TheoremReport,
};
