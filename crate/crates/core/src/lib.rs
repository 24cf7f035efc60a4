//! Finite-dimensional reconstruction systems (g-frames).
//!
//! A reconstruction system is a family of linear maps `V_i : C^d -> C^{k_i}`
//! with positive invertible frame operator `S_V = sum V_i^* V_i`. This crate
//! provides:
//!
//! - the data model, frame operator and classification ([`system`]);
//! - canonical duals and a parametrization of all duals ([`duals`]);
//! - packet-erasure error measures and erasure-optimal duals ([`erasure`]);
//! - stability under erasure of a known set of packets ([`stability`]);
//! - nearest projective approximation ([`approx`]);
//! - group systems, projective dual pairs and Riesz systems ([`constructions`]);
//! - the JSON exchange format ([`io`]).

pub mod approx;
pub mod constructions;
pub mod duals;
pub mod erasure;
pub mod error;
pub mod io;
pub mod linalg;
pub mod random;
pub mod stability;
pub mod system;

pub use approx::{nearest_projective, polar_coisometry, PolarFactorization, ProjectiveApproximation};
pub use duals::{canonical_dual, dual_manifold_sample, verify_dual, DualCandidate, DualManifold};
pub use erasure::{
    blind_reconstruct, error_report, optimal_dual_two_error, wce_condition, wce_minimize, ErasureMask,
    ErrorReport, WceMinimum,
};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector};
pub use stability::{ck_sufficient_condition, truncate, truncated_canonical_dual, TruncationReport};
pub use system::{ReconstructionSystem, Signature, SystemClassification, DEFAULT_TOLERANCE};
