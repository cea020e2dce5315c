//! Mishchenko-Fomenko argument-shift families on the classical Lie algebras
//! `sl(r+1)`, `so(2r+1)` and `sp(2r)`, principal sl2-triples and their
//! Slodowy slices, and rank computations certifying that the shifted
//! family restricts to a completely integrable system on regular adjoint
//! orbits.
//!
//! Structural identities run in exact Gaussian-rational arithmetic
//! ([`Exact`]); sampling campaigns run in complex double precision
//! ([`Complex64`]). Most operations are generic over [`Scalar`].

pub mod error;
pub mod invariants;
pub mod liealg;
pub mod linalg;
pub mod rootdata;
pub mod sampling;
pub mod scalar;
pub mod shift;
pub mod slodowy;
pub mod verifier;

pub use error::{Error, Result};
pub use invariants::InvariantSystem;
pub use liealg::{AlgebraElement, LieAlgebra};
pub use rootdata::{CartanType, ChevalleyBasis, RootSystem};
pub use scalar::{Complex64, Exact, Rational, Scalar};
pub use shift::MfFamily;
pub use slodowy::{principal_sl2, slodowy_slice, Sl2Triple, SlodowySlice};
pub use verifier::{structural_checks, verify_completeness, Campaign, Mode, RankReport, SampleKind, Verdict};
