//! The vector-valued Painlevé II hierarchy and its Lax pair.
//!
//! The hierarchy is generated twice, by independent routes, and the two
//! results must agree exactly:
//!
//! * direct operator composition `(L+ L-)^n u` with the Lenard-type
//!   operators of [`lenard_plus`] / [`lenard_minus`];
//! * the recursively built chain of Lax-matrix blocks ([`lax_chain`]),
//!   whose closing relation reproduces the same equation.
//!
//! [`verify_compatibility`] and [`verify_convolutions`] check the zero-curvature
//! system, the trace identity, the parity symmetries and the convolution
//! identities as exact statements in the ring, reporting any residual
//! polynomial verbatim.

mod chain;
mod lenard;
mod member;
mod verify;

pub use chain::{b_lambda_coeffs, lax_chain, BMatrix, LaxBlock, LenardChain};
pub use lenard::{lenard_minus, lenard_plus};
pub use member::{hierarchy_member, member_via_chain, HierarchyMember};
pub use verify::{verify_compatibility, verify_convolutions, CheckOutcome, VerifyReport};

use crate::diffring::RingError;

/// Errors from hierarchy construction and verification.
#[derive(Debug, thiserror::Error)]
pub enum HierarchyError {
    /// A Lenard-operator precondition (`... ∈ D(R)`) failed.
    #[error("{operator} precondition failed at {location}: {source}")]
    NotExact {
        operator: &'static str,
        location: String,
        source: RingError,
    },

    /// An identity that must hold exactly has a nonzero residual.
    #[error("identity `{name}` violated; residual: {residual}")]
    IdentityViolation { name: String, residual: String },

    #[error(transparent)]
    Ring(#[from] RingError),

    /// Parameters outside the supported range.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
