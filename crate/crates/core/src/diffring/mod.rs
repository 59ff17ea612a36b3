//! Exact symbolic arithmetic in the differential polynomial ring
//! `C[u_1, ..., u_k, Du_1, ..., D²u_1, ...]` extended by the commuting
//! scalars `t` and `x_1, ..., x_k`.
//!
//! Coefficients are Gaussian rationals, so every identity check in the
//! hierarchy layer is exact: equality of two [`DiffPoly`] values is equality
//! of canonical forms, with no tolerances anywhere.
//!
//! The total derivative `D` acts by `D u_j^{(m)} = u_j^{(m+1)}`, `D t = 1`,
//! `D x_j = 0`. Its left inverse `D⁻¹` is defined on `Im(D)` (membership is
//! decided by the Euler operator) and normalized to produce no constant term.

mod calculus;
mod coeff;
mod poly;
mod text;
mod vecmat;

pub use calculus::NotExactWitness;
pub use coeff::GaussRat;
pub use poly::{cmp_grlex, DiffPoly, Generator, Monomial};
pub use text::{DiffPolyJson, TermJson};
pub use vecmat::{antisym_bracket, inner, outer, sym_bracket, MatDiffPoly, VecDiffPoly};

/// Errors from ring operations.
#[derive(Debug, Clone, thiserror::Error)]
pub enum RingError {
    /// The argument of `D⁻¹` is not a total derivative.
    #[error("not in the image of D: {0}")]
    NotExact(Box<NotExactWitness>),

    /// Vector or matrix operands of unequal dimension.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// The antiderivative reduction stalled even though the exactness
    /// pre-check passed; indicates an internal inconsistency, never expected.
    #[error("antiderivative reduction stalled at order {order} with {terms} terms")]
    AntiderivativeStuck { order: u16, terms: usize },

    /// Malformed text or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}
