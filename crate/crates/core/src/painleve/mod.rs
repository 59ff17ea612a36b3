//! Numerical solution of the hierarchy ODE and the Tracy–Widom type
//! integral.
//!
//! The symbolic member `(L+ L-)^n u = -diag(x_j + t) u` is compiled into an
//! evaluable right-hand side ([`compile_rhs`]), seeded at large `t` from the
//! Airy-type asymptotics `u_j ≈ √(α_j - α_{j+1}) Ai_n(t + x_j)`
//! ([`seed_from_asymptotics`]), integrated backwards with an adaptive
//! embedded Runge–Kutta pair ([`integrate`]), and finally
//! `log F = -∫_0^∞ t <u(t), u(t)> dt` is evaluated on the dense output grid
//! ([`tw_integral`]). [`verify_tw`] compares the result with the Fredholm
//! determinant route.
//!
//! The state is complex throughout: depending on the signs of
//! `α_j - α_{j+1}` the components are real or purely imaginary, and the
//! bilinear `<u, u> = Σ u_j²` (no conjugation) makes imaginary components
//! contribute negatively to the integrand.

mod compile;
mod solve;
mod tw;

pub use compile::{compile_rhs, CompiledRhs};
pub use solve::{
    integrate, seed_from_asymptotics, IntegrateOptions, Seed, SeedOptions, SolutionGrid,
};
pub use tw::{tw_integral, verify_tw, TwIntegral, VerifyTwOptions, VerifyTwReport};

use crate::airy::AiryError;
use crate::fredholm::FredholmError;
use crate::hierarchy::HierarchyError;

/// Errors from compilation, seeding, integration and the integral.
#[derive(Debug, thiserror::Error)]
pub enum PainleveError {
    /// The hierarchy member is not monic in the top derivative (up to the
    /// constant `i^{2n}`); would indicate a generation bug upstream.
    #[error("member not solvable for the top derivative in component {comp}: {detail}")]
    NotMonic { comp: u8, detail: String },

    #[error("adjacent weights coincide at position {j}; the asymptotic seed degenerates")]
    WeightCollision { j: usize },

    #[error("seed amplitude {amplitude:.3e} at t_max = {t_max} exceeds the threshold {threshold:.1e}; increase t_max")]
    SeedTooLarge {
        t_max: f64,
        amplitude: f64,
        threshold: f64,
    },

    #[error("step size underflow at t = {t}")]
    StepFailure { t: f64 },

    #[error("no trust window: tightened-tolerance agreement or the reality pattern fails everywhere")]
    TrustWindowEmpty,

    #[error("tail bound {bound:.3e} beyond t = {from} exceeds tolerance")]
    TailTooLarge { from: f64, bound: f64 },

    #[error("solution grid does not cover [{needed_lo}, {needed_hi}]")]
    GridCoverage { needed_lo: f64, needed_hi: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),

    #[error(transparent)]
    Airy(#[from] AiryError),

    #[error(transparent)]
    Fredholm(#[from] FredholmError),
}
