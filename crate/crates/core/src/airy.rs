//! Higher-order Airy functions on the real line.
//!
//! `Ai_n` is evaluated from its contour representation
//! `Ai_n(x) = (1/2π) ∫_Γ exp(i ψ_n(λ; x)) dλ` with phase
//! `ψ_n(λ; x) = λ^{2n+1}/(2n+1) + λ x`, where the contour runs in along a
//! ray at angle `a` and out along a ray at angle `b` with
//! `a ∈ (2nπ/(2n+1), π)` and `b ∈ (0, π/(2n+1))`. Within those sectors
//! `Re(i ψ_n) → -∞` along both rays, so a truncated Gauss–Legendre rule per
//! ray converges geometrically. The default angles bisect the decay-optimal
//! halves of the admissible sectors; they are mirror images, which makes the
//! quadrature real to rounding. `n = 1` is the classical Airy function.

use crate::quad::gauss_legendre;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Errors from contour evaluation.
#[derive(Debug, Clone, thiserror::Error)]
pub enum AiryError {
    #[error("contour angles outside the admissible sectors: {0}")]
    SectorViolation(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
}

/// A two-ray integration contour for `Ai_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourSpec {
    pub n: u32,
    /// Direction of the incoming ray (radians, near π).
    pub angle_in: f64,
    /// Direction of the outgoing ray (radians, near 0).
    pub angle_out: f64,
    /// Truncation radius per ray.
    pub radius: f64,
    pub nodes_per_ray: usize,
}

impl ContourSpec {
    /// Decay-optimal symmetric contour with `x`-adaptive truncation radius.
    pub fn standard(n: u32, x: f64) -> Self {
        let half = PI / (2.0 * (2.0 * n as f64 + 1.0));
        ContourSpec {
            n,
            angle_in: PI - half,
            angle_out: half,
            radius: 6.0 + 2.0 * x.abs().powf(1.0 / (2.0 * n as f64)),
            nodes_per_ray: 200,
        }
    }

    pub fn validate(&self) -> Result<(), AiryError> {
        let nn = 2.0 * self.n as f64 + 1.0;
        let lower_in = 2.0 * self.n as f64 * PI / nn;
        if !(self.angle_in > lower_in && self.angle_in < PI) {
            return Err(AiryError::SectorViolation(format!(
                "angle_in = {} not in ({lower_in}, π)",
                self.angle_in
            )));
        }
        if !(self.angle_out > 0.0 && self.angle_out < PI / nn) {
            return Err(AiryError::SectorViolation(format!(
                "angle_out = {} not in (0, {})",
                self.angle_out,
                PI / nn
            )));
        }
        if !(self.radius.is_finite() && self.radius > 0.0) || self.nodes_per_ray == 0 {
            return Err(AiryError::SectorViolation(
                "radius and node count must be positive and finite".to_string(),
            ));
        }
        Ok(())
    }
}

/// `ψ_n(λ; t) = λ^{2n+1}/(2n+1) + λ t`.
pub fn phase(n: u32, lambda: Complex64, t: f64) -> Complex64 {
    lambda.powu(2 * n + 1) / (2.0 * n as f64 + 1.0) + lambda * t
}

/// Value plus diagnostics of one contour quadrature.
#[derive(Clone, Copy, Debug)]
pub struct ContourEval {
    pub value: f64,
    /// Residual imaginary part; the integral is real in exact arithmetic.
    pub imag_residual: f64,
    /// Bound on the contribution of the discarded ray tails.
    pub tail_bound: f64,
}

/// Exponent rate of the leading right-tail envelope: `|Ai_n(s)|` is bounded
/// by `exp(-c_n s^{1+1/(2n)})` (times a mild algebraic prefactor) with
/// `c_n = (2n/(2n+1)) sin(π/(2n))`. For even `n` the decay is oscillatory;
/// the envelope still bounds the modulus.
pub fn envelope_rate(n: u32) -> f64 {
    let nf = n as f64;
    (2.0 * nf / (2.0 * nf + 1.0)) * (PI / (2.0 * nf)).sin()
}

/// Right-tail envelope `exp(-c_n s^{1+1/(2n)})`, clamped to 1 for `s <= 0`.
pub fn decay_envelope(n: u32, s: f64) -> f64 {
    if s <= 0.0 {
        return 1.0;
    }
    (-envelope_rate(n) * s.powf(1.0 + 1.0 / (2.0 * n as f64))).exp()
}

/// Largest positive argument before the value drowns in quadrature
/// round-off; beyond it evaluation refuses rather than returning noise.
fn working_range_max(n: u32) -> f64 {
    (36.0 / envelope_rate(n)).powf(1.0 / (1.0 + 1.0 / (2.0 * n as f64)))
}

/// Core quadrature: `(1/2π) ∫_Γ (iλ)^m e^{iψ_n(λ;x)} dλ` over the two-ray
/// contour, derivative order `m`. With `guard` set, arguments so far right
/// that the value drops below the quadrature's round-off floor are refused;
/// callers that only need absolute accuracy (kernel assembly) skip it.
fn contour_integral(
    spec: &ContourSpec,
    x: f64,
    m: u32,
    guard: bool,
) -> Result<ContourEval, AiryError> {
    spec.validate()?;
    let n = spec.n;
    if guard && x > working_range_max(n) {
        return Err(AiryError::NonConvergence(format!(
            "argument {x} beyond the working range for n = {n} (max {:.2})",
            working_range_max(n)
        )));
    }
    let rule = gauss_legendre(spec.nodes_per_ray);
    let mut total = Complex64::new(0.0, 0.0);
    let mut tail_bound = 0.0_f64;
    for (theta, orient) in [(spec.angle_out, 1.0), (spec.angle_in, -1.0)] {
        let dir = Complex64::from_polar(1.0, theta);
        let mut ray = Complex64::new(0.0, 0.0);
        for (r, w) in rule.mapped(0.0, spec.radius) {
            let lam = dir * r;
            let integrand = (Complex64::i() * phase(n, lam, x)).exp()
                * (Complex64::i() * lam).powu(m);
            ray += integrand * w;
        }
        total += ray * dir * orient;

        // decay rate of Im ψ along the ray at the endpoint
        let endpoint = dir * spec.radius;
        let slope = spec.radius.powi(2 * n as i32) * ((2 * n + 1) as f64 * theta).sin()
            + x * theta.sin();
        let magnitude =
            (-(phase(n, endpoint, x).im)).exp() * spec.radius.powi(m as i32);
        if slope <= 0.0 {
            return Err(AiryError::NonConvergence(format!(
                "no decay at the truncation radius {} on the ray at angle {theta}",
                spec.radius
            )));
        }
        tail_bound += magnitude / slope / (2.0 * PI);
    }
    total /= 2.0 * PI;

    if tail_bound > 1e-10 {
        return Err(AiryError::NonConvergence(format!(
            "ray-tail estimate {tail_bound:.3e} exceeds tolerance; increase the radius"
        )));
    }
    let imag = total.im.abs();
    if imag > 1e-9 * total.re.abs().max(1.0) {
        return Err(AiryError::NonConvergence(format!(
            "imaginary residual {imag:.3e} exceeds the reality tolerance"
        )));
    }
    Ok(ContourEval {
        value: total.re,
        imag_residual: imag,
        tail_bound,
    })
}

/// `Ai_n(x)` with the standard contour.
pub fn ai_n(n: u32, x: f64) -> Result<f64, AiryError> {
    Ok(contour_integral(&ContourSpec::standard(n, x), x, 0, true)?.value)
}

/// `Ai_n(x)` without the working-range refusal: far to the right the result
/// underflows to quadrature noise of order 1e-16, which is acceptable
/// wherever only absolute accuracy matters.
pub(crate) fn ai_n_absolute(n: u32, x: f64) -> Result<f64, AiryError> {
    Ok(contour_integral(&ContourSpec::standard(n, x), x, 0, false)?.value)
}

/// `Ai_n(x)` with an explicit contour, returning diagnostics.
pub fn ai_n_with(spec: &ContourSpec, x: f64) -> Result<ContourEval, AiryError> {
    contour_integral(spec, x, 0, true)
}

/// `m`-th derivative of `Ai_n` at `x`: differentiation under the integral
/// inserts a factor `(iλ)^m`.
pub fn ai_n_deriv(n: u32, x: f64, m: u32) -> Result<f64, AiryError> {
    Ok(contour_integral(&ContourSpec::standard(n, x), x, m, true)?.value)
}

/// Derivative with an explicit contour.
pub fn ai_n_deriv_with(spec: &ContourSpec, x: f64, m: u32) -> Result<ContourEval, AiryError> {
    contour_integral(spec, x, m, true)
}

/// Batched evaluation of `Ai_n(s_i + z_l)` on an outer grid, row-major over
/// `(i, l)`.
///
/// The phase factorizes, `e^{iψ(λ; s+z)} = e^{iλ^{2n+1}/(2n+1)} e^{iλs} e^{iλz}`,
/// so one pair of plane-wave tables replaces a full contour quadrature per
/// grid entry. Shared-contour results carry only absolute accuracy on the
/// far right, which is all kernel assembly needs.
pub(crate) fn ai_n_outer_grid(n: u32, s: &[f64], z: &[f64]) -> Result<Vec<f64>, AiryError> {
    let min_arg = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let zmax = z.iter().cloned().fold(0.0_f64, f64::max);
    let max_arg = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + zmax;
    let max_abs = min_arg.abs().max(max_arg.abs());

    let mut spec = ContourSpec::standard(n, max_abs);
    spec.nodes_per_ray = spec.nodes_per_ray.max((8.0 * max_abs).ceil() as usize);
    spec.validate()?;

    // The split factors e^{iλs} may overflow on their own even when the
    // combined integrand is tame; cap the reachable exponent.
    let grow = spec.radius * (-min_arg).max(0.0) * spec.angle_out.sin();
    if grow > 600.0 {
        return Err(AiryError::NonConvergence(format!(
            "grid arguments reach too far left for the shared contour (exponent {grow:.0})"
        )));
    }

    let rule = gauss_legendre(spec.nodes_per_ray);
    let mut lambdas = Vec::with_capacity(2 * spec.nodes_per_ray);
    let mut coeffs = Vec::with_capacity(2 * spec.nodes_per_ray);
    for (theta, orient) in [(spec.angle_out, 1.0), (spec.angle_in, -1.0)] {
        let dir = Complex64::from_polar(1.0, theta);
        for (r, w) in rule.mapped(0.0, spec.radius) {
            let lam = dir * r;
            let head = (Complex64::i() * lam.powu(2 * n + 1) / (2.0 * n as f64 + 1.0)).exp();
            lambdas.push(lam);
            coeffs.push(head * dir * (w * orient / (2.0 * PI)));
        }
    }

    let waves = |points: &[f64]| -> Vec<Complex64> {
        let mut out = Vec::with_capacity(points.len() * lambdas.len());
        for &p in points {
            for &lam in &lambdas {
                out.push((Complex64::i() * lam * p).exp());
            }
        }
        out
    };
    let es = waves(s);
    let ez = waves(z);

    let jn = lambdas.len();
    let mut values = vec![0.0_f64; s.len() * z.len()];
    for i in 0..s.len() {
        let row_s = &es[i * jn..(i + 1) * jn];
        for l in 0..z.len() {
            let row_z = &ez[l * jn..(l + 1) * jn];
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..jn {
                acc += coeffs[j] * row_s[j] * row_z[j];
            }
            values[i * z.len() + l] = acc.re;
        }
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn phase_values() {
        assert_eq!(phase(1, Complex64::new(0.0, 0.0), 5.0), Complex64::new(0.0, 0.0));
        assert_abs_diff_eq!(
            phase(1, Complex64::new(1.0, 0.0), 0.0).re,
            1.0 / 3.0,
            epsilon = 1e-15
        );
        // n = 2, λ = i, t = 2: i⁵/5 + 2i = i/5 + 2i
        let p = phase(2, Complex64::i(), 2.0);
        assert_abs_diff_eq!(p.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.im, 0.2 + 2.0, epsilon = 1e-15);
    }

    #[test]
    fn classical_values_at_zero() {
        // Ai(0) = 3^{-2/3}/Γ(2/3), Ai'(0) = -3^{-1/3}/Γ(1/3)
        assert_abs_diff_eq!(
            ai_n(1, 0.0).unwrap(),
            0.3550280538878172,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            ai_n_deriv(1, 0.0, 1).unwrap(),
            -0.2588194037928068,
            epsilon = 1e-13
        );
    }

    #[test]
    fn zeroth_derivative_is_the_function() {
        for x in [-3.0, 0.5, 2.0] {
            assert_eq!(ai_n_deriv(2, x, 0).unwrap(), ai_n(2, x).unwrap());
        }
    }

    #[test]
    fn classical_airy_ode() {
        // Ai'' = x Ai
        for x in [-5.0, -1.0, 0.0, 1.0, 3.0] {
            let lhs = ai_n_deriv(1, x, 2).unwrap();
            let rhs = x * ai_n(1, x).unwrap();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-11);
        }
    }

    #[test]
    fn higher_order_ode() {
        // D^{2n} Ai_n = (-1)^{n+1} x Ai_n
        for x in [-2.0, 0.0, 1.5] {
            let lhs = ai_n_deriv(2, x, 4).unwrap();
            let rhs = -x * ai_n(2, x).unwrap();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
        }
    }

    #[test]
    fn sector_violation_detected() {
        let mut spec = ContourSpec::standard(1, 0.0);
        spec.angle_out = 1.2; // outside (0, π/3)
        assert!(matches!(
            ai_n_with(&spec, 0.0),
            Err(AiryError::SectorViolation(_))
        ));
    }

    #[test]
    fn insufficient_radius_is_reported() {
        let mut spec = ContourSpec::standard(1, -9.0);
        spec.radius = 1.0; // too small: x-term still dominates at the endpoint
        assert!(matches!(
            ai_n_with(&spec, -9.0),
            Err(AiryError::NonConvergence(_))
        ));
    }

    #[test]
    fn beyond_working_range_refuses() {
        assert!(matches!(
            ai_n(1, 25.0),
            Err(AiryError::NonConvergence(_))
        ));
    }

    #[test]
    fn envelope_bounds_the_tail() {
        for x in [2.0f64, 4.0, 6.0, 8.0] {
            let v = ai_n(1, x).unwrap().abs();
            assert!(v <= decay_envelope(1, x), "x = {x}: {v}");
        }
        for x in [2.0f64, 6.0, 10.0] {
            let v = ai_n(2, x).unwrap().abs();
            assert!(v <= decay_envelope(2, x), "x = {x}: {v}");
        }
    }
}
