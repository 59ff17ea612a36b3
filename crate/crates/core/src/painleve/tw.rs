//! The Tracy–Widom type integral and the two-route verification.

use super::solve::{integrate, seed_from_asymptotics, IntegrateOptions, SeedOptions, SolutionGrid};
use super::{compile_rhs, PainleveError};
use crate::airy::decay_envelope;
use crate::fredholm::{gen_fn, IntervalSystem};
use crate::hierarchy::hierarchy_member;
use crate::quad::{gauss_legendre, simpson_uniform};

/// Result of the integral `log F = -∫_0^∞ t <u(t), u(t)> dt`.
#[derive(Clone, Copy, Debug)]
pub struct TwIntegral {
    pub log_f: f64,
    /// Imaginary part of the quadrature; vanishes for exact reality
    /// patterns.
    pub imag_residual: f64,
    /// Bound on the discarded tail beyond `tail_from`, from the seed
    /// envelope.
    pub tail_bound: f64,
    pub tail_from: f64,
}

/// Evaluates the integral over `[0, tail_from]` by composite Simpson on the
/// dense grid and bounds the remaining tail analytically using the
/// asymptotic envelope `|u_j| ≲ √|α_j - α_{j+1}| e^{-c_n (t+x_j)^γ}`.
pub fn tw_integral(grid: &SolutionGrid, tail_from: f64) -> Result<TwIntegral, PainleveError> {
    let i_hi = grid.index_of(0.0);
    let i_lo = grid.index_of(tail_from);
    let (lo, hi) = match (i_lo, i_hi) {
        (Some(a), Some(b)) if a <= b => (a, b),
        _ => {
            return Err(PainleveError::GridCoverage {
                needed_lo: 0.0,
                needed_hi: tail_from,
            })
        }
    };
    // grid is descending: index lo == tail_from, hi == 0
    let h = grid.ts[0] - grid.ts[1];
    let mut re_vals = Vec::with_capacity(hi - lo + 1);
    let mut im_vals = Vec::with_capacity(hi - lo + 1);
    for idx in (lo..=hi).rev() {
        let t = grid.ts[idx];
        let w = grid.sum_u_squared(idx) * t;
        re_vals.push(w.re);
        im_vals.push(w.im);
    }
    let integral_re = simpson_uniform(&re_vals, h);
    let integral_im = simpson_uniform(&im_vals, h);

    // Tail: Σ_j |gap_j| ∫_{T}^{T+12} t e^{-2 c_n (t + x_j)^γ} dt.
    let rule = gauss_legendre(64);
    let mut tail = 0.0;
    for (j, &gap) in grid.gaps.iter().enumerate() {
        let xj = grid.x[j];
        tail += gap.abs()
            * rule.integrate(tail_from, tail_from + 12.0, |t| {
                let e = decay_envelope(grid.n, t + xj);
                t * e * e
            });
    }
    if tail > 1e-6 {
        return Err(PainleveError::TailTooLarge {
            from: tail_from,
            bound: tail,
        });
    }

    Ok(TwIntegral {
        log_f: -integral_re,
        imag_residual: integral_im.abs(),
        tail_bound: tail,
    tail_from,
    })
}

/// Controls for [`verify_tw`].
#[derive(Clone, Debug)]
pub struct VerifyTwOptions {
    pub nystrom_nodes: usize,
    pub seed: SeedOptions,
    pub integrate: IntegrateOptions,
}

impl Default for VerifyTwOptions {
    fn default() -> Self {
        VerifyTwOptions {
            nystrom_nodes: crate::fredholm::DEFAULT_NODES,
            seed: SeedOptions::default(),
            integrate: IntegrateOptions::default(),
        }
    }
}

/// Side-by-side result of the determinant route and the ODE route.
#[derive(Clone, Debug)]
pub struct VerifyTwReport {
    pub n: u32,
    pub x: Vec<f64>,
    pub alpha: Vec<f64>,
    pub f_fredholm: f64,
    pub log_f_fredholm: f64,
    pub log_f_painleve: f64,
    pub abs_diff: f64,
    pub trust_window: (f64, f64),
    pub t_max: f64,
    pub tail_bound: f64,
    pub imag_residual: f64,
}

/// Runs both routes for `F_n(x, α)` and reports the discrepancy of the
/// logarithms. Also returns the solution grid for further diagnostics.
pub fn verify_tw(
    n: u32,
    x: &[f64],
    alpha: &[f64],
    opts: &VerifyTwOptions,
) -> Result<(VerifyTwReport, SolutionGrid), PainleveError> {
    let k = x.len();
    let system = IntervalSystem::new(x.to_vec(), alpha.to_vec(), 0.0)?;
    let det = gen_fn(&system, n, opts.nystrom_nodes)?;

    let member = hierarchy_member(n, k)?;
    let rhs = compile_rhs(&member)?;
    let seed = seed_from_asymptotics(n, k, x, alpha, &opts.seed)?;
    let mut integ_opts = opts.integrate.clone();
    integ_opts.t_min = integ_opts.t_min.min(0.0);
    let grid = integrate(&rhs, &seed, x, alpha, &integ_opts)?;
    let tw = tw_integral(&grid, grid.t_max)?;

    let report = VerifyTwReport {
        n,
        x: x.to_vec(),
        alpha: alpha.to_vec(),
        f_fredholm: det.f,
        log_f_fredholm: det.log_f,
        log_f_painleve: tw.log_f,
        abs_diff: (det.log_f - tw.log_f).abs(),
        trust_window: (grid.trust_from, grid.t_max),
        t_max: grid.t_max,
        tail_bound: tw.tail_bound,
        imag_residual: tw.imag_residual,
    };
    Ok((report, grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn zero_solution_gives_unit_f() {
        // u ≡ 0 means log F = 0
        let ts: Vec<f64> = (0..=800).rev().map(|i| i as f64 * 0.01).collect();
        let states = vec![vec![Complex64::new(0.0, 0.0); 2]; ts.len()];
        let grid = SolutionGrid {
            n: 1,
            k: 1,
            x: vec![0.0],
            alpha: vec![0.0],
            gaps: vec![0.0],
            t_max: 8.0,
            trust_from: 0.0,
            rtol: 1e-10,
            atol: 1e-12,
            ts,
            states,
        };
        let tw = tw_integral(&grid, 8.0).unwrap();
        assert_eq!(tw.log_f, 0.0);
        assert!(tw.tail_bound < 1e-12);
    }

    #[test]
    fn missing_coverage_is_reported() {
        let ts: Vec<f64> = (100..=800).rev().map(|i| i as f64 * 0.01).collect();
        let states = vec![vec![Complex64::new(0.0, 0.0); 2]; ts.len()];
        let grid = SolutionGrid {
            n: 1,
            k: 1,
            x: vec![0.0],
            alpha: vec![0.0],
            gaps: vec![0.0],
            t_max: 8.0,
            trust_from: 1.0,
            rtol: 1e-10,
            atol: 1e-12,
            ts,
            states,
        };
        assert!(matches!(
            tw_integral(&grid, 8.0),
            Err(PainleveError::GridCoverage { .. })
        ));
    }
}
