//! The kernels `K_n` and the generating function as a Fredholm determinant.
//!
//! `K_n(x, y) = ∫_0^∞ Ai_n(x+z) Ai_n(y+z) dz` defines a determinantal point
//! process; the generating function of its occupancy numbers on the interval
//! system `A_j = (x_j, x_{j-1})`, `x_0 = +∞`, with weights `α_j` is
//!
//! ```text
//! F_n(x + t, α) = det(I - Σ_j α_j K_n|_{A_j + t})
//! ```
//!
//! approximated here by a Nyström discretization: Gauss–Legendre nodes on
//! each bounded interval, an exponential substitution
//! `s = x_1 + t - log(1 - ξ)` on the unbounded one, and the symmetrized
//! matrix `δ_pq - √(α_p w_p) K_n(s_p, s_q) √(α_q w_q)`, whose determinant is
//! unchanged by the symmetrization. Kernel values for all node pairs come
//! from one shared z-grid, which is what makes assembly the dominant but
//! tractable cost, and makes the discrete kernel exactly symmetric.
//!
//! The same machinery yields the second logarithmic t-derivative by central
//! differences and joint particle-position probabilities by α-differencing
//! of `F_n` at `α = 1`.

use crate::airy::{
    ai_n_absolute, ai_n_outer_grid, decay_envelope, envelope_rate, phase, AiryError, ContourSpec,
};
use crate::quad::gauss_legendre;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default Gauss–Legendre nodes per interval.
pub const DEFAULT_NODES: usize = 64;

/// Errors from kernel evaluation and determinant computation.
#[derive(Debug, thiserror::Error)]
pub enum FredholmError {
    #[error("invalid interval system: {0}")]
    InvalidSystem(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("determinant evaluation failed at stencil offset {offset}: {source}")]
    StencilFailure {
        offset: f64,
        source: Box<FredholmError>,
    },

    #[error("invalid particle orders: {0}")]
    InvalidOrders(String),

    #[error(transparent)]
    Airy(#[from] AiryError),
}

/// Thresholds `x_1 > ... > x_k`, weights `α_1..α_k` (with `α_{k+1} = 0`
/// implied) and a common shift `t`. Weights up to and including 1 are
/// accepted; 1 is the gap-probability case.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSystem {
    thresholds: Vec<f64>,
    weights: Vec<f64>,
    shift: f64,
}

impl IntervalSystem {
    pub fn new(
        thresholds: Vec<f64>,
        weights: Vec<f64>,
        shift: f64,
    ) -> Result<Self, FredholmError> {
        if thresholds.is_empty() || thresholds.len() != weights.len() {
            return Err(FredholmError::InvalidSystem(format!(
                "need matching nonempty thresholds/weights, got {}/{}",
                thresholds.len(),
                weights.len()
            )));
        }
        if !thresholds.iter().all(|x| x.is_finite()) || !shift.is_finite() {
            return Err(FredholmError::InvalidSystem(
                "thresholds and shift must be finite".to_string(),
            ));
        }
        if thresholds.windows(2).any(|w| w[0] <= w[1]) {
            return Err(FredholmError::InvalidSystem(format!(
                "thresholds must be strictly decreasing: {thresholds:?}"
            )));
        }
        if weights.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(FredholmError::InvalidSystem(format!(
                "weights must lie in [0, 1]: {weights:?}"
            )));
        }
        Ok(IntervalSystem {
            thresholds,
            weights,
            shift,
        })
    }

    pub fn k(&self) -> usize {
        self.thresholds.len()
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn with_shift(&self, shift: f64) -> Self {
        IntervalSystem {
            shift,
            ..self.clone()
        }
    }

    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self, FredholmError> {
        Self::new(self.thresholds.clone(), weights, self.shift)
    }
}

/// Shared z-grid for the kernel integral, truncated where the integrand's
/// envelope is negligible for the most negative argument in play.
fn z_rule(min_arg: f64, refine: u32) -> (Vec<f64>, Vec<f64>) {
    let zmax = 16.0 + (-min_arg).max(0.0);
    let n = ((10.0 * zmax).ceil() as usize).max(160) * (1 << refine) as usize;
    let rule = gauss_legendre(n);
    rule.mapped(0.0, zmax).unzip()
}

/// `K_n(x, y)` by quadrature of the z-integral. Symmetric in `(x, y)` by
/// construction (the node set depends only on `min(x, y)`).
pub fn kernel_eval(n: u32, x: f64, y: f64) -> Result<f64, FredholmError> {
    kernel_eval_refined(n, x, y, 0)
}

/// Same with `refine` doublings of the z-grid, for self-checks.
pub fn kernel_eval_refined(n: u32, x: f64, y: f64, refine: u32) -> Result<f64, FredholmError> {
    let (z, w) = z_rule(x.min(y), refine);
    let mut total = 0.0;
    for (&zi, &wi) in z.iter().zip(w.iter()) {
        // product first: multiplication commutes bitwise, so (x, y) and
        // (y, x) produce identical floats
        total += (ai_n_absolute(n, x + zi)? * ai_n_absolute(n, y + zi)?) * wi;
    }
    let zmax = z.last().copied().unwrap_or(0.0);
    let tail = decay_envelope(n, x + zmax) * decay_envelope(n, y + zmax)
        / (2.0 * envelope_rate(n));
    if tail > 1e-12 {
        return Err(FredholmError::NonConvergence(format!(
            "kernel tail estimate {tail:.3e} beyond truncation {zmax}"
        )));
    }
    Ok(total)
}

/// `K_n(x, y)` through the double-contour representation
/// `(i/(2π)²) ∫∫ e^{i(ψ_n(λ;x) - ψ_n(μ;y))}/(λ - μ) dλ dμ`, the upper
/// contour lifted to `+iδ` and the lower to `-iδ` so the denominator stays
/// away from zero. Used as an independent cross-check of [`kernel_eval`].
pub fn kernel_eval_doublecontour(n: u32, x: f64, y: f64) -> Result<f64, FredholmError> {
    let spec = ContourSpec {
        nodes_per_ray: 160,
        ..ContourSpec::standard(n, x.abs().max(y.abs()))
    };
    spec.validate()?;
    let delta = 0.5;
    let rule = gauss_legendre(spec.nodes_per_ray);

    // Upper contour samples: (λ, weight·direction·orientation)
    let mut upper: Vec<(Complex64, Complex64)> = Vec::with_capacity(2 * spec.nodes_per_ray);
    for (theta, orient) in [(spec.angle_out, 1.0), (spec.angle_in, -1.0)] {
        let dir = Complex64::from_polar(1.0, theta);
        for (r, w) in rule.mapped(0.0, spec.radius) {
            upper.push((Complex64::new(0.0, delta) + dir * r, dir * w * orient));
        }
    }
    // Lower contour: mirror image, oriented from ∞e^{-ia} to ∞e^{-ib}.
    let mut lower: Vec<(Complex64, Complex64)> = Vec::with_capacity(2 * spec.nodes_per_ray);
    for (theta, orient) in [(-spec.angle_out, 1.0), (-spec.angle_in, -1.0)] {
        let dir = Complex64::from_polar(1.0, theta);
        for (r, w) in rule.mapped(0.0, spec.radius) {
            lower.push((Complex64::new(0.0, -delta) + dir * r, dir * w * orient));
        }
    }

    let a: Vec<(Complex64, Complex64)> = upper
        .iter()
        .map(|&(lam, w)| (lam, w * (Complex64::i() * phase(n, lam, x)).exp()))
        .collect();
    let b: Vec<(Complex64, Complex64)> = lower
        .iter()
        .map(|&(mu, w)| (mu, w * (-Complex64::i() * phase(n, mu, y)).exp()))
        .collect();

    let mut total = Complex64::new(0.0, 0.0);
    for &(lam, fa) in &a {
        let mut row = Complex64::new(0.0, 0.0);
        for &(mu, fb) in &b {
            row += fb / (lam - mu);
        }
        total += fa * row;
    }
    total *= Complex64::i() / ((2.0 * PI) * (2.0 * PI));

    if total.im.abs() > 1e-9 {
        return Err(FredholmError::NonConvergence(format!(
            "double-contour imaginary residual {:.3e}",
            total.im.abs()
        )));
    }
    Ok(total.re)
}

/// Discretization of `I - Σ_j α_j K_n|_{A_j + t}`.
#[derive(Clone, Debug)]
pub struct NystromSystem {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha_at_node: Vec<f64>,
    /// Interval index (1-based, matching the thresholds) of each node.
    pub interval_at_node: Vec<usize>,
    /// `δ_pq - √(α_p w_p) K(s_p, s_q) √(α_q w_q)`.
    pub matrix: DMatrix<f64>,
    /// The subtracted part `√(α_p w_p) K √(α_q w_q)`, kept for spectral
    /// diagnostics.
    pub weighted_kernel: DMatrix<f64>,
    /// Raw kernel values `K(s_p, s_q)`; weight sweeps reuse them.
    pub kernel: DMatrix<f64>,
    pub n: u32,
    /// Largest quadrature node actually reached on the unbounded interval.
    pub truncation: f64,
}

/// How the unbounded interval `A_1 = (x_1 + t, ∞)` is discretized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UnboundedRule {
    /// `s = x_1 + t - log(1 - ξ)`, Gauss–Legendre in `ξ`: node count stays
    /// fixed across parameter sweeps while the reach adapts. The default.
    ExpSubstitution,
    /// Plain Gauss–Legendre on `[x_1 + t, x_1 + t + pad]`; exists as a
    /// cross-check of the substitution.
    HardTruncation { pad: f64 },
}

/// Builds the Nyström system. `nodes_per_interval` Gauss–Legendre nodes are
/// mapped affinely onto each bounded `A_j + t`; the unbounded interval uses
/// the exponential substitution.
pub fn build_nystrom(
    system: &IntervalSystem,
    n: u32,
    nodes_per_interval: usize,
) -> Result<NystromSystem, FredholmError> {
    build_nystrom_with(system, n, nodes_per_interval, UnboundedRule::ExpSubstitution)
}

/// [`build_nystrom`] with an explicit rule for the unbounded interval.
pub fn build_nystrom_with(
    system: &IntervalSystem,
    n: u32,
    nodes_per_interval: usize,
    unbounded: UnboundedRule,
) -> Result<NystromSystem, FredholmError> {
    if nodes_per_interval < 2 {
        return Err(FredholmError::InvalidSystem(
            "need at least two nodes per interval".to_string(),
        ));
    }
    let k = system.k();
    let t = system.shift();
    let rule = gauss_legendre(nodes_per_interval);

    let mut nodes = Vec::with_capacity(k * nodes_per_interval);
    let mut weights = Vec::with_capacity(k * nodes_per_interval);
    let mut alphas = Vec::with_capacity(k * nodes_per_interval);
    let mut intervals = Vec::with_capacity(k * nodes_per_interval);

    // Bounded intervals A_j = (x_j, x_{j-1}), j = k, ..., 2, ascending in s.
    for j in (1..k).rev() {
        let lo = system.thresholds()[j] + t;
        let hi = system.thresholds()[j - 1] + t;
        for (s, w) in rule.mapped(lo, hi) {
            nodes.push(s);
            weights.push(w);
            alphas.push(system.weights()[j]);
            intervals.push(j + 1);
        }
    }
    // Unbounded interval A_1 = (x_1, ∞).
    let x1t = system.thresholds()[0] + t;
    match unbounded {
        UnboundedRule::ExpSubstitution => {
            for (xi, w) in rule.mapped(0.0, 1.0) {
                nodes.push(x1t - (1.0 - xi).ln());
                weights.push(w / (1.0 - xi));
                alphas.push(system.weights()[0]);
                intervals.push(1);
            }
        }
        UnboundedRule::HardTruncation { pad } => {
            if pad.is_nan() || pad <= 0.0 {
                return Err(FredholmError::InvalidSystem(
                    "truncation pad must be positive".to_string(),
                ));
            }
            for (s, w) in rule.mapped(x1t, x1t + pad) {
                nodes.push(s);
                weights.push(w);
                alphas.push(system.weights()[0]);
                intervals.push(1);
            }
        }
    }

    let truncation = nodes.last().copied().unwrap_or(x1t);
    let m = nodes.len();

    // Kernel on all node pairs from one shared z-grid: V diag(w_z) Vᵀ.
    let (z, wz) = z_rule(nodes.iter().cloned().fold(f64::INFINITY, f64::min), 0);
    let values = ai_n_outer_grid(n, &nodes, &z)?;
    let mut v = DMatrix::<f64>::zeros(m, z.len());
    for i in 0..m {
        for (l, &wl) in wz.iter().enumerate() {
            v[(i, l)] = values[i * z.len() + l] * wl.sqrt();
        }
    }
    let kernel = &v * v.transpose();

    let mut sys = NystromSystem {
        nodes,
        weights,
        alpha_at_node: alphas,
        interval_at_node: intervals,
        matrix: DMatrix::zeros(0, 0),
        weighted_kernel: DMatrix::zeros(0, 0),
        kernel,
        n,
        truncation,
    };
    sys.reweight(system.weights())?;
    Ok(sys)
}

/// Determinant output.
#[derive(Clone, Copy, Debug)]
pub struct GenFn {
    pub f: f64,
    pub log_f: f64,
    pub nodes: usize,
    pub truncation: f64,
}

impl NystromSystem {
    /// Replaces the interval weights without rebuilding the kernel; node
    /// positions depend only on the thresholds and the shift.
    pub fn reweight(&mut self, alpha_per_interval: &[f64]) -> Result<(), FredholmError> {
        if alpha_per_interval.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(FredholmError::InvalidSystem(format!(
                "weights must lie in [0, 1]: {alpha_per_interval:?}"
            )));
        }
        let m = self.nodes.len();
        for i in 0..m {
            let j = self.interval_at_node[i] - 1;
            let a = *alpha_per_interval.get(j).ok_or_else(|| {
                FredholmError::InvalidSystem("weight vector shorter than k".to_string())
            })?;
            self.alpha_at_node[i] = a;
        }
        let scale: Vec<f64> = self
            .alpha_at_node
            .iter()
            .zip(self.weights.iter())
            .map(|(&a, &w)| (a * w).sqrt())
            .collect();
        let mut weighted = self.kernel.clone();
        for i in 0..m {
            for j in 0..m {
                weighted[(i, j)] *= scale[i] * scale[j];
            }
        }
        self.matrix = DMatrix::<f64>::identity(m, m) - &weighted;
        self.weighted_kernel = weighted;
        Ok(())
    }

    /// Determinant by pivoted LU, with the logarithm accumulated from the
    /// diagonal to avoid underflow.
    pub fn determinant(&self) -> Result<GenFn, FredholmError> {
        let lu = self.matrix.clone().lu();
        let mut log_abs = 0.0_f64;
        let mut sign = lu.p().determinant::<f64>();
        for d in lu.u().diagonal().iter() {
            if *d == 0.0 || !d.is_finite() {
                return Err(FredholmError::NumericalBreakdown(
                    "singular or non-finite LU factor".to_string(),
                ));
            }
            log_abs += d.abs().ln();
            if *d < 0.0 {
                sign = -sign;
            }
        }
        if sign <= 0.0 {
            return Err(FredholmError::NumericalBreakdown(
                "determinant is not positive; discretization too coarse".to_string(),
            ));
        }
        Ok(GenFn {
            f: log_abs.exp(),
            log_f: log_abs,
            nodes: self.nodes.len(),
            truncation: self.truncation,
        })
    }

    /// Extreme eigenvalues of the symmetrized weighted kernel; for a
    /// contraction they lie in `[0, 1]`.
    pub fn operator_eigen_bounds(&self) -> (f64, f64) {
        let eig = self.weighted_kernel.clone().symmetric_eigenvalues();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &e in eig.iter() {
            lo = lo.min(e);
            hi = hi.max(e);
        }
        (lo, hi)
    }
}

/// `F_n(x + t, α)` as the Nyström determinant.
pub fn gen_fn(system: &IntervalSystem, n: u32, nodes: usize) -> Result<GenFn, FredholmError> {
    build_nystrom(system, n, nodes)?.determinant()
}

/// Determinant plus a node-doubling error estimate.
pub fn gen_fn_with_estimate(
    system: &IntervalSystem,
    n: u32,
    nodes: usize,
) -> Result<(GenFn, f64), FredholmError> {
    let coarse = gen_fn(system, n, nodes)?;
    let fine = gen_fn(system, n, 2 * nodes)?;
    Ok((fine, (fine.f - coarse.f).abs()))
}

/// Second derivative output.
#[derive(Clone, Copy, Debug)]
pub struct D2LogF {
    pub value: f64,
    /// Richardson estimate from comparing the `h` and `2h` stencils.
    pub error_estimate: f64,
}

/// `d²/dt² log F_n(x + t, α)` by a five-point central stencil of width `h`
/// around the system's shift.
pub fn log_gen_fn_d2t(
    system: &IntervalSystem,
    n: u32,
    h: f64,
    nodes: usize,
) -> Result<D2LogF, FredholmError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(FredholmError::InvalidSystem("need h > 0".to_string()));
    }
    let t0 = system.shift();
    let eval = |offset: f64| -> Result<f64, FredholmError> {
        gen_fn(&system.with_shift(t0 + offset), n, nodes)
            .map(|g| g.log_f)
            .map_err(|e| FredholmError::StencilFailure {
                offset,
                source: Box::new(e),
            })
    };
    let f_0 = eval(0.0)?;
    let f_p1 = eval(h)?;
    let f_m1 = eval(-h)?;
    let f_p2 = eval(2.0 * h)?;
    let f_m2 = eval(-2.0 * h)?;
    let f_p4 = eval(4.0 * h)?;
    let f_m4 = eval(-4.0 * h)?;

    let stencil = |fm2: f64, fm1: f64, f0: f64, fp1: f64, fp2: f64, step: f64| {
        (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * step * step)
    };
    let v_h = stencil(f_m2, f_m1, f_0, f_p1, f_p2, h);
    let v_2h = stencil(f_m4, f_m2, f_0, f_p2, f_p4, 2.0 * h);
    Ok(D2LogF {
        value: v_h,
        error_estimate: (v_h - v_2h).abs() / 15.0,
    })
}

/// Joint probability output.
#[derive(Clone, Copy, Debug)]
pub struct JointProb {
    pub probability: f64,
    pub stencil_error: f64,
}

/// Backward-difference weights at the right boundary, second-order accurate;
/// index = number of steps back.
fn backward_weights(order: usize) -> &'static [f64] {
    match order {
        0 => &[1.0],
        1 => &[1.5, -2.0, 0.5],
        2 => &[2.0, -5.0, 4.0, -1.0],
        3 => &[2.5, -9.0, 12.0, -7.0, 1.5],
        4 => &[3.0, -14.0, 26.0, -24.0, 11.0, -2.0],
        _ => unreachable!("orders above 4 are rejected earlier"),
    }
}

/// `P(ζ_{m_1} < x_1, ..., ζ_{m_k} < x_k)` via the alternating sum of mixed
/// α-derivatives of `F_n` at `α = (1, ..., 1)`, with the derivatives
/// replaced by one-sided finite differences of step `dalpha` (the weights
/// live in `[0, 1]`, so the stencil reaches into the interior).
///
/// The admissible index set is `j_1 < m_1`, `j_1 + j_2 < m_2`, ...,
/// `Σ j_l < m_k`; each term carries `(-1)^{Σ j} / Π j_l!`.
pub fn joint_prob(
    system: &IntervalSystem,
    n: u32,
    orders: &[usize],
    dalpha: f64,
    nodes: usize,
) -> Result<JointProb, FredholmError> {
    let k = system.k();
    if orders.len() != k {
        return Err(FredholmError::InvalidOrders(format!(
            "need one order per interval: got {} orders for k = {k}",
            orders.len()
        )));
    }
    if orders.windows(2).any(|w| w[0] >= w[1]) || orders.contains(&0) {
        return Err(FredholmError::InvalidOrders(format!(
            "orders must be strictly increasing and positive: {orders:?}"
        )));
    }
    let max_total = orders[k - 1] - 1;
    if max_total > 4 {
        return Err(FredholmError::InvalidOrders(format!(
            "total derivative order {max_total} exceeds the supported 4"
        )));
    }
    if !(dalpha > 0.0 && dalpha <= 0.2) {
        return Err(FredholmError::InvalidOrders(format!(
            "dalpha = {dalpha} outside (0, 0.2]"
        )));
    }

    let coarse = joint_prob_once(system, n, orders, dalpha, nodes)?;
    let fine = joint_prob_once(system, n, orders, dalpha / 2.0, nodes)?;
    Ok(JointProb {
        probability: fine,
        stencil_error: (fine - coarse).abs() / 3.0,
    })
}

fn joint_prob_once(
    system: &IntervalSystem,
    n: u32,
    orders: &[usize],
    dalpha: f64,
    nodes: usize,
) -> Result<f64, FredholmError> {
    let k = system.k();

    // All admissible multi-indices (j_1, ..., j_k).
    let mut index_set: Vec<Vec<usize>> = vec![vec![]];
    for &m in orders {
        let mut next = Vec::new();
        for prefix in &index_set {
            let used: usize = prefix.iter().sum();
            for j in 0..m.saturating_sub(used) {
                let mut extended = prefix.clone();
                extended.push(j);
                next.push(extended);
            }
        }
        index_set = next;
    }

    // One kernel assembly serves the whole α-stencil grid.
    let mut nystrom = build_nystrom(system, n, nodes)?;

    // Evaluate F on the tensor stencil grid (lazily, cached by grid index).
    let mut cache: std::collections::HashMap<Vec<usize>, f64> = std::collections::HashMap::new();
    let mut f_at = |steps: &[usize]| -> Result<f64, FredholmError> {
        if let Some(&v) = cache.get(steps) {
            return Ok(v);
        }
        let weights: Vec<f64> = steps.iter().map(|&s| 1.0 - s as f64 * dalpha).collect();
        if weights.iter().any(|&a| a < 0.0) {
            return Err(FredholmError::InvalidOrders(format!(
                "stencil step {dalpha} reaches below α = 0"
            )));
        }
        nystrom.reweight(&weights)?;
        let val = nystrom.determinant()?.f;
        cache.insert(steps.to_vec(), val);
        Ok(val)
    };

    let mut probability = 0.0;
    for idx in &index_set {
        let total: usize = idx.iter().sum();
        let factorials: f64 = idx.iter().map(|&j| factorial(j)).product();
        let sign = if total.is_multiple_of(2) { 1.0 } else { -1.0 };

        // Mixed partial by tensored backward differences.
        let axis_weights: Vec<&[f64]> = idx.iter().map(|&j| backward_weights(j)).collect();
        let mut partial = 0.0;
        let mut steps = vec![0usize; k];
        partial += tensor_sum(&axis_weights, &mut steps, 0, &mut f_at)?;
        partial /= dalpha.powi(total as i32);

        probability += sign / factorials * partial;
    }
    Ok(probability)
}

fn tensor_sum(
    axis_weights: &[&[f64]],
    steps: &mut Vec<usize>,
    axis: usize,
    f_at: &mut impl FnMut(&[usize]) -> Result<f64, FredholmError>,
) -> Result<f64, FredholmError> {
    if axis == axis_weights.len() {
        return f_at(steps);
    }
    let mut total = 0.0;
    for (s, &w) in axis_weights[axis].iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        steps[axis] = s;
        total += w * tensor_sum(axis_weights, steps, axis + 1, f_at)?;
    }
    steps[axis] = 0;
    Ok(total)
}

fn factorial(j: usize) -> f64 {
    (1..=j).map(|v| v as f64).product()
}
