//! Gauss–Legendre quadrature rules with a process-wide cache.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `n`-point rule by Newton iteration on the Legendre
    /// polynomial, seeded with the Chebyshev-angle estimate of the roots.
    fn build(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_deriv(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            // polish once more and refresh the derivative
            let (p, d) = legendre_with_deriv(n, x);
            x -= p / d;
            let dp = legendre_with_deriv(n, x).1;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Iterates `(x, w)` affinely mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    if n == 1 {
        return (x, 1.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Returns the cached `n`-point rule.
pub fn gauss_legendre(n: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(GaussLegendre::build(n)))
        .clone()
}

/// Composite Simpson rule on a uniformly spaced grid of values; an odd
/// interval count is finished with a Simpson 3/8 segment.
pub fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 2, "need at least two samples");
    if n == 2 {
        return 0.5 * h * (values[0] + values[1]);
    }
    let mut total = 0.0;
    let mut end = n - 1;
    if end % 2 == 1 {
        // 3/8 rule on the last three intervals (guaranteed available for n >= 4)
        if n >= 4 {
            let a = n - 4;
            total += 3.0 * h / 8.0
                * (values[a] + 3.0 * values[a + 1] + 3.0 * values[a + 2] + values[a + 3]);
            end = a;
        } else {
            // exactly three samples and one leftover interval: trapezoid
            total += 0.5 * h * (values[n - 2] + values[n - 1]);
            end = n - 2;
        }
    }
    let mut i = 0;
    while i + 2 <= end {
        total += h / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
        i += 2;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn low_order_rules_match_known_nodes() {
        let r = gauss_legendre(2);
        assert_abs_diff_eq!(r.nodes[1], 1.0 / 3.0f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[0], 1.0, epsilon = 1e-15);

        let r3 = gauss_legendre(3);
        assert_abs_diff_eq!(r3.nodes[2], (3.0f64 / 5.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r3.weights[1], 8.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r3.weights[0], 5.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn polynomial_exactness() {
        // an n-point rule integrates degree 2n-1 exactly
        let r = gauss_legendre(8);
        let val = r.integrate(-1.0, 1.0, |x| x.powi(14));
        assert_abs_diff_eq!(val, 2.0 / 15.0, epsilon = 1e-14);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [5usize, 64, 200, 201] {
            let r = gauss_legendre(n);
            let s: f64 = r.weights.iter().sum();
            assert_abs_diff_eq!(s, 2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn oscillatory_integral_converges() {
        let r = gauss_legendre(200);
        let val = r.integrate(0.0, 10.0, |x| (5.0 * x).cos());
        assert_abs_diff_eq!(val, (50.0f64).sin() / 5.0, epsilon = 1e-13);
    }

    #[test]
    fn simpson_handles_even_and_odd_counts() {
        for count in [11usize, 12, 101, 102] {
            let h = 1.0 / (count as f64 - 1.0);
            let vals: Vec<f64> = (0..count).map(|i| (i as f64 * h).exp()).collect();
            let got = simpson_uniform(&vals, h);
            assert_abs_diff_eq!(got, std::f64::consts::E - 1.0, epsilon = 1e-6);
        }
    }
}
