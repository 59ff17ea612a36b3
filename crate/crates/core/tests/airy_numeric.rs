//! Contour evaluation of `Ai_n` against an independent exact-series oracle,
//! contour-independence, reality, and tail behavior.

mod common;

use common::{ai_classical, aip_classical};
use hoairy_core::airy::{
    ai_n, ai_n_deriv, ai_n_deriv_with, ai_n_with, decay_envelope, ContourSpec,
};
use std::f64::consts::PI;

fn grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    let count = ((to - from) / step).round() as usize;
    (0..=count).map(|i| from + i as f64 * step).collect()
}

#[test]
fn oracle_reproduces_known_values_at_zero() {
    assert!((ai_classical(0.0) - 0.3550280538878172).abs() < 1e-15);
    assert!((aip_classical(0.0) + 0.2588194037928068).abs() < 1e-15);
}

#[test]
fn classical_reduction_matches_series_oracle() {
    // quadrature vs exact series on [-8, 4]
    let mut worst = 0.0_f64;
    for x in grid(-8.0, 4.0, 0.5) {
        let got = ai_n(1, x).unwrap();
        let want = ai_classical(x);
        worst = worst.max((got - want).abs());
    }
    assert!(worst <= 1e-10, "worst deviation {worst:.3e}");
}

#[test]
fn derivative_matches_series_oracle() {
    let mut worst = 0.0_f64;
    for x in grid(-8.0, 4.0, 0.5) {
        let got = ai_n_deriv(1, x, 1).unwrap();
        let want = aip_classical(x);
        worst = worst.max((got - want).abs());
    }
    assert!(worst <= 1e-10, "worst deviation {worst:.3e}");
}

#[test]
fn contour_independence() {
    // two admissible contours with different angles, radii and node counts
    for n in 1..=3u32 {
        let nn = 2.0 * n as f64 + 1.0;
        let alt = |x: f64| ContourSpec {
            n,
            angle_in: PI - 0.31 * PI / nn,
            angle_out: 0.69 * PI / nn,
            radius: 8.0 + 2.2 * x.abs().powf(1.0 / (2.0 * n as f64)),
            nodes_per_ray: 260,
        };
        for x in grid(-8.0, 4.0, 1.0) {
            let standard = ai_n(n, x).unwrap();
            let other = ai_n_with(&alt(x), x).unwrap().value;
            assert!(
                (standard - other).abs() <= 1e-10,
                "n={n}, x={x}: {standard} vs {other}"
            );
        }
    }
}

#[test]
fn imaginary_residuals_are_tiny() {
    for n in 1..=3u32 {
        for x in grid(-8.0, 8.0, 1.0) {
            let eval = ai_n_with(&ContourSpec::standard(n, x), x).unwrap();
            assert!(
                eval.imag_residual <= 1e-12,
                "n={n}, x={x}: imag {:.3e}",
                eval.imag_residual
            );
        }
    }
}

#[test]
fn default_contour_tail_bound_is_negligible() {
    for n in 1..=3u32 {
        for x in [-8.0, 0.0, 8.0] {
            let eval = ai_n_with(&ContourSpec::standard(n, x), x).unwrap();
            assert!(
                eval.tail_bound < 1e-13,
                "n={n}, x={x}: tail {:.3e}",
                eval.tail_bound
            );
        }
    }
}

#[test]
fn node_doubling_self_convergence() {
    for n in 1..=2u32 {
        for x in [-6.0, -1.0, 2.0] {
            let base = ContourSpec::standard(n, x);
            let doubled = ContourSpec {
                nodes_per_ray: 2 * base.nodes_per_ray,
                ..base.clone()
            };
            let a = ai_n_with(&base, x).unwrap().value;
            let b = ai_n_with(&doubled, x).unwrap().value;
            assert!((a - b).abs() < 1e-12, "n={n}, x={x}: {a} vs {b}");
        }
    }
}

#[test]
fn right_tail_decays() {
    // classical case: monotone decay on the sampled grid, and small at 5
    let samples: Vec<f64> = grid(1.0, 10.0, 0.5)
        .into_iter()
        .map(|x| ai_n(1, x).unwrap())
        .collect();
    for w in samples.windows(2) {
        assert!(w[1] < w[0] && w[1] > 0.0, "{w:?}");
    }
    // Ai(5) = 1.08344e-4 per the series oracle
    let at_five = ai_n(1, 5.0).unwrap();
    assert!((at_five - ai_classical(5.0)).abs() < 1e-12);
    assert!(at_five.abs() < 1.1e-4);

    // higher orders decay in modulus within the envelope (the n = 2 tail
    // oscillates, so monotonicity is only asked of the bound)
    for n in 2..=3u32 {
        for x in grid(1.0, 10.0, 0.5) {
            assert!(ai_n(n, x).unwrap().abs() <= decay_envelope(n, x));
        }
    }
}

#[test]
fn derivative_with_custom_contour_matches_standard() {
    let x = -2.5;
    let spec = ContourSpec {
        nodes_per_ray: 300,
        ..ContourSpec::standard(1, x)
    };
    let via_spec = ai_n_deriv_with(&spec, x, 2).unwrap().value;
    let standard = ai_n_deriv(1, x, 2).unwrap();
    assert!((via_spec - standard).abs() < 1e-11);
}

#[test]
fn oracle_is_usable_out_to_twelve() {
    // the exact-series oracle stays accurate where seeds are checked
    let v = ai_classical(8.0);
    assert!((v - 4.692207616099231e-8).abs() < 1e-18);
    let w = ai_classical(12.0);
    assert!((w - 1.3931846888753608e-13).abs() < 1e-23);
}
