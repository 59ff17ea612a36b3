//! Shared test oracles, all independent of the code paths they check.
//!
//! * [`ai_classical`] / [`aip_classical`]: the classical Airy function from
//!   its Maclaurin series, summed in exact rational arithmetic with
//!   40-digit rational approximations of Ai(0) and Ai'(0), so cancellation
//!   costs no precision anywhere in the working range.
//! * [`airy_kernel_cd`]: the Christoffel–Darboux closed form of the Airy
//!   kernel built on the series oracle.
//! * [`hastings_mcleod_bvp`]: a two-point boundary-value collocation solve
//!   of `u'' = 2u³ + tu` with Airy decay on the right and the power-law
//!   asymptote on the left, Newton iteration on a finite-difference grid
//!   plus Richardson extrapolation.

#![allow(dead_code)]

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{ToPrimitive, Zero};
use std::str::FromStr;

/// `Ai(0)` to 40 digits.
const AI0: &str = "0.3550280538878172392600631860041831763980";
/// `-Ai'(0)` to 40 digits.
const AIP0: &str = "0.2588194037928067984051835601892039634791";

fn rational_from_decimal(s: &str) -> BigRational {
    let (int_part, frac_part) = s.split_once('.').expect("decimal literal");
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&digits).expect("digits");
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    BigRational::new(numer, denom)
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Exact partial sums of the four Maclaurin series
/// `f, g, f', g'` with `Ai = c1 f - c2 g`.
fn airy_series_exact(x: f64) -> (BigRational, BigRational, BigRational, BigRational) {
    assert!(
        x.abs() <= 13.5,
        "series oracle restricted to |x| <= 13.5, got {x}"
    );
    let xr = BigRational::from_float(x).expect("finite x");
    let x3 = &xr * &xr * &xr;

    // f: term_0 = 1; ratio 3(k + 1/3) x³ / ((3k+1)(3k+2)(3k+3))
    // g: term_0 = x; ratio 3(k + 2/3) x³ / ((3k+2)(3k+3)(3k+4))
    let mut f_term = big(1);
    let mut g_term = xr.clone();
    let mut f_sum = f_term.clone();
    let mut g_sum = g_term.clone();
    // derivatives: term-wise d/dx: f'_k = 3k/x · f_k (via explicit recurrences)
    let mut fd_sum = BigRational::zero();
    let mut gd_sum = big(1); // d/dx of g_0 = x

    for k in 0i64..90 {
        // derivative terms of the CURRENT index before stepping:
        // d/dx f_k = 3k x^{3k-1} (...) handled incrementally below.
        let f_ratio_num = &x3 * big(3 * k + 1);
        let f_ratio_den = big((3 * k + 1) * (3 * k + 2) * (3 * k + 3));
        let next_f = &f_term * &f_ratio_num / &f_ratio_den;

        let g_ratio_num = &x3 * big(3 * k + 2);
        let g_ratio_den = big((3 * k + 2) * (3 * k + 3) * (3 * k + 4));
        let next_g = &g_term * &g_ratio_num / &g_ratio_den;

        // d/dx [x^{3k+3}-type term] = (3k+3)/x · term (x ≠ 0 handled below)
        f_sum += &next_f;
        g_sum += &next_g;
        if x != 0.0 {
            fd_sum += &next_f * big(3 * k + 3) / &xr;
            gd_sum += &next_g * big(3 * k + 4) / &xr;
        }
        f_term = next_f;
        g_term = next_g;
        if f_term.to_f64().unwrap_or(0.0).abs() < 1e-45
            && g_term.to_f64().unwrap_or(0.0).abs() < 1e-45
            && k > 4
        {
            break;
        }
    }
    (f_sum, g_sum, fd_sum, gd_sum)
}

/// Classical `Ai(x)` from the exact series.
pub fn ai_classical(x: f64) -> f64 {
    let (f, g, _, _) = airy_series_exact(x);
    let c1 = rational_from_decimal(AI0);
    let c2 = rational_from_decimal(AIP0);
    (c1 * f - c2 * g).to_f64().expect("finite")
}

/// Classical `Ai'(x)` from the exact series.
pub fn aip_classical(x: f64) -> f64 {
    let (_, _, fd, gd) = airy_series_exact(x);
    let c1 = rational_from_decimal(AI0);
    let c2 = rational_from_decimal(AIP0);
    (c1 * fd - c2 * gd).to_f64().expect("finite")
}

/// Christoffel–Darboux form of the classical Airy kernel,
/// `(Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x - y)`, with the confluent diagonal
/// `Ai'(x)² - x Ai(x)²`.
pub fn airy_kernel_cd(x: f64, y: f64) -> f64 {
    if (x - y).abs() < 1e-9 {
        let a = ai_classical(x);
        let ap = aip_classical(x);
        return ap * ap - x * a * a;
    }
    (ai_classical(x) * aip_classical(y) - aip_classical(x) * ai_classical(y)) / (x - y)
}

/// Left-boundary value of the Hastings–McLeod solution from its power-law
/// asymptote `√(-t/2)(1 + t⁻³/8 - 73 t⁻⁶/128)`.
fn hm_left_boundary(t: f64) -> f64 {
    assert!(t < -4.0);
    (-t / 2.0).sqrt() * (1.0 + 1.0 / (8.0 * t.powi(3)) - 73.0 / (128.0 * t.powi(6)))
}

fn hm_solve_grid(len: f64, steps: usize) -> Vec<f64> {
    let t_l = -len;
    let t_r = len;
    let h = (t_r - t_l) / steps as f64;
    let ts: Vec<f64> = (0..=steps).map(|i| t_l + i as f64 * h).collect();
    let mut u: Vec<f64> = ts
        .iter()
        .map(|&t| (0.25 * ((t * t + 1.0).sqrt() - t)).sqrt())
        .collect();
    let n_inner = steps - 1;
    u[0] = hm_left_boundary(t_l);
    u[steps] = ai_classical(t_r);

    let mut residual = vec![0.0; n_inner];
    for _ in 0..60 {
        let mut max_res = 0.0_f64;
        for i in 1..steps {
            let r = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (h * h)
                - 2.0 * u[i].powi(3)
                - ts[i] * u[i];
            residual[i - 1] = r;
            max_res = max_res.max(r.abs());
        }
        if max_res < 1e-11 {
            break;
        }
        // tridiagonal Newton system: J δ = -residual
        let sub = 1.0 / (h * h);
        let mut diag: Vec<f64> = (1..steps)
            .map(|i| -2.0 / (h * h) - 6.0 * u[i] * u[i] - ts[i])
            .collect();
        let mut rhs: Vec<f64> = residual.iter().map(|r| -r).collect();
        // Thomas elimination
        for i in 1..n_inner {
            let m = sub / diag[i - 1];
            diag[i] -= m * sub;
            let prev = rhs[i - 1];
            rhs[i] -= m * prev;
        }
        let mut delta = vec![0.0; n_inner];
        delta[n_inner - 1] = rhs[n_inner - 1] / diag[n_inner - 1];
        for i in (0..n_inner - 1).rev() {
            delta[i] = (rhs[i] - sub * delta[i + 1]) / diag[i];
        }
        for i in 1..steps {
            u[i] += delta[i - 1];
        }
    }
    u
}

/// `u(t)` of the Hastings–McLeod solution by collocation on `[-8, 8]` with
/// Richardson extrapolation; `t` must be a multiple of `1/128`.
pub fn hastings_mcleod_bvp(t: f64) -> f64 {
    let len = 8.0;
    let coarse_steps = 2048usize; // h = 1/128
    let fine_steps = 2 * coarse_steps;
    let h_units = ((t + len) * 128.0).round();
    assert!(
        ((t + len) * 128.0 - h_units).abs() < 1e-12,
        "t must sit on the coarse grid"
    );
    let coarse = hm_solve_grid(len, coarse_steps);
    let fine = hm_solve_grid(len, fine_steps);
    let vc = coarse[h_units as usize];
    let vf = fine[2 * h_units as usize];
    (4.0 * vf - vc) / 3.0
}
