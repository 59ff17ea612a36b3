//! Lowering of a symbolic hierarchy member to a numerical right-hand side.

use super::PainleveError;
use crate::diffring::{DiffPoly, GaussRat, Generator, Monomial};
use crate::hierarchy::HierarchyMember;
use num_complex::Complex64;

/// One factor of a compiled term.
#[derive(Clone, Copy, Debug)]
enum Slot {
    /// Index into the first-order state vector, `order * k + (comp - 1)`.
    State(usize),
    T,
    X(usize),
}

#[derive(Clone, Debug)]
struct Term {
    coeff: Complex64,
    factors: Vec<(Slot, u32)>,
}

/// Evaluable form of `D^{2n} u_j = f_j(t, x, u, ..., D^{2n-1}u)`.
///
/// The state layout is order-major: slot `m·k + (j-1)` holds `u_j^{(m)}`,
/// `m = 0..2n-1`, matching the first-order reduction used by the
/// integrator.
#[derive(Clone, Debug)]
pub struct CompiledRhs {
    pub n: u32,
    pub k: usize,
    top: Vec<Vec<Term>>,
}

impl CompiledRhs {
    /// State dimension of the first-order system, `2n·k`.
    pub fn dim(&self) -> usize {
        2 * self.n as usize * self.k
    }

    /// Writes the top derivatives `u_j^{(2n)}` into `out`.
    pub fn eval_top(&self, t: f64, x: &[f64], state: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(state.len(), self.dim());
        debug_assert_eq!(out.len(), self.k);
        for (j, terms) in self.top.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for term in terms {
                let mut prod = term.coeff;
                for &(slot, pow) in &term.factors {
                    let base = match slot {
                        Slot::State(i) => state[i],
                        Slot::T => Complex64::new(t, 0.0),
                        Slot::X(i) => Complex64::new(x[i], 0.0),
                    };
                    prod *= base.powu(pow);
                }
                acc += prod;
            }
            out[j] = acc;
        }
    }

    /// Full first-order vector field `y' = f(t, y)`: shift the derivative
    /// stack and append the compiled top derivatives.
    pub fn eval_system(&self, t: f64, x: &[f64], y: &[Complex64], dy: &mut [Complex64]) {
        let k = self.k;
        let dim = self.dim();
        debug_assert_eq!(y.len(), dim);
        dy[..dim - k].copy_from_slice(&y[k..]);
        let (shift, top) = dy.split_at_mut(dim - k);
        let _ = shift;
        self.eval_top(t, x, y, top);
    }
}

/// Isolates `D^{2n} u_j` in each component of the member. The leading
/// coefficient must be exactly `i^{2n} = (-1)^n` and no other term may reach
/// derivative order `2n`; both are checked, violation is [`PainleveError::NotMonic`].
pub fn compile_rhs(member: &HierarchyMember) -> Result<CompiledRhs, PainleveError> {
    let n = member.n;
    let k = member.k;
    let two_n = (2 * n) as u16;
    let lead_coeff = GaussRat::from_int(if n.is_multiple_of(2) { 1 } else { -1 });

    let mut top = Vec::with_capacity(k);
    for comp in 1..=k as u8 {
        let lhs = &member.lhs[(comp - 1) as usize];
        let lead_mono = Monomial::from_gen(Generator::u_deriv(comp, two_n));
        let got = lhs.coefficient(&lead_mono);
        if got != lead_coeff {
            return Err(PainleveError::NotMonic {
                comp,
                detail: format!("leading coefficient is {got}, expected {lead_coeff}"),
            });
        }
        // rest = lhs - lead; solve lead_coeff · D^{2n}u_j + rest = rhs:
        // D^{2n}u_j = (rhs - rest) / lead_coeff, and 1/(-1)^n = (-1)^n.
        let mut rest = lhs.clone();
        rest.add_term(lead_mono, -lead_coeff.clone());
        if rest.max_u_order().is_some_and(|m| m >= two_n) {
            return Err(PainleveError::NotMonic {
                comp,
                detail: "nonlinear terms reach the top derivative order".to_string(),
            });
        }
        let expr = (member.rhs[(comp - 1) as usize].clone() - &rest).scale(&lead_coeff);
        top.push(compile_poly(&expr, n, k)?);
    }
    Ok(CompiledRhs { n, k, top })
}

fn compile_poly(p: &DiffPoly, n: u32, k: usize) -> Result<Vec<Term>, PainleveError> {
    let two_n = 2 * n as usize;
    let mut terms = Vec::with_capacity(p.num_terms());
    for (mono, coeff) in p.terms() {
        let mut factors = Vec::with_capacity(mono.factors().len());
        for &(g, pow) in mono.factors() {
            let slot = match g {
                Generator::U { comp, order } => {
                    let (comp, order) = (comp as usize, order as usize);
                    if order >= two_n || comp == 0 || comp > k {
                        return Err(PainleveError::InvalidParams(format!(
                            "generator {g} outside the state layout"
                        )));
                    }
                    Slot::State(order * k + comp - 1)
                }
                Generator::T => Slot::T,
                Generator::X { comp } => {
                    let comp = comp as usize;
                    if comp == 0 || comp > k {
                        return Err(PainleveError::InvalidParams(format!(
                            "threshold index {comp} out of range"
                        )));
                    }
                    Slot::X(comp - 1)
                }
            };
            factors.push((slot, pow));
        }
        terms.push(Term {
            coeff: coeff.to_complex(),
            factors,
        });
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::hierarchy_member;
    use approx::assert_abs_diff_eq;

    #[test]
    fn scalar_first_member_rhs() {
        // D²u = 2u³ + (t + x) u: at u = 1, u' = 0, t = 0, x = 0 the value is 2
        let member = hierarchy_member(1, 1).unwrap();
        let rhs = compile_rhs(&member).unwrap();
        let state = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let mut out = [Complex64::new(0.0, 0.0)];
        rhs.eval_top(0.0, &[0.0], &state, &mut out);
        assert_abs_diff_eq!(out[0].re, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(out[0].im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn coupled_first_member_matches_formula() {
        // D²u_j = 2 u_j Σ u_l² + (t + x_j) u_j for a random complex state
        let member = hierarchy_member(1, 2).unwrap();
        let rhs = compile_rhs(&member).unwrap();
        let u = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.4)];
        let du = [Complex64::new(0.0, -0.7), Complex64::new(1.1, 0.0)];
        let state = [u[0], u[1], du[0], du[1]];
        let (t, x) = (0.37, [0.25, -1.5]);
        let mut out = [Complex64::default(); 2];
        rhs.eval_top(t, &x, &state, &mut out);
        let s2 = u[0] * u[0] + u[1] * u[1];
        for j in 0..2 {
            let want = 2.0 * u[j] * s2 + (t + x[j]) * u[j];
            assert_abs_diff_eq!(out[j].re, want.re, epsilon = 1e-13);
            assert_abs_diff_eq!(out[j].im, want.im, epsilon = 1e-13);
        }
    }

    #[test]
    fn compiled_rhs_agrees_with_symbolic_substitution() {
        // substitute the computed top derivative back into lhs and rhs
        let member = hierarchy_member(2, 2).unwrap();
        let rhs = compile_rhs(&member).unwrap();
        let k = 2usize;
        let dim = rhs.dim();
        // deterministic pseudo-random states
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for trial in 0..100 {
            let state: Vec<Complex64> =
                (0..dim).map(|_| Complex64::new(next(), next())).collect();
            let (t, x) = (next(), [next(), next()]);
            let mut topv = vec![Complex64::default(); k];
            rhs.eval_top(t, &x, &state, &mut topv);

            let assign = |g: Generator| match g {
                Generator::U { comp, order } => {
                    let (c, o) = (comp as usize - 1, order as usize);
                    if o == 2 * 2 {
                        topv[c]
                    } else {
                        state[o * k + c]
                    }
                }
                Generator::T => Complex64::new(t, 0.0),
                Generator::X { comp } => Complex64::new(x[comp as usize - 1], 0.0),
            };
            for j in 0..k {
                let lhs_val = member.lhs[j].eval(&assign);
                let rhs_val = member.rhs[j].eval(&assign);
                let scale = lhs_val.norm().max(1.0);
                assert!(
                    (lhs_val - rhs_val).norm() <= 1e-13 * scale,
                    "trial {trial}, component {j}: |{lhs_val} - {rhs_val}|"
                );
            }
        }
    }
}
