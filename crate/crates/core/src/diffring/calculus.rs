//! The total derivative `D`, the Euler (variational) operator, and the
//! formal antiderivative `D⁻¹` on the image of `D`.

use super::coeff::GaussRat;
use super::poly::{DiffPoly, Generator, Monomial};
use super::RingError;

impl DiffPoly {
    /// Total derivative: `D u_j^{(m)} = u_j^{(m+1)}`, `D t = 1`, `D x_j = 0`,
    /// extended to products by the Leibniz rule.
    pub fn total_derivative(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in self.terms() {
            for &(g, p) in m.factors() {
                let scaled = c * &GaussRat::from_int(p as i64);
                match g {
                    Generator::U { comp, order } => {
                        let mono = m
                            .div_gen(g)
                            .times_gen(Generator::u_deriv(comp, order + 1));
                        out.add_term(mono, scaled);
                    }
                    Generator::T => {
                        out.add_term(m.div_gen(Generator::T), scaled);
                    }
                    Generator::X { .. } => {}
                }
            }
        }
        out
    }

    /// Partial derivative with respect to a single generator.
    pub fn partial(&self, g: Generator) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in self.terms() {
            let p = m.exponent(g);
            if p > 0 {
                out.add_term(m.div_gen(g), c * &GaussRat::from_int(p as i64));
            }
        }
        out
    }

    /// Iterated total derivative.
    pub fn derivative_n(&self, n: u16) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.total_derivative();
        }
        p
    }

    /// Variational derivative `δp/δu_j = Σ_m (-D)^m ∂p/∂u_j^{(m)}`.
    ///
    /// Vanishing of all variational derivatives characterizes membership of
    /// the u-dependent part of `p` in the image of `D`.
    pub fn euler_operator(&self, comp: u8) -> DiffPoly {
        let max_order = match self.max_order_of(comp) {
            Some(m) => m,
            None => return DiffPoly::zero(),
        };
        let mut out = DiffPoly::zero();
        for m in 0..=max_order {
            let mut term = self.partial(Generator::u_deriv(comp, m)).derivative_n(m);
            if m % 2 == 1 {
                term = -term;
            }
            out += &term;
        }
        out
    }

    /// Checks membership in `Im(D)`; on failure returns the witness.
    ///
    /// A monomial made of thresholds `x_j` alone (no `u`, no `t`) is rejected:
    /// `D⁻¹` never manufactures a factor of `t` that was not already present.
    pub fn exactness_witness(&self) -> Option<NotExactWitness> {
        for comp in self.u_components() {
            let residual = self.euler_operator(comp);
            if !residual.is_zero() {
                return Some(NotExactWitness::Variational { comp, residual });
            }
        }
        for (m, _) in self.terms() {
            if !m.has_u() && m.has_x() && m.t_degree() == 0 {
                return Some(NotExactWitness::PureThreshold {
                    monomial: m.clone(),
                });
            }
        }
        None
    }

    /// Formal antiderivative: returns `q` with `D q = p` and no constant
    /// term. Errors with [`RingError::NotExact`] when `p ∉ Im(D)`.
    ///
    /// The u-dependent part is reduced order by order: at the top derivative
    /// order `m` the polynomial is necessarily linear in the order-`m`
    /// generators, `p = Σ_j u_j^{(m)} B_j + lower`, and the closed-form
    /// potential of the 1-form `Σ B_j dv_j` in the variables
    /// `v_j = u_j^{(m-1)}` removes the whole order-`m` level at once. The
    /// exactness pre-check makes any stall here a hard error instead of a
    /// silent wrong answer.
    pub fn antiderivative(&self) -> Result<DiffPoly, RingError> {
        if let Some(w) = self.exactness_witness() {
            return Err(RingError::NotExact(Box::new(w)));
        }
        let mut p = self.clone();
        let mut q = DiffPoly::zero();

        while let Some(m_top) = p.max_u_order() {
            if m_top == 0 {
                return Err(RingError::AntiderivativeStuck {
                    order: 0,
                    terms: p.num_terms(),
                });
            }
            let mut step = DiffPoly::zero();
            for (mono, c) in p.terms() {
                let deg_top = mono.u_degree_at_order(m_top);
                if deg_top == 0 {
                    continue;
                }
                if deg_top > 1 {
                    return Err(RingError::AntiderivativeStuck {
                        order: m_top,
                        terms: p.num_terms(),
                    });
                }
                let g = mono.u_gen_at_order(m_top).expect("degree checked above");
                let comp = match g {
                    Generator::U { comp, .. } => comp,
                    _ => unreachable!(),
                };
                let rest = mono.div_gen(g);
                let beta = rest.u_degree_at_order(m_top - 1);
                let new_mono = rest.times_gen(Generator::u_deriv(comp, m_top - 1));
                step.add_term(new_mono, c.div_int(beta as i64 + 1));
            }
            q += &step;
            p -= &step.total_derivative();
            if p.max_u_order().is_some_and(|m| m >= m_top) {
                return Err(RingError::AntiderivativeStuck {
                    order: m_top,
                    terms: p.num_terms(),
                });
            }
        }

        // Remaining part is free of u-generators; integrate in t. The
        // exactness pre-check already rejected x-only monomials.
        for (mono, c) in p.terms() {
            let d = mono.t_degree();
            let mono_up = mono.times_gen(Generator::T);
            q.add_term(mono_up, c.div_int(d as i64 + 1));
        }

        debug_assert_eq!(q.total_derivative(), *self);
        debug_assert!(q.constant_term().is_zero());
        Ok(q)
    }
}

/// Why an exactness check failed.
#[derive(Clone, Debug)]
pub enum NotExactWitness {
    /// `δp/δu_comp ≠ 0`.
    Variational { comp: u8, residual: DiffPoly },
    /// A monomial in the thresholds alone, with no `t` to absorb `D`.
    PureThreshold { monomial: Monomial },
}

impl std::fmt::Display for NotExactWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotExactWitness::Variational { comp, residual } => {
                write!(f, "variational derivative in u{comp} is {residual}")
            }
            NotExactWitness::PureThreshold { monomial } => {
                write!(f, "threshold-only monomial {monomial} has no antiderivative")
            }
        }
    }
}
