//! Members of the vector-valued Painlevé II hierarchy,
//! `(L+ L-)^n u = -diag(x_1 + t, ..., x_k + t) u`.

use super::chain::LenardChain;
use super::lenard::{lenard_minus, lenard_plus};
use super::HierarchyError;
use crate::diffring::{DiffPoly, GaussRat, Monomial, VecDiffPoly};

/// One hierarchy equation, stored as `lhs = rhs` with
/// `lhs = (L+ L-)^n u` and `rhs_j = -(x_j + t) u_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyMember {
    pub n: u32,
    pub k: usize,
    pub lhs: VecDiffPoly,
    pub rhs: VecDiffPoly,
}

impl HierarchyMember {
    /// `lhs - rhs`; the equation states this vanishes.
    pub fn residual_form(&self) -> VecDiffPoly {
        self.lhs.clone() - &self.rhs
    }

    /// The equation is of order exactly `2n` with leading coefficient
    /// `i^{2n} = (-1)^n` in each component.
    pub fn leading_coefficient(&self, comp: u8) -> GaussRat {
        let lead = Monomial::from_gen(crate::diffring::Generator::u_deriv(
            comp,
            (2 * self.n) as u16,
        ));
        self.lhs[(comp - 1) as usize].coefficient(&lead)
    }
}

/// `rhs_j = -(x_j + t) u_j`.
pub fn member_rhs(k: usize) -> VecDiffPoly {
    VecDiffPoly::new(
        (1..=k as u8)
            .map(|j| -((DiffPoly::x(j) + &DiffPoly::t()) * DiffPoly::u(j)))
            .collect(),
    )
}

/// Builds the `(n, k)` hierarchy member by direct operator composition,
/// alternating `L-` then `L+` starting from `u`.
pub fn hierarchy_member(n: u32, k: usize) -> Result<HierarchyMember, HierarchyError> {
    if n == 0 || k == 0 {
        return Err(HierarchyError::InvalidParams(format!(
            "need n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    let mut w = VecDiffPoly::generators(k);
    for _ in 0..n {
        w = lenard_minus(&w)?;
        w = lenard_plus(&w)?;
    }
    Ok(HierarchyMember {
        n,
        k,
        lhs: w,
        rhs: member_rhs(k),
    })
}

/// Rebuilds the same member from a Lax chain: the closing relation gives
/// `lhs = i L+ a_{2n}^{21}`.
pub fn member_via_chain(chain: &LenardChain) -> Result<HierarchyMember, HierarchyError> {
    let last = chain.block(2 * chain.n as usize);
    let lhs = lenard_plus(&last.a21)?.times_i();
    Ok(HierarchyMember {
        n: chain.n,
        k: chain.k,
        lhs,
        rhs: member_rhs(chain.k),
    })
}
