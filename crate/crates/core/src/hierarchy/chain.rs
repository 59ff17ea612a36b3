//! Recursive construction of the Lax matrices.
//!
//! `A(λ) = Σ_{j=0}^{2n} A_j λ^{2n-j} + Â_{2n}` in `(1+k)×(1+k)` block form
//! with blocks `a_j^{11}` (scalar), `a_j^{12}` (row), `a_j^{21}` (column),
//! `a_j^{22}` (k×k), and `B(λ)` linear in `λ`. The chain is seeded by
//! `a_1^{21} = i u`, `a_1^{22} = 0` and extended by
//!
//! ```text
//! a_{j+1}^{21} = -i ȧ_j^{21} - a_j^{11} u + a_j^{22} u
//! a_{j+1}^{22} = i Σ_{l=1}^{j} (a_l^{22} a_{j+1-l}^{22} + a_l^{21} a_{j+1-l}^{12})
//! ```
//!
//! with `a_j^{11} = -tr a_j^{22}` (integration constant fixed to zero by the
//! decay of the blocks at large time) and `a_j^{12} = (-1)^j (a_j^{21})ᵀ`.

use super::HierarchyError;
use crate::diffring::{outer, DiffPoly, GaussRat, MatDiffPoly, VecDiffPoly};

/// Block entries of one `λ`-coefficient of `A(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxBlock {
    pub a11: DiffPoly,
    pub a12: VecDiffPoly,
    pub a21: VecDiffPoly,
    pub a22: MatDiffPoly,
}

impl LaxBlock {
    fn zero(k: usize) -> Self {
        LaxBlock {
            a11: DiffPoly::zero(),
            a12: VecDiffPoly::zero(k),
            a21: VecDiffPoly::zero(k),
            a22: MatDiffPoly::zero(k),
        }
    }

    /// Assembles the full `(k+1)×(k+1)` matrix.
    pub fn full_matrix(&self) -> MatDiffPoly {
        let k = self.a21.len();
        MatDiffPoly::from_fn(k + 1, |i, j| match (i, j) {
            (0, 0) => self.a11.clone(),
            (0, j) => self.a12[j - 1].clone(),
            (i, 0) => self.a21[i - 1].clone(),
            (i, j) => self.a22.at(i - 1, j - 1).clone(),
        })
    }
}

/// The coefficient chain `a_0, ..., a_{2n}` plus the constant correction
/// `Â_{2n}` (diagonal, degree one in `t` and the thresholds).
#[derive(Clone, Debug)]
pub struct LenardChain {
    pub n: u32,
    pub k: usize,
    blocks: Vec<LaxBlock>,
    hat_diag: Vec<DiffPoly>,
}

impl LenardChain {
    pub fn block(&self, j: usize) -> &LaxBlock {
        &self.blocks[j]
    }

    pub fn blocks(&self) -> &[LaxBlock] {
        &self.blocks
    }

    /// Diagonal of `Â_{2n}` as `k+1` ring elements.
    pub fn hat_diag(&self) -> &[DiffPoly] {
        &self.hat_diag
    }

    pub fn hat_matrix(&self) -> MatDiffPoly {
        MatDiffPoly::diagonal(self.hat_diag.clone())
    }

    /// Coefficient matrices of `A(λ)` by power of `λ`: index `p` holds the
    /// coefficient of `λ^p`, so `coeffs[2n - j] = A_j`, with `Â_{2n}` folded
    /// into the constant coefficient.
    pub fn a_lambda_coeffs(&self) -> Vec<MatDiffPoly> {
        let deg = 2 * self.n as usize;
        let mut coeffs: Vec<MatDiffPoly> = (0..=deg)
            .map(|p| self.blocks[deg - p].full_matrix())
            .collect();
        coeffs[0] = coeffs[0].clone() + &self.hat_matrix();
        coeffs
    }
}

/// `B(λ)`: degree-one polynomial in `λ` with constant off-diagonal blocks
/// `±i u`.
#[derive(Clone, Debug)]
pub struct BMatrix {
    pub k: usize,
}

impl BMatrix {
    pub fn new(k: usize) -> Self {
        BMatrix { k }
    }

    /// `[B_0, B_1]` with `B(λ) = B_0 λ + B_1`.
    pub fn lambda_coeffs(&self) -> [MatDiffPoly; 2] {
        b_lambda_coeffs(self.k)
    }
}

/// Coefficients of `B(λ) = B_0 λ + B_1`:
/// `B_0 = (i/(k+1)) diag(-k, 1, ..., 1)` and `B_1` has blocks `-i uᵀ` / `i u`
/// off the diagonal.
pub fn b_lambda_coeffs(k: usize) -> [MatDiffPoly; 2] {
    let kk = k as i64;
    let b0 = MatDiffPoly::diagonal(
        std::iter::once(GaussRat::ratio_i(-kk, kk + 1))
            .chain(std::iter::repeat_n(GaussRat::ratio_i(1, kk + 1), k))
            .map(DiffPoly::constant)
            .collect(),
    );
    let b1 = MatDiffPoly::from_fn(k + 1, |i, j| match (i, j) {
        (0, 0) => DiffPoly::zero(),
        (0, j) => -(DiffPoly::u(j as u8).times_i()),
        (i, 0) => DiffPoly::u(i as u8).times_i(),
        _ => DiffPoly::zero(),
    });
    [b0, b1]
}

/// Builds the full chain for the `(n, k)` member.
pub fn lax_chain(n: u32, k: usize) -> Result<LenardChain, HierarchyError> {
    if n == 0 || k == 0 {
        return Err(HierarchyError::InvalidParams(format!(
            "need n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    let kk = k as i64;
    let u = VecDiffPoly::generators(k);
    let two_n = 2 * n as usize;

    let mut blocks: Vec<LaxBlock> = Vec::with_capacity(two_n + 1);

    // a_0: leading coefficient (i/(k+1)) diag(-k, 1, ..., 1)
    let mut a0 = LaxBlock::zero(k);
    a0.a11 = DiffPoly::constant(GaussRat::ratio_i(-kk, kk + 1));
    a0.a22 = MatDiffPoly::identity_scaled(k, DiffPoly::constant(GaussRat::ratio_i(1, kk + 1)));
    blocks.push(a0);

    // a_1: seeds i u and 0, with a_1^{12} = -i uᵀ and a_1^{11} = -tr 0 = 0
    let mut a1 = LaxBlock::zero(k);
    a1.a21 = u.times_i();
    a1.a12 = -(u.times_i());
    blocks.push(a1);

    for j in 1..two_n {
        let prev = &blocks[j];
        // a_{j+1}^{21} = -i D a_j^{21} - a_j^{11} u + a_j^{22} u
        let a21 = -(prev.a21.total_derivative().times_i()) - &u.scale(&prev.a11)
            + &prev.a22.mul_vec(&u);

        // a_{j+1}^{22} = i Σ_{l=1}^{j} (a_l^{22} a_{j+1-l}^{22} + a_l^{21} a_{j+1-l}^{12})
        let mut conv = MatDiffPoly::zero(k);
        for l in 1..=j {
            let r = j + 1 - l;
            conv = conv + &blocks[l].a22.matmul(&blocks[r].a22);
            conv = conv + &outer(&blocks[l].a21, &blocks[r].a12);
        }
        let a22 = conv.times_i();

        let a11 = -a22.trace();
        let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
        let a12 = a21.map(|p| DiffPoly::int(sign) * p.clone());

        blocks.push(LaxBlock { a11, a12, a21, a22 });
    }

    // Â_{2n} = (i/(k+1)) diag(-k t - Σ x_j, t + k x_1 - Σ_{j≠1} x_j, ...)
    let sum_x = (1..=k as u8).fold(DiffPoly::zero(), |acc, j| acc + &DiffPoly::x(j));
    let pref = GaussRat::ratio_i(1, kk + 1);
    let mut hat_diag = Vec::with_capacity(k + 1);
    hat_diag.push((DiffPoly::int(-kk) * DiffPoly::t() - &sum_x).scale(&pref));
    for l in 1..=k as u8 {
        let entry = DiffPoly::t() + &(DiffPoly::int(kk + 1) * DiffPoly::x(l)) - &sum_x;
        hat_diag.push(entry.scale(&pref));
    }

    Ok(LenardChain {
        n,
        k,
        blocks,
        hat_diag,
    })
}
