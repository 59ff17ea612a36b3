//! Exact verification of the zero-curvature system.
//!
//! Everything here is checked in the free ring: no tolerance, a residual is
//! either the zero polynomial or a reported violation. Two of the constant
//! (`λ⁰`) block equations are not free-ring identities — they hold precisely
//! on solutions — and for those the check is that the residual cancels the
//! hierarchy member exactly.

use super::chain::{b_lambda_coeffs, LenardChain};
use super::lenard::{lenard_minus, lenard_plus};
use super::member::HierarchyMember;
use super::HierarchyError;
use crate::diffring::{inner, outer, DiffPoly, MatDiffPoly, VecDiffPoly};

/// Result of a single identity check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    /// `None` means the residual is identically zero.
    pub residual: Option<String>,
}

impl CheckOutcome {
    fn of_poly(name: impl Into<String>, residual: &DiffPoly) -> Self {
        CheckOutcome {
            name: name.into(),
            residual: if residual.is_zero() {
                None
            } else {
                Some(residual.to_string())
            },
        }
    }

    fn of_vec(name: impl Into<String>, residual: &VecDiffPoly) -> Self {
        let nonzero: Vec<String> = residual
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("[{}] {}", i + 1, p))
            .collect();
        CheckOutcome {
            name: name.into(),
            residual: if nonzero.is_empty() {
                None
            } else {
                Some(nonzero.join("; "))
            },
        }
    }

    fn of_mat(name: impl Into<String>, residual: &MatDiffPoly) -> Self {
        let mut nonzero = Vec::new();
        for i in 0..residual.size() {
            for j in 0..residual.size() {
                if !residual.at(i, j).is_zero() {
                    nonzero.push(format!("({},{}) {}", i + 1, j + 1, residual.at(i, j)));
                }
            }
        }
        CheckOutcome {
            name: name.into(),
            residual: if nonzero.is_empty() {
                None
            } else {
                Some(nonzero.join("; "))
            },
        }
    }

    pub fn is_exact(&self) -> bool {
        self.residual.is_none()
    }
}

/// A batch of identity checks.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_exact(&self) -> bool {
        self.checks.iter().all(CheckOutcome::is_exact)
    }

    pub fn violations(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.is_exact())
    }

    /// Converts the first violation, if any, into an error.
    pub fn ensure_exact(&self) -> Result<(), HierarchyError> {
        match self.violations().next() {
            None => Ok(()),
            Some(c) => Err(HierarchyError::IdentityViolation {
                name: c.name.clone(),
                residual: c.residual.clone().unwrap_or_default(),
            }),
        }
    }

    fn push(&mut self, c: CheckOutcome) {
        self.checks.push(c);
    }
}

/// `m u` with `m = diag(x_j + t)`.
fn m_times_u(k: usize) -> VecDiffPoly {
    VecDiffPoly::new(
        (1..=k as u8)
            .map(|j| (DiffPoly::x(j) + &DiffPoly::t()) * DiffPoly::u(j))
            .collect(),
    )
}

/// Verifies the full compatibility system of the Lax pair:
///
/// * the seed relations for `a_1`;
/// * the four coupled equations at every intermediate power of `λ`;
/// * the constant-power equations, of which the diagonal pair are free-ring
///   identities while the off-diagonal pair must reduce exactly to the
///   hierarchy member;
/// * the alternating Lenard recursion for the `a^{21}` column and its
///   closing relation;
/// * the trace identity, the parity symmetries, and the zero-curvature
///   residual assembled coefficient-by-coefficient in `λ`.
pub fn verify_compatibility(
    chain: &LenardChain,
    member: &HierarchyMember,
) -> Result<VerifyReport, HierarchyError> {
    if chain.n != member.n || chain.k != member.k {
        return Err(HierarchyError::InvalidParams(
            "chain and member have different (n, k)".to_string(),
        ));
    }
    let n = chain.n as usize;
    let k = chain.k;
    let u = VecDiffPoly::generators(k);
    let two_n = 2 * n;
    let mut report = VerifyReport::default();

    // Seeds.
    report.push(CheckOutcome::of_vec(
        "seed a_1^{21} = i u",
        &(chain.block(1).a21.clone() - &u.times_i()),
    ));
    report.push(CheckOutcome::of_vec(
        "seed a_1^{12} = -i uᵀ",
        &(chain.block(1).a12.clone() + &u.times_i()),
    ));

    // Intermediate powers: for j = 1..2n-1,
    //   ȧ_j^{11} = -i (uᵀ a_j^{21} + a_j^{12} u)
    //   ȧ_j^{12} = -i (a_{j+1}^{12} + uᵀ a_j^{22} - a_j^{11} uᵀ)
    //   ȧ_j^{22} =  i (u a_j^{12} + a_j^{21} uᵀ)
    //   ȧ_j^{21} =  i (a_{j+1}^{21} + a_j^{11} u - a_j^{22} u)
    for j in 1..two_n {
        let aj = chain.block(j);
        let anext = chain.block(j + 1);

        let r11 = aj.a11.total_derivative()
            + &(inner(&u, &aj.a21)? + inner(&aj.a12, &u)?).times_i();
        report.push(CheckOutcome::of_poly(format!("scalar block, j={j}"), &r11));

        let rhs12 = (anext.a12.clone() + &aj.a22.transpose().mul_vec(&u)
            - &u.scale(&aj.a11))
            .times_i();
        let r12 = aj.a12.total_derivative() + &rhs12;
        report.push(CheckOutcome::of_vec(format!("row block, j={j}"), &r12));

        let rhs22 = (outer(&u, &aj.a12) + &outer(&aj.a21, &u)).times_i();
        let r22 = aj.a22.total_derivative() - &rhs22;
        report.push(CheckOutcome::of_mat(format!("matrix block, j={j}"), &r22));

        let rhs21 = (anext.a21.clone() + &u.scale(&aj.a11) - &aj.a22.mul_vec(&u)).times_i();
        let r21 = aj.a21.total_derivative() - &rhs21;
        report.push(CheckOutcome::of_vec(format!("column block, j={j}"), &r21));
    }

    // Constant power. The scalar and matrix equations hold identically.
    let a_last = chain.block(two_n);
    let mu = m_times_u(k);
    let hierarchy_residual = member.residual_form();

    let r11 = a_last.a11.total_derivative()
        + &(inner(&u, &a_last.a21)? + inner(&a_last.a12, &u)?).times_i();
    report.push(CheckOutcome::of_poly("scalar block, j=2n", &r11));

    let r22 = a_last.a22.total_derivative()
        - &(outer(&u, &a_last.a12) + &outer(&a_last.a21, &u)).times_i();
    report.push(CheckOutcome::of_mat("matrix block, j=2n", &r22));

    // Row equation at λ⁰:
    //   ȧ_{2n}^{12} + i (uᵀ a_{2n}^{22} - a_{2n}^{11} uᵀ + i uᵀ m)
    // is not identically zero; it equals -(lhs - rhs)ᵀ.
    let row_residual = a_last.a12.total_derivative()
        + &(a_last.a22.transpose().mul_vec(&u) - &u.scale(&a_last.a11)).times_i()
        - &mu;
    report.push(CheckOutcome::of_vec(
        "row block at λ⁰ reduces to the hierarchy member",
        &(row_residual + &hierarchy_residual),
    ));

    // Column equation at λ⁰:
    //   ȧ_{2n}^{21} - i (a_{2n}^{11} u - a_{2n}^{22} u - i m u) = -(lhs - rhs).
    let col_residual = a_last.a21.total_derivative()
        - &(u.scale(&a_last.a11) - &a_last.a22.mul_vec(&u)).times_i()
        - &mu;
    report.push(CheckOutcome::of_vec(
        "column block at λ⁰ reduces to the hierarchy member",
        &(col_residual + &hierarchy_residual),
    ));

    // Alternating Lenard recursion along the a^{21} chain:
    //   a_{2j}^{21} = -L- a_{2j-1}^{21}   (j = 1..n)
    //   a_{2j+1}^{21} = -L+ a_{2j}^{21}   (j = 1..n-1)
    for j in 1..=n {
        let got = chain.block(2 * j).a21.clone();
        let want = -(lenard_minus(&chain.block(2 * j - 1).a21)?);
        report.push(CheckOutcome::of_vec(
            format!("Lenard step a_{{{}}} = -L- a_{{{}}}", 2 * j, 2 * j - 1),
            &(got - &want),
        ));
    }
    for j in 1..n {
        let got = chain.block(2 * j + 1).a21.clone();
        let want = -(lenard_plus(&chain.block(2 * j).a21)?);
        report.push(CheckOutcome::of_vec(
            format!("Lenard step a_{{{}}} = -L+ a_{{{}}}", 2 * j + 1, 2 * j),
            &(got - &want),
        ));
    }

    // Closing relation: -L+ a_{2n}^{21} + i m u = i (lhs - rhs).
    let closing = -(lenard_plus(&a_last.a21)?) + &mu.times_i()
        - &hierarchy_residual.times_i();
    report.push(CheckOutcome::of_vec(
        "closing relation reproduces the hierarchy member",
        &closing,
    ));

    // Trace identity and parity symmetries.
    for j in 1..=two_n {
        let b = chain.block(j);
        report.push(CheckOutcome::of_poly(
            format!("trace identity, j={j}"),
            &(b.a11.clone() + &b.a22.trace()),
        ));
        let sign = if j % 2 == 0 { 1 } else { -1 };
        report.push(CheckOutcome::of_vec(
            format!("parity of off-diagonal blocks, j={j}"),
            &(b.a21.clone() - &b.a12.map(|p| DiffPoly::int(sign) * p.clone())),
        ));
        let sym_residual = b.a22.clone()
            - &b.a22.transpose().map(|p| DiffPoly::int(sign) * p.clone());
        report.push(CheckOutcome::of_mat(
            format!("parity of matrix block, j={j}"),
            &sym_residual,
        ));
    }

    // Zero-curvature residual R(λ) = AB - BA - ∂_λ B + ∂_t A, coefficient by
    // coefficient. All powers vanish identically except λ⁰, whose
    // off-diagonal blocks carry ±(lhs - rhs).
    let r = zero_curvature_residual(chain);
    let deg = r.len() - 1;
    for (p, coeff) in r.iter().enumerate().rev() {
        if p > 0 {
            report.push(CheckOutcome::of_mat(
                format!("zero-curvature coefficient λ^{p}"),
                coeff,
            ));
            continue;
        }
        // λ⁰: subtract the expected on-shell content before testing.
        let mut expected = MatDiffPoly::zero(k + 1);
        for j in 1..=k {
            expected.set(j, 0, -hierarchy_residual[j - 1].clone());
            expected.set(0, j, -hierarchy_residual[j - 1].clone());
        }
        report.push(CheckOutcome::of_mat(
            "zero-curvature coefficient λ⁰ reduces to the hierarchy member",
            &(coeff.clone() - &expected),
        ));
    }
    debug_assert_eq!(deg, two_n + 1);

    Ok(report)
}

/// `R(λ) = A(λ)B(λ) - B(λ)A(λ) - ∂B/∂λ + ∂A/∂t` as λ-coefficients,
/// index = power.
fn zero_curvature_residual(chain: &LenardChain) -> Vec<MatDiffPoly> {
    let k = chain.k;
    let a = chain.a_lambda_coeffs();
    let [b0, b1] = b_lambda_coeffs(k);
    let deg = a.len(); // 2n + 1 powers in the result
    let mut r: Vec<MatDiffPoly> = (0..=deg).map(|_| MatDiffPoly::zero(k + 1)).collect();

    for (p, ap) in a.iter().enumerate() {
        let c0 = ap.matmul(&b0) - &b0.matmul(ap);
        let c1 = ap.matmul(&b1) - &b1.matmul(ap);
        r[p + 1] = r[p + 1].clone() + &c0;
        r[p] = r[p].clone() + &c1;
    }
    // -∂B/∂λ
    r[0] = r[0].clone() - &b0;
    // +∂A/∂t
    for (p, ap) in a.iter().enumerate() {
        r[p] = r[p].clone() + &ap.total_derivative();
    }
    r
}

/// Convolution identities: for every `l = 1..2n`,
/// `a_l^{11} = -i Σ_{j<l} (a_j^{11} a_{l-j}^{11} + a_j^{12} a_{l-j}^{21})`
/// and the matching formula for `a_l^{22}`.
pub fn verify_convolutions(chain: &LenardChain) -> Result<VerifyReport, HierarchyError> {
    let two_n = 2 * chain.n as usize;
    let k = chain.k;
    let mut report = VerifyReport::default();
    for l in 1..=two_n {
        let mut conv11 = DiffPoly::zero();
        let mut conv22 = MatDiffPoly::zero(k);
        for j in 1..l {
            let (bj, br) = (chain.block(j), chain.block(l - j));
            conv11 += &(&bj.a11 * &br.a11 + inner(&bj.a12, &br.a21)?);
            conv22 = conv22 + &bj.a22.matmul(&br.a22);
            conv22 = conv22 + &outer(&bj.a21, &br.a12);
        }
        report.push(CheckOutcome::of_poly(
            format!("scalar convolution, l={l}"),
            &(chain.block(l).a11.clone() + &conv11.times_i()),
        ));
        report.push(CheckOutcome::of_mat(
            format!("matrix convolution, l={l}"),
            &(chain.block(l).a22.clone() - &conv22.times_i()),
        ));
    }
    Ok(report)
}
