//! Exact symbolic checks of the hierarchy layer: literal forms of the first
//! two members, the Lax-chain identities across a grid of `(n, k)`, and the
//! structural invariants.

use hoairy_core::diffring::{inner, DiffPoly, VecDiffPoly};
use hoairy_core::hierarchy::{
    hierarchy_member, lax_chain, member_via_chain, verify_compatibility, verify_convolutions,
};

fn u(j: u8) -> DiffPoly {
    DiffPoly::u(j)
}
fn du(j: u8, m: u16) -> DiffPoly {
    DiffPoly::u_deriv(j, m)
}

/// Literal right-hand side of the first member: `D²u_j = 2u_j Σ u_l² + (t+x_j)u_j`.
fn first_member_lhs(k: usize) -> VecDiffPoly {
    let uu = inner(&VecDiffPoly::generators(k), &VecDiffPoly::generators(k)).unwrap();
    VecDiffPoly::new(
        (1..=k as u8)
            .map(|j| DiffPoly::int(2) * u(j) * uu.clone() - &du(j, 2))
            .collect(),
    )
}

/// Literal form of the second member: the lhs of `(L+L-)² u = -(x+t)u`
/// reads `D⁴u_j - 4ü_j(uᵀu) - 8u̇_j(u̇ᵀu) - 6u_j(uᵀü) - 2u_j(u̇ᵀu̇) + 6u_j(uᵀu)²`.
fn second_member_lhs(k: usize) -> VecDiffPoly {
    let gen = VecDiffPoly::generators(k);
    let gen1 = gen.total_derivative();
    let gen2 = gen1.total_derivative();
    let uu = inner(&gen, &gen).unwrap();
    let udu = inner(&gen1, &gen).unwrap();
    let uddu = inner(&gen, &gen2).unwrap();
    let dudu = inner(&gen1, &gen1).unwrap();
    VecDiffPoly::new(
        (1..=k as u8)
            .map(|j| {
                du(j, 4)
                    - &(DiffPoly::int(4) * du(j, 2) * uu.clone())
                    - &(DiffPoly::int(8) * du(j, 1) * udu.clone())
                    - &(DiffPoly::int(6) * u(j) * uddu.clone())
                    - &(DiffPoly::int(2) * u(j) * dudu.clone())
                    + &(DiffPoly::int(6) * u(j) * uu.clone() * uu.clone())
            })
            .collect(),
    )
}

#[test]
fn first_member_matches_display_for_k_up_to_4() {
    for k in 1..=4 {
        let m = hierarchy_member(1, k).unwrap();
        assert_eq!(m.lhs, first_member_lhs(k), "k = {k}");
        for j in 1..=k as u8 {
            let expected_rhs = -((DiffPoly::x(j) + &DiffPoly::t()) * u(j));
            assert_eq!(m.rhs[(j - 1) as usize], expected_rhs);
        }
    }
}

#[test]
fn second_member_matches_displayed_coefficients() {
    for k in 1..=2 {
        let m = hierarchy_member(2, k).unwrap();
        assert_eq!(m.lhs, second_member_lhs(k), "k = {k}");
    }
}

#[test]
fn scalar_second_member_collapses_to_classical_form() {
    // k = 1: D⁴u = 10u²ü + 10uu̇² - 6u⁵ - (t+x)u
    let m = hierarchy_member(2, 1).unwrap();
    let expected = du(1, 4)
        - &(DiffPoly::int(10) * u(1) * u(1) * du(1, 2))
        - &(DiffPoly::int(10) * u(1) * du(1, 1) * du(1, 1))
        + &(DiffPoly::int(6) * u(1) * u(1) * u(1) * u(1) * u(1));
    assert_eq!(m.lhs[0], expected);
}

#[test]
fn exactness_never_fails_on_the_supported_grid() {
    // the Lenard preconditions hold along the construction for all
    // 1 <= n <= 3, 1 <= k <= 4
    for n in 1..=3u32 {
        for k in 1..=4usize {
            hierarchy_member(n, k)
                .unwrap_or_else(|e| panic!("member (n={n}, k={k}) failed: {e}"));
            lax_chain(n, k).unwrap_or_else(|e| panic!("chain (n={n}, k={k}) failed: {e}"));
        }
    }
}

#[test]
fn lax_identities_hold_across_the_grid() {
    for n in 1..=2u32 {
        for k in 1..=3usize {
            let member = hierarchy_member(n, k).unwrap();
            let chain = lax_chain(n, k).unwrap();
            let rep = verify_compatibility(&chain, &member).unwrap();
            rep.ensure_exact()
                .unwrap_or_else(|e| panic!("(n={n}, k={k}): {e}"));
            verify_convolutions(&chain).unwrap().ensure_exact().unwrap();
        }
    }
}

#[test]
fn chain_and_composition_build_the_same_member() {
    for n in 1..=2u32 {
        for k in 1..=3usize {
            let direct = hierarchy_member(n, k).unwrap();
            let indirect = member_via_chain(&lax_chain(n, k).unwrap()).unwrap();
            assert_eq!(direct.lhs, indirect.lhs, "(n={n}, k={k})");
            assert_eq!(direct.rhs, indirect.rhs);
        }
    }
}

#[test]
fn member_equation_order_is_2n() {
    for (n, k) in [(1u32, 2usize), (2, 2), (3, 1)] {
        let m = hierarchy_member(n, k).unwrap();
        for j in 0..k {
            assert_eq!(m.lhs[j].max_u_order(), Some(2 * n as u16));
        }
    }
}

#[test]
fn latex_printer_renders_the_scalar_equation() {
    let m = hierarchy_member(1, 1).unwrap();
    let text = m.residual_form()[0].to_latex();
    assert!(text.contains("u_{1}"), "{text}");
    assert!(text.contains("u_{1}^{(2)}"), "{text}");
}
