//! The Lenard-type recursion operators `L+` and `L-` relative to the
//! canonical vector `u = (u_1, ..., u_k)`:
//!
//! ```text
//! L+ v = i D v - i (D⁻¹{u,v}) u - 2i (D⁻¹<u,v>) u
//! L- v = i D v + i (D⁻¹[u,v]) u
//! ```
//!
//! Both require their bracket arguments to lie in `Im(D)`; the checks run on
//! every application and failures identify the offending bracket entry.

use super::HierarchyError;
use crate::diffring::{antisym_bracket, inner, sym_bracket, MatDiffPoly, VecDiffPoly};

fn antiderivative_mat(
    m: &MatDiffPoly,
    operator: &'static str,
    bracket: &str,
) -> Result<MatDiffPoly, HierarchyError> {
    m.try_map(|_, _, p| p.antiderivative())
        .map_err(|e| match &e {
            crate::diffring::RingError::NotExact(_) => locate_mat(m, operator, bracket, e),
            _ => HierarchyError::Ring(e),
        })
}

// try_map aborts on the first failing entry; rediscover its index for the
// error message.
fn locate_mat(
    m: &MatDiffPoly,
    operator: &'static str,
    bracket: &str,
    fallback: crate::diffring::RingError,
) -> HierarchyError {
    for i in 0..m.size() {
        for j in 0..m.size() {
            if let Err(e) = m.at(i, j).antiderivative() {
                return HierarchyError::NotExact {
                    operator,
                    location: format!("{bracket} entry ({}, {})", i + 1, j + 1),
                    source: e,
                };
            }
        }
    }
    HierarchyError::Ring(fallback)
}

/// `L+ v = i Dv - i (D⁻¹{u,v}) u - 2i (D⁻¹<u,v>) u`.
pub fn lenard_plus(v: &VecDiffPoly) -> Result<VecDiffPoly, HierarchyError> {
    let k = v.len();
    let u = VecDiffPoly::generators(k);

    let sym = sym_bracket(&u, v)?;
    let sym_anti = antiderivative_mat(&sym, "L+", "{u,v}")?;

    let ip = inner(&u, v)?;
    let ip_anti = ip
        .antiderivative()
        .map_err(|e| HierarchyError::NotExact {
            operator: "L+",
            location: "<u,v>".to_string(),
            source: e,
        })?;

    let dv = v.total_derivative().times_i();
    let term_sym = sym_anti.mul_vec(&u).times_i();
    let term_inner = u.scale(&ip_anti).times_i().map(|p| {
        let two = crate::diffring::DiffPoly::int(2);
        &two * p
    });
    Ok(dv - &term_sym - &term_inner)
}

/// `L- v = i Dv + i (D⁻¹[u,v]) u`.
pub fn lenard_minus(v: &VecDiffPoly) -> Result<VecDiffPoly, HierarchyError> {
    let k = v.len();
    let u = VecDiffPoly::generators(k);

    let anti = antisym_bracket(&u, v)?;
    let anti_int = antiderivative_mat(&anti, "L-", "[u,v]")?;

    let dv = v.total_derivative().times_i();
    Ok(dv + &anti_int.mul_vec(&u).times_i())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::DiffPoly;

    #[test]
    fn minus_on_u_is_i_du() {
        // [u,u] = 0, so L- u = i Du
        for k in 1..=3 {
            let u = VecDiffPoly::generators(k);
            let got = lenard_minus(&u).unwrap();
            let expected = u.total_derivative().times_i();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn minus_is_i_d_for_scalar_case() {
        // the 1×1 antisymmetric bracket vanishes for any v
        let v = VecDiffPoly::new(vec![
            DiffPoly::u(1) * DiffPoly::u_deriv(1, 2) + &DiffPoly::u_deriv(1, 1),
        ]);
        let got = lenard_minus(&v).unwrap();
        assert_eq!(got, v.total_derivative().times_i());
    }

    #[test]
    fn plus_applied_to_i_du_gives_scalar_pii_lhs() {
        // k=1, v = L- u = i Du: L+ v = D²u - 2u³... with overall sign:
        // L+ (i Du) = -D²u + 2u³
        let u = VecDiffPoly::generators(1);
        let v = lenard_minus(&u).unwrap();
        let got = lenard_plus(&v).unwrap();
        let expected = DiffPoly::int(2) * DiffPoly::u(1) * DiffPoly::u(1) * DiffPoly::u(1)
            - &DiffPoly::u_deriv(1, 2);
        assert_eq!(got[0], expected);
    }

    #[test]
    fn plus_rejects_u_directly() {
        // <u,u> = Σ u_j² is not a total derivative
        let u = VecDiffPoly::generators(2);
        match lenard_plus(&u) {
            Err(HierarchyError::NotExact { operator, .. }) => assert_eq!(operator, "L+"),
            other => panic!("expected NotExact, got {other:?}"),
        }
    }

    #[test]
    fn plus_is_linear_in_v() {
        let zero = VecDiffPoly::zero(3);
        assert!(lenard_plus(&zero).unwrap().is_zero());
        assert!(lenard_minus(&zero).unwrap().is_zero());
    }

    #[test]
    fn minus_rejects_rotation_of_u() {
        // v = (u2, -u1): [u,v] entries are ±(u1² + u2²), not exact
        let v = VecDiffPoly::new(vec![DiffPoly::u(2), -DiffPoly::u(1)]);
        match lenard_minus(&v) {
            Err(HierarchyError::NotExact {
                operator, location, ..
            }) => {
                assert_eq!(operator, "L-");
                assert!(location.contains("[u,v]"), "location: {location}");
            }
            other => panic!("expected NotExact, got {other:?}"),
        }
    }
}
