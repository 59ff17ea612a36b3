//! Randomized laws of the differential ring: the derivation property, the
//! left-inverse law of the formal antiderivative, the Euler-operator kernel,
//! canonical-form idempotence and bilinearity of the bracket forms.

use hoairy_core::diffring::{
    antisym_bracket, inner, sym_bracket, DiffPoly, GaussRat, Generator, VecDiffPoly,
};
use proptest::prelude::*;

/// Generators over two components with derivative orders up to 2; `with_x`
/// additionally allows thresholds.
fn arb_generator(with_x: bool) -> impl Strategy<Value = Generator> {
    let mut options = vec![
        Generator::u(1),
        Generator::u(2),
        Generator::u_deriv(1, 1),
        Generator::u_deriv(2, 1),
        Generator::u_deriv(1, 2),
        Generator::u_deriv(2, 3),
        Generator::u_deriv(1, 4),
        Generator::T,
    ];
    if with_x {
        options.push(Generator::X { comp: 1 });
        options.push(Generator::X { comp: 2 });
    }
    proptest::sample::select(options)
}

fn arb_coeff() -> impl Strategy<Value = GaussRat> {
    (-9i64..=9, 1i64..=4, -9i64..=9, 1i64..=4)
        .prop_map(|(rn, rd, in_, id)| GaussRat::ratio(rn, rd) + GaussRat::ratio_i(in_, id))
}

fn arb_poly(with_x: bool) -> impl Strategy<Value = DiffPoly> {
    proptest::collection::vec(
        (
            proptest::collection::vec(arb_generator(with_x), 0..4),
            arb_coeff(),
        ),
        0..5,
    )
    .prop_map(|terms| {
        let mut p = DiffPoly::zero();
        for (gens, c) in terms {
            let mono = gens
                .into_iter()
                .fold(DiffPoly::constant(c), |acc, g| acc.times_gen(g));
            p += &mono;
        }
        p
    })
}

fn arb_vec2(with_x: bool) -> impl Strategy<Value = VecDiffPoly> {
    (arb_poly(with_x), arb_poly(with_x)).prop_map(|(a, b)| VecDiffPoly::new(vec![a, b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn derivation_law(p in arb_poly(true), q in arb_poly(true)) {
        let lhs = (&p * &q).total_derivative();
        let rhs = p.total_derivative() * q.clone() + &(p.clone() * q.total_derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_inverse_law(p in arb_poly(false)) {
        // D⁻¹(D p) = p - (constant term of p); thresholds excluded because
        // x-monomials with a single power of t differentiate onto the
        // rejected threshold-only slice.
        let dp = p.total_derivative();
        let q = dp.antiderivative().expect("image of D is integrable");
        let expected = p.clone() - &DiffPoly::constant(p.constant_term());
        prop_assert_eq!(q, expected);
    }

    #[test]
    fn euler_operator_kills_derivatives(p in arb_poly(true)) {
        let dp = p.total_derivative();
        for comp in [1u8, 2] {
            prop_assert!(dp.euler_operator(comp).is_zero());
        }
    }

    #[test]
    fn canonical_form_idempotence(p in arb_poly(true)) {
        // rebuilding from the term list reproduces the canonical form, and
        // serialization round-trips
        let mut rebuilt = DiffPoly::zero();
        for (m, c) in p.terms() {
            rebuilt.add_term(m.clone(), c.clone());
        }
        prop_assert_eq!(&rebuilt, &p);
        let parsed: DiffPoly = p.to_string().parse().expect("canonical text parses");
        prop_assert_eq!(&parsed, &p);
        let json = DiffPoly::from_json_str(&p.to_json_string()).expect("json parses");
        prop_assert_eq!(&json, &p);
    }

    #[test]
    fn brackets_are_symmetric_and_bilinear(
        v in arb_vec2(true),
        w in arb_vec2(true),
        a in -4i64..=4,
    ) {
        let s = sym_bracket(&v, &w).unwrap();
        prop_assert_eq!(&s, &s.transpose());
        let t = antisym_bracket(&v, &w).unwrap();
        prop_assert_eq!(&t.transpose(), &(-t.clone()));
        prop_assert!(t.at(0, 0).is_zero() && t.at(1, 1).is_zero());

        // bilinearity in the first slot over exact scalars
        let av = v.map(|p| DiffPoly::int(a) * p.clone());
        let lhs = sym_bracket(&av, &w).unwrap();
        let rhs = s.map(|p| DiffPoly::int(a) * p.clone());
        prop_assert_eq!(lhs, rhs);

        let lhs_inner = inner(&av, &w).unwrap();
        let rhs_inner = DiffPoly::int(a) * inner(&v, &w).unwrap();
        prop_assert_eq!(lhs_inner, rhs_inner);
    }

    #[test]
    fn second_derivative_of_product_is_symmetric(p in arb_poly(true)) {
        // D² commutes with itself on products built two ways
        let d2 = p.total_derivative().total_derivative();
        prop_assert_eq!(d2.clone(), p.derivative_n(2));
    }
}
