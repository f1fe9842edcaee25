mod common;

use common::*;
use noether::algebra::{Monomial, Rational};
use noether::diffops::DiffOp;
use proptest::prelude::*;

fn poly3() -> impl Strategy<Value = P> {
    polynomial(3, 3, 5)
}

fn constant_op() -> impl Strategy<Value = DiffOp<Rational>> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 3), -3i64..=3), 1..=4).prop_map(|terms| {
        DiffOp::from_scalars(terms.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (Monomial::from_exponents(&e), q(c))))
    })
}

fn point3() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-5i64..=5, 1i64..=3), 3).prop_map(|v| v.into_iter().map(|(a, b)| q(a) / q(b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, P::zero());
        prop_assert_eq!(&a * &P::one(), a.clone());
    }

    #[test]
    fn print_parse_round_trip(a in poly3()) {
        let r = ring(&["x1", "x2", "x3"]);
        let text = r.print(&a);
        prop_assert_eq!(r.parse(&text).unwrap(), a);
    }

    #[test]
    fn partial_derivatives_commute(a in poly3(), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(a.derivative(i, 1).derivative(j, 1), a.derivative(j, 1).derivative(i, 1));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly3(), b in poly3(), p in point3()) {
        prop_assert_eq!((&a * &b).evaluate(&p), a.evaluate(&p) * b.evaluate(&p));
        prop_assert_eq!((&a + &b).evaluate(&p), a.evaluate(&p) + b.evaluate(&p));
    }

    #[test]
    fn leibniz_rule(a in poly3(), b in poly3(), i in 0usize..3) {
        let d = DiffOp::<Rational>::partial(Monomial::var(i));
        let lhs = d.apply(&(&a * &b));
        let rhs = &(&d.apply(&a) * &b) + &(&a * &d.apply(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_action_is_adjoint_to_multiplication(op in constant_op(), f in poly3(), v in 0usize..3) {
        // <x_v · A, f> = <A, x_v f> at the origin
        let xf = &P::var(v) * &f;
        prop_assert_eq!(op.right_action(v).unwrap().pair_at_origin(&f), op.pair_at_origin(&xf));
    }

    #[test]
    fn operator_print_parse_round_trip(op in constant_op(), c in poly3()) {
        let r = ring(&["x1", "x2", "x3"]);
        let a = op.scale_by(&c);
        let back = DiffOp::parse(&r, &a.display(&r)).unwrap();
        prop_assert_eq!(back, a);
    }
}
