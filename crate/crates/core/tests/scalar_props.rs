//! Field axioms and conjugation laws for the exact scalar layer, checked on
//! randomized inputs, with float64 evaluation as the independent oracle.

use cpspin::scalar::{Conjugate, GaussianRational, RadicalScalar};
use cpspin::Rational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=9, -9i64..=9, 1i64..=9).prop_map(|(an, ad, bn, bd)| {
        GaussianRational::new(
            Rational::new(an.into(), ad.into()),
            Rational::new(bn.into(), bd.into()),
        )
    })
}

fn arb_radical() -> impl Strategy<Value = RadicalScalar> {
    proptest::collection::vec(
        (prop_oneof![Just(1u64), Just(2), Just(3), Just(5), Just(6)], arb_gaussian()),
        0..3,
    )
    .prop_map(|terms| {
        terms.into_iter().fold(RadicalScalar::zero(), |acc, (d, c)| {
            acc + RadicalScalar::from_gaussian(c) * RadicalScalar::sqrt_integer(d).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn mul_is_associative(a in arb_radical(), b in arb_radical(), c in arb_radical()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn mul_distributes_over_add(a in arb_radical(), b in arb_radical(), c in arb_radical()) {
        let lhs = &a * &(b.clone() + c.clone());
        let rhs = (&a * &b) + (&a * &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nonzero_elements_invert(a in arb_radical()) {
        prop_assume!(!a.is_zero());
        let inv = a.try_inverse().unwrap();
        prop_assert!((&a * &inv).is_one());
    }

    #[test]
    fn conjugation_is_an_involution(a in arb_radical()) {
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn conjugation_is_multiplicative(a in arb_radical(), b in arb_radical()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
    }

    #[test]
    fn float_evaluation_is_a_homomorphism(a in arb_radical(), b in arb_radical()) {
        prop_assume!(a.height() <= 1e3 && b.height() <= 1e3);
        let exact = (&a * &b).eval_c64();
        let float = a.eval_c64() * b.eval_c64();
        let scale = exact.norm().max(float.norm()).max(1.0);
        prop_assert!((exact - float).norm() <= 1e-12 * scale,
            "exact {exact} vs float {float}");
        let exact_sum = (a.clone() + b.clone()).eval_c64();
        let float_sum = a.eval_c64() + b.eval_c64();
        let scale = exact_sum.norm().max(float_sum.norm()).max(1.0);
        prop_assert!((exact_sum - float_sum).norm() <= 1e-12 * scale);
    }
}
