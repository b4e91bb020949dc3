use proptest::prelude::*;
use qmoyal_core::qcalc::factorial;
use qmoyal_core::ring::Poly;
use qmoyal_core::{exp, exp_int, QContext, RatFunc, Rational, Scalar};

fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (
        prop::collection::vec(-4i64..5, 1..4),
        prop::collection::vec(-4i64..5, 1..3),
        1u32..3,
        -2i64..3,
    )
        .prop_map(|(n, d, root, shift)| {
            let num = Poly::from_coeffs(n.into_iter().map(Rational::from_integer_i64).collect());
            let mut den = Poly::from_coeffs(d.into_iter().map(Rational::from_integer_i64).collect());
            if den.is_zero() {
                den = Poly::one();
            }
            RatFunc::new(root, num, den).mul(&RatFunc::q_power(shift, root))
        })
}

trait FromI64 {
    fn from_integer_i64(n: i64) -> Self;
}

impl FromI64 for Rational {
    fn from_integer_i64(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
}

proptest! {
    #[test]
    fn field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn q_pascal(n in 0i64..8, r in 1i64..8) {
        let c = QContext::generic(1);
        let lhs = c.q_binomial(n + 1, r);
        let rhs = c.q_binomial(n, r).add(&c.q_pow_int(n + 1 - r).mul(&c.q_binomial(n, r - 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_factorial_at_one(n in 0u32..10) {
        let c = QContext::generic(1);
        prop_assert_eq!(c.q_factorial(n).eval_q1().unwrap(), factorial(n));
    }

    #[test]
    fn q_integer_addition(a in -8i64..9, b in -8i64..9, d in 1i64..4) {
        let c = QContext::generic(6);
        let (a, b) = (exp(a, d), exp(b, 2));
        let lhs = c.q_integer(&(a + b)).unwrap();
        let rhs = c.q_integer(&a).unwrap().add(&c.q_power(&a).unwrap().mul(&c.q_integer(&b).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_integer_at_one_is_identity(n in -10i64..10) {
        let c = QContext::generic(2);
        let v = c.q_integer(&exp_int(n)).unwrap().eval_q1().unwrap();
        prop_assert_eq!(v, Scalar::from_int(n));
    }
}
