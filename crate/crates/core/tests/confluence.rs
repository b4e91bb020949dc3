use proptest::prelude::*;
use qmoyal_core::operator::{normal_order, normal_order_closed_form, normal_order_with};
use qmoyal_core::{Letter, OperatorExpr, OperatorWord, OrderingScheme, QContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn word() -> impl Strategy<Value = OperatorWord> {
    prop::collection::vec(prop::bool::ANY, 0..9).prop_map(|bits| {
        OperatorWord::new(bits.into_iter().map(|b| (if b { Letter::P } else { Letter::X }, 1)))
    })
}

proptest! {
    #[test]
    fn rewrite_order_does_not_matter(w in word(), seed in any::<u64>()) {
        let c = QContext::generic(2);
        let expr = OperatorExpr::word(w);
        for ordering in [OrderingScheme::Standard, OrderingScheme::Antistandard] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = normal_order_with(&expr, ordering, &c, &mut |n| rng.gen_range(0..n));
            prop_assert_eq!(a, normal_order(&expr, ordering, &c));
        }
    }
}

#[test]
fn closed_form_agrees_with_rewriting() {
    let c = QContext::generic(2);
    for b in 0..6 {
        for d in 0..6 {
            let w = OperatorWord::new([(Letter::P, b), (Letter::X, d)]);
            let nf = normal_order(&OperatorExpr::word(w), OrderingScheme::Standard, &c);
            assert_eq!(nf, normal_order_closed_form(b, d, &c), "P^{b} X^{d}");
        }
    }
}
