use proptest::prelude::*;
use qmoyal_core::operator::{multiply, normal_order, q_commutator, LabeledOperator};
use qmoyal_core::star::{q_moyal_bracket, star};
use qmoyal_core::symbol::{quantize, symbol_of};
use qmoyal_core::{Coefficient, OrderingScheme, QContext, Scalar, StarProductId, SymbolPoly};

fn ctx() -> QContext {
    QContext::generic(2)
}

fn pairs() -> [(StarProductId, OrderingScheme); 2] {
    [
        (StarProductId::QStandard, OrderingScheme::Standard),
        (StarProductId::QAnti, OrderingScheme::Antistandard),
    ]
}

fn product_oracle(ordering: OrderingScheme, f: &SymbolPoly, g: &SymbolPoly, c: &QContext) -> SymbolPoly {
    let a = quantize(ordering, f).unwrap();
    let b = quantize(ordering, g).unwrap();
    symbol_of(&multiply(&a, &b, c))
}

#[test]
fn star_matches_operator_product_on_grid() {
    let c = ctx();
    for (id, ordering) in pairs() {
        for m in 0..4 {
            for n in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let (f, g) = (SymbolPoly::px(m, n), SymbolPoly::px(k, l));
                        assert_eq!(
                            star(id, &f, &g, &c).unwrap(),
                            product_oracle(ordering, &f, &g, &c),
                            "{id} p^{m}x^{n} * p^{k}x^{l}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn moyal_matches_operator_commutator_on_grid() {
    let c = ctx();
    for (id, ordering) in pairs() {
        for m in 0..4i64 {
            for n in 0..4i64 {
                for k in 0..4i64 {
                    for l in 0..4i64 {
                        let (f, g) = (SymbolPoly::px(m, n), SymbolPoly::px(k, l));
                        let (lf, lg) = match ordering {
                            OrderingScheme::Standard => (
                                LabeledOperator::basis(ordering, n as u32, m as u32),
                                LabeledOperator::basis(ordering, l as u32, k as u32),
                            ),
                            OrderingScheme::Antistandard => (
                                LabeledOperator::basis(ordering, m as u32, n as u32),
                                LabeledOperator::basis(ordering, k as u32, l as u32),
                            ),
                        };
                        let oracle = symbol_of(&q_commutator(&lf, &lg, ordering, &c).divide_exact_h().unwrap());
                        assert_eq!(q_moyal_bracket(id, &f, &g, &c).unwrap(), oracle, "{id}");
                    }
                }
            }
        }
    }
}

#[test]
fn normal_order_of_symbol_product_round_trips() {
    let c = ctx();
    let f = SymbolPoly::px(2, 1).add(&SymbolPoly::px(0, 3).scale_scalar(&Scalar::from_int(-2)));
    for (_, ordering) in pairs() {
        let nf = quantize(ordering, &f).unwrap();
        assert_eq!(symbol_of(&normal_order(&nf.to_expr(), ordering, &c)), f);
    }
}

fn small_poly() -> impl Strategy<Value = SymbolPoly> {
    prop::collection::vec((0i64..4, 0i64..4, -3i64..4, 0u32..2), 1..4).prop_map(|terms| {
        let mut f = SymbolPoly::zero();
        for (a, b, c, h) in terms {
            let coeff = Coefficient::monomial(Scalar::from_int(c), h);
            f.add_assign(&SymbolPoly::px(a, b).scale(&coeff));
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homomorphism_on_polynomials(f in small_poly(), g in small_poly()) {
        let c = ctx();
        for (id, ordering) in pairs() {
            prop_assert_eq!(star(id, &f, &g, &c).unwrap(), product_oracle(ordering, &f, &g, &c));
        }
    }

    #[test]
    fn q_products_are_associative(f in small_poly(), g in small_poly(), k in small_poly()) {
        let c = ctx();
        for (id, _) in pairs() {
            let l = star(id, &star(id, &f, &g, &c).unwrap(), &k, &c).unwrap();
            let r = star(id, &f, &star(id, &g, &k, &c).unwrap(), &c).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn hbar_weyl_is_associative(f in small_poly(), g in small_poly(), k in small_poly()) {
        let c = ctx().at_q1();
        let id = StarProductId::HbarWeyl;
        let l = star(id, &star(id, &f, &g, &c).unwrap(), &k, &c).unwrap();
        let r = star(id, &f, &star(id, &g, &k, &c).unwrap(), &c).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn q_one_reduction(a in 0i64..5, b in 0i64..5, cc in 0i64..5, d in 0i64..5) {
        let c = ctx();
        let (f, g) = (SymbolPoly::px(a, b), SymbolPoly::px(cc, d));
        for id in [StarProductId::QStandard, StarProductId::QAnti, StarProductId::QWeylGF] {
            let lhs = star(id, &f, &g, &c).unwrap().eval_q1().unwrap();
            prop_assert_eq!(lhs, star(id.q1_counterpart(), &f, &g, &c.at_q1()).unwrap());
        }
    }
}
