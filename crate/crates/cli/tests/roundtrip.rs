use proptest::prelude::*;
use qmoyal_cli::{parse_operator_expr, parse_symbol_expr};
use qmoyal_core::operator::normal_order;
use qmoyal_core::star::star;
use qmoyal_core::{
    exp, Coefficient, NormalForm, OrderingScheme, QContext, Scalar, StarProductId, SymbolMonomial, SymbolPoly,
};

fn corpus() -> Vec<String> {
    include_str!("data/roundtrip.txt")
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

#[test]
fn corpus_round_trips() {
    let ctx = QContext::generic(4);
    for line in corpus() {
        let v = parse_symbol_expr(&line, &ctx).unwrap_or_else(|e| panic!("{line}: {e}"));
        assert_eq!(v.render(), line);
    }
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=3, -4i64..=4, any::<bool>()).prop_map(|(n, d, k, shifted)| {
        let ctx = QContext::generic(2);
        let base = Scalar::ratio(n, d).mul(&ctx.q_power(&exp(k, 2)).unwrap());
        if shifted {
            // (c q^k) / (1 + q) gives a compound denominator
            base.div(&Scalar::one().add(&ctx.q_pow_int(1))).unwrap()
        } else {
            base
        }
    })
}

fn symbol() -> impl Strategy<Value = SymbolPoly> {
    let term = (-2i64..=4, -2i64..=4, 0u32..=2, scalar())
        .prop_map(|(p, x, k, s)| SymbolPoly::term(SymbolMonomial::new(exp(p, 2), exp(x, 2)), Coefficient::monomial(s, k)));
    prop::collection::vec(term, 0..4).prop_map(|ts| ts.iter().fold(SymbolPoly::zero(), |acc, t| acc.add(t)))
}

fn normal_form(ordering: OrderingScheme) -> impl Strategy<Value = NormalForm> {
    let term = (0u32..=3, 0u32..=3, 0u32..=2, scalar()).prop_map(move |(a, b, k, s)| {
        NormalForm::term(ordering, (a, b), Coefficient::monomial(s, k))
    });
    prop::collection::vec(term, 0..4).prop_map(move |ts| ts.iter().fold(NormalForm::zero(ordering), |acc, t| acc.add(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symbols_round_trip(f in symbol()) {
        let ctx = QContext::generic(2);
        let text = f.render();
        prop_assert_eq!(parse_symbol_expr(&text, &ctx).unwrap(), f, "{}", text);
    }

    #[test]
    fn star_results_round_trip(a in 0i64..=3, b in 0i64..=3, c in 0i64..=3, d in 0i64..=3) {
        let ctx = QContext::generic(2);
        for id in [StarProductId::QStandard, StarProductId::QAnti, StarProductId::QWeylGF] {
            let r = star(id, &SymbolPoly::px(a, b), &SymbolPoly::px(c, d), &ctx).unwrap();
            prop_assert_eq!(parse_symbol_expr(&r.render(), &ctx).unwrap(), r);
        }
    }

    #[test]
    fn normal_forms_round_trip(nf in normal_form(OrderingScheme::Standard), anti in normal_form(OrderingScheme::Antistandard)) {
        let ctx = QContext::generic(2);
        for n in [nf, anti] {
            let text = n.render();
            let parsed = parse_operator_expr(&text, &ctx).unwrap();
            prop_assert_eq!(normal_order(&parsed, n.ordering(), &ctx), n, "{}", text);
        }
    }
}
