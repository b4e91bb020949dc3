use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::formulas::{render_table, weyl_symbol, Indices, StandardReading, StructureConstantFormula};
use super::{grid4, monomials_up_to, sweep, ConformanceReport, Expectation, Outcome, SuiteResult};
use crate::applications;
use crate::error::{Error, Result};
use crate::operator::{
    multiply, normal_order, normal_order_closed_form, normal_order_with, q_commutator, q_coeff,
    structure_constants_oracle, to_weyl_basis, weyl_symmetrize, LabeledOperator, Letter, OperatorExpr,
    OperatorWord, OrderingScheme,
};
use crate::qcalc::{exp, exp_int, QContext};
use crate::scalar::{Coefficient, Scalar};
use crate::star::{alpha, jacobiator, q_moyal_bracket, q_poisson_bracket, star, StarProductId};
use crate::symbol::{quantize, symbol_of, SymbolMonomial, SymbolPoly};

const CONFLUENCE_SEED: u64 = 0x5eed_0001;
const CONFLUENCE_WORDS: usize = 200;

/// Same context with `D` raised to a multiple of `k`.
pub fn with_root_multiple(ctx: &QContext, k: u32) -> QContext {
    QContext { root_denominator: ctx.root_denominator.lcm(&k), ..*ctx }
}

fn base(check: &str, expectation: Expectation, ctx: &QContext) -> ConformanceReport {
    ConformanceReport::new(check, expectation).param("root_denominator", ctx.root_denominator)
}

fn word_expr(letters: &str, c: Coefficient) -> OperatorExpr {
    OperatorExpr::term(OperatorWord::from_letters(letters), c)
}

fn render_result<T>(r: Result<T>, f: impl Fn(&T) -> String) -> String {
    match r {
        Ok(v) => f(&v),
        Err(e) => format!("error: {e}"),
    }
}

fn idx_label((a, b, c, d): Indices) -> String {
    format!("({a},{b},{c},{d})")
}

/// Rewrite confluence on random words and the `P^b X^c` closed form.
pub fn verify_oracle_integrity(ctx: &QContext) -> Vec<ConformanceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(CONFLUENCE_SEED);
    let words: Vec<(String, u64)> = (0..CONFLUENCE_WORDS)
        .map(|_| {
            let len = rng.gen_range(1..=8);
            let w: String = (0..len).map(|_| if rng.gen_bool(0.5) { 'P' } else { 'X' }).collect();
            (w, rng.gen())
        })
        .collect();
    let confluence = sweep(&words, |(w, seed)| {
        let expr = OperatorExpr::word(OperatorWord::from_letters(w));
        let mut expected = Vec::new();
        let mut actual = Vec::new();
        for ordering in [OrderingScheme::Standard, OrderingScheme::Antistandard] {
            let mut r = ChaCha8Rng::seed_from_u64(*seed);
            expected.push(normal_order(&expr, ordering, ctx).render());
            actual.push(normal_order_with(&expr, ordering, ctx, &mut |n| r.gen_range(0..n)).render());
        }
        Outcome::new(w.clone(), expected.join(" | "), actual.join(" | "))
    });
    let pairs: Vec<(u32, u32)> = (0..=6).flat_map(|b| (0..=6).map(move |c| (b, c))).collect();
    let closed = sweep(&pairs, |&(b, c)| {
        let w = OperatorWord::new([(Letter::P, b), (Letter::X, c)]);
        let nf = normal_order(&OperatorExpr::word(w), OrderingScheme::Standard, ctx);
        Outcome::new(format!("P^{b} X^{c}"), nf.render(), normal_order_closed_form(b, c, ctx).render())
    });
    vec![
        base("oracle-confluence", Expectation::Hard, ctx)
            .param("seed", CONFLUENCE_SEED)
            .param("words", CONFLUENCE_WORDS)
            .param("max_length", 8)
            .with_cases(confluence),
        base("oracle-closed-form", Expectation::Hard, ctx).param("max_exponent", 6).with_cases(closed),
    ]
}

/// `[P, X]_q = h` and `[P^2, X^2]_q = h [2] (PX + q^2 XP)`.
pub fn verify_base_relation(ctx: &QContext) -> ConformanceReport {
    let ord = OrderingScheme::Standard;
    let two = Coefficient::constant(ctx.q_pow_int(0).add(&ctx.q_pow_int(1)));
    let p = LabeledOperator::from_word(OperatorWord::letter(Letter::P, 1));
    let x = LabeledOperator::from_word(OperatorWord::letter(Letter::X, 1));
    let base_rel = q_commutator(&p, &x, ord, ctx);
    let p2 = LabeledOperator::from_word(OperatorWord::letter(Letter::P, 2));
    let x2 = LabeledOperator::from_word(OperatorWord::letter(Letter::X, 2));
    let p2_x2 = q_commutator(&p2, &x2, ord, ctx);
    let rhs = word_expr("PX", Coefficient::one()).add(&word_expr("XP", q_coeff(ctx, 2)));
    let rhs = normal_order(&rhs.scale(&two.mul_h(1)), ord, ctx);
    base("base-relation", Expectation::Hard, ctx).with_cases([
        Outcome::new("[P, X]_q", "h", base_rel.render()),
        Outcome::new("[P^2, X^2]_q", rhs.render(), p2_x2.render()),
    ])
}

/// The q-Weyl obstruction: two incompatible candidates for `T_{1,1}`.
pub fn obstruction_report(ctx: &QContext) -> Vec<ConformanceReport> {
    let ord = OrderingScheme::Standard;
    let nf = |e: &OperatorExpr| normal_order(e, ord, ctx);
    let two = Coefficient::constant(ctx.q_pow_int(0).add(&ctx.q_pow_int(1)));
    let h = Coefficient::h_power(1);
    let one = Coefficient::one();

    let lhs1 = nf(&word_expr("PPXX", one.clone()).sub(&word_expr("XXPP", q_coeff(ctx, 4))));
    let t11_a = word_expr("PX", one.clone()).add(&word_expr("XP", q_coeff(ctx, 2)));
    let rhs1 = nf(&t11_a.scale(&two.mul(&h)));

    let lhs2 = nf(&word_expr("PPXXX", one.clone()).sub(&word_expr("XXXPP", q_coeff(ctx, 6))));
    let t12 = word_expr("PXX", one.clone())
        .add(&word_expr("XXP", q_coeff(ctx, 4)))
        .add(&word_expr("XPX", q_coeff(ctx, 2)));
    let rhs2_restored = nf(&t12.scale(&two.mul(&h)));
    let rhs2_printed = nf(&t12.scale(&two));

    let p = LabeledOperator::from_word(OperatorWord::letter(Letter::P, 1));
    let cand = LabeledOperator::new(t12.clone(), 2, 1);
    let lhs3 = q_commutator(&p, &cand, ord, ctx);
    let t11_b = word_expr("PX", one.clone()).add(&word_expr("XP", q_coeff(ctx, 3)));
    let three = Coefficient::constant(ctx.q_integer(&exp_int(3)).expect("integer"));
    let rhs3 = nf(&t11_b.scale(&three.mul(&h)));

    let (ca, cb) = (nf(&t11_a), nf(&t11_b));
    let verdict = |eq: bool| if eq { "equal" } else { "distinct" };
    let at_q1 = match (ca.eval_q1(), cb.eval_q1()) {
        (Ok(a), Ok(b)) => verdict(a == b).to_string(),
        (Err(e), _) | (_, Err(e)) => format!("error: {e}"),
    };
    let main = base("obstruction", Expectation::Hard, ctx)
        .param("t11_from_p2x2", ca.render())
        .param("t11_from_commutator", cb.render())
        .with_cases([
            Outcome::new("P^2X^2 - q^4 X^2P^2", rhs1.render(), lhs1.render()),
            Outcome::new("P^2X^3 - q^6 X^3P^2 (h restored)", rhs2_restored.render(), lhs2.render()),
            Outcome::new("[P, PX^2 + q^4 X^2P + q^2 XPX]_q", rhs3.render(), lhs3.render()),
            Outcome::new("T11 candidates at generic q", "distinct", verdict(ca == cb)),
            Outcome::new("T11 candidates at q = 1", "equal", at_q1),
        ]);
    let printed = base("obstruction-p2x3-as-printed", Expectation::Recorded, ctx)
        .correction("P^2X^3 - q^6 X^3P^2 = h [2] (PX^2 + q^4 X^2P + q^2 XPX)")
        .with_cases([Outcome::new("P^2X^3 - q^6 X^3P^2", rhs2_printed.render(), lhs2.render())]);
    vec![main, printed]
}

fn formula_sweep(
    check: &str,
    expectation: Expectation,
    ordering: OrderingScheme,
    formula: StructureConstantFormula,
    grid: u32,
    ctx: &QContext,
) -> ConformanceReport {
    let cases = grid4(grid);
    let outcomes = sweep(&cases, |&idx| {
        let oracle = structure_constants_oracle(ordering, idx, ctx);
        let closed = formula.evaluate(idx, ctx);
        Outcome::new(idx_label(idx), render_table("r", &oracle), render_table("r", &closed))
    });
    base(check, expectation, ctx)
        .param("grid", grid)
        .param("ordering", ordering.name())
        .param("formula", formula.name())
        .with_cases(outcomes)
}

/// Standard-ordered q-algebra under one reading of the displayed exponents.
pub fn verify_standard_qw(grid: u32, reading: StandardReading, ctx: &QContext) -> ConformanceReport {
    let (expectation, correction) = match reading {
        StandardReading::Degree => (Expectation::Hard, None),
        StandardReading::Verbatim => (
            Expectation::Recorded,
            Some("exponents (k-r)(m-r)+nl and (n-r)(l-r)+mk: the displayed ones with m and n exchanged"),
        ),
        StandardReading::Transposed => (Expectation::Recorded, None),
    };
    let mut r = formula_sweep(
        &format!("standard-q-{}", reading.name()),
        expectation,
        OrderingScheme::Standard,
        StructureConstantFormula::StandardQ(reading),
        grid,
        ctx,
    );
    if let Some(c) = correction {
        r = r.correction(c);
    }
    if reading == StandardReading::Degree {
        r = r.param(
            "printed_reading",
            "transposed: the displayed q-exponents with m and n exchanged; the verbatim display does not match",
        );
    }
    r
}

pub fn verify_antistandard_qw(grid: u32, ctx: &QContext) -> ConformanceReport {
    formula_sweep("antistandard-q", Expectation::Hard, OrderingScheme::Antistandard, StructureConstantFormula::AntistandardQ, grid, ctx)
}

fn fractional_monomials() -> Vec<SymbolMonomial> {
    let e = [exp(-1, 2), exp(1, 2), exp_int(1)];
    e.iter().flat_map(|&p| e.iter().map(move |&x| SymbolMonomial::new(p, x))).collect()
}

/// No `h^0` term survives a weighted commutator or a q-Moyal numerator.
pub fn verify_h0_cancellation(grid: u32, ctx: &QContext) -> ConformanceReport {
    let cases = grid4(grid);
    let mut outcomes = Vec::new();
    for ordering in [OrderingScheme::Standard, OrderingScheme::Antistandard] {
        outcomes.extend(sweep(&cases, |&(a, b, c, d)| {
            let l = LabeledOperator::basis(ordering, a, b);
            let r = LabeledOperator::basis(ordering, c, d);
            let h0 = q_commutator(&l, &r, ordering, ctx).h0_part();
            Outcome::new(format!("{} {}", ordering.name(), idx_label((a, b, c, d))), "0", h0.render())
        }));
    }
    let wide = QContext { max_h_order: ctx.max_h_order.min(3), ..with_root_multiple(ctx, 8) };
    let ids = [StarProductId::QStandard, StarProductId::QAnti, StarProductId::QWeylGF];
    for id in ids {
        outcomes.extend(sweep(&cases, |&(a, b, c, d)| {
            let (f, g) = (SymbolPoly::px(a as i64, b as i64), SymbolPoly::px(c as i64, d as i64));
            let r = q_moyal_bracket(id, &f, &g, &wide).map(|_| "divisible".to_string());
            Outcome::new(format!("{id} {}", idx_label((a, b, c, d))), "divisible", render_result(r, String::clone))
        }));
        let frac = fractional_monomials();
        let pairs: Vec<_> = frac.iter().flat_map(|f| frac.iter().map(move |g| (*f, *g))).collect();
        outcomes.extend(sweep(&pairs, |(f, g)| {
            let r = q_moyal_bracket(id, &SymbolPoly::monomial(*f), &SymbolPoly::monomial(*g), &wide)
                .map(|_| "divisible".to_string());
            Outcome::new(format!("{id} {} , {}", f.render(), g.render()), "divisible", render_result(r, String::clone))
        }));
    }
    base("h0-cancellation", Expectation::Hard, ctx)
        .param("grid", grid)
        .param("fractional_root_denominator", wide.root_denominator)
        .param("fractional_max_h_order", wide.max_h_order)
        .with_cases(outcomes)
}

/// Weyl-ordered commutator at `q = 1` through symmetrization, divided by h,
/// as a symbol under `T_{m,n} -> p^m x^n`.
pub fn weyl_commutator_symbol(m: u32, n: u32, k: u32, l: u32) -> Result<SymbolPoly> {
    let q1 = QContext::generic(1).at_q1();
    let ta = weyl_symmetrize(m, n, &q1)?;
    let tb = weyl_symmetrize(k, l, &q1)?;
    let comm = multiply(&ta, &tb, &q1).sub(&multiply(&tb, &ta, &q1));
    let mut out = SymbolPoly::zero();
    for ((mm, nn), c) in to_weyl_basis(&comm, &q1)? {
        out.add_term(SymbolMonomial::int(mm as i64, nn as i64), &c);
    }
    out.divide_exact_h()
}

fn weyl_moyal_symbol((m, n, k, l): Indices) -> Result<SymbolPoly> {
    let q1 = QContext::generic(1).at_q1();
    q_moyal_bracket(
        StarProductId::HbarWeyl,
        &SymbolPoly::px(m as i64, n as i64),
        &SymbolPoly::px(k as i64, l as i64),
        &q1,
    )
}

fn weyl_label((m, n, k, l): Indices) -> String {
    format!("[T{m},{n}, T{k},{l}]")
}

/// The undeformed algebras: standard, antistandard and Weyl sectors at `q = 1`.
pub fn verify_ordinary_winf(grid: u32) -> Vec<ConformanceReport> {
    let q1 = QContext::generic(1).at_q1();
    let standard = formula_sweep("standard-q1", Expectation::Hard, OrderingScheme::Standard, StructureConstantFormula::Standard, grid, &q1);
    let antistandard = formula_sweep("antistandard-q1", Expectation::Hard, OrderingScheme::Antistandard, StructureConstantFormula::Antistandard, grid, &q1);
    let cases = grid4(grid);
    let oracles: Vec<(Result<SymbolPoly>, Result<SymbolPoly>)> = {
        use rayon::prelude::*;
        cases
            .par_iter()
            .map(|&(m, n, k, l)| (weyl_commutator_symbol(m, n, k, l), weyl_moyal_symbol((m, n, k, l))))
            .collect()
    };
    let show = |r: &Result<SymbolPoly>| match r {
        Ok(s) => s.render(),
        Err(e) => format!("error: {e}"),
    };
    let agree = cases.iter().zip(&oracles).map(|(&idx, (a, b))| Outcome::new(weyl_label(idx), show(a), show(b)));
    let agreement = ConformanceReport::new("weyl-oracles", Expectation::Hard).param("grid", grid).with_cases(agree);

    let printed = cases.iter().zip(&oracles).map(|(&idx, (_, b))| {
        Outcome::new(weyl_label(idx), show(b), weyl_symbol(StructureConstantFormula::WeylB, idx, &q1).render())
    });
    let corrected_hits = cases
        .iter()
        .zip(&oracles)
        .filter(|(&idx, (_, b))| b.as_ref().ok() == Some(&weyl_symbol(StructureConstantFormula::WeylBCorrected, idx, &q1)))
        .count();
    let b_report = ConformanceReport::new("weyl-printed-b", Expectation::Recorded)
        .param("grid", grid)
        .correction(format!(
            "use (2a+1-c)! c! in place of (2a+1-b)! b! inside the c-sum and multiply by 2^(-2a); \
             this matches the oracle on {corrected_hits}/{} cases",
            cases.len()
        ))
        .with_cases(printed);
    vec![standard, antistandard, agreement, b_report]
}

fn sym(idx: (u32, u32)) -> SymbolPoly {
    SymbolPoly::px(idx.0 as i64, idx.1 as i64)
}

/// q-products against their ħ counterparts, and q-formulas against `q = 1` ones.
pub fn verify_q1_reductions(grid: u32, ctx: &QContext) -> Vec<ConformanceReport> {
    let cases = grid4(grid);
    let q1 = ctx.at_q1();
    let formulas = [
        (StructureConstantFormula::StandardQ(StandardReading::Degree), StructureConstantFormula::Standard),
        (StructureConstantFormula::AntistandardQ, StructureConstantFormula::Antistandard),
    ];
    let mut fo = Vec::new();
    for (qf, f) in formulas {
        fo.extend(sweep(&cases, |&idx| {
            let reduced: Result<std::collections::BTreeMap<u32, Scalar>> = qf
                .evaluate(idx, ctx)
                .into_iter()
                .map(|(r, s)| s.eval_q1().map(|v| (r, v)))
                .filter(|r| r.as_ref().map(|(_, v)| !v.is_zero()).unwrap_or(true))
                .collect();
            let actual = render_result(reduced, |t| render_table("r", t));
            Outcome::new(format!("{} {}", qf.name(), idx_label(idx)), render_table("r", &f.evaluate(idx, &q1)), actual)
        }));
    }
    let wide = with_root_multiple(ctx, 2);
    let mut so = Vec::new();
    for id in [StarProductId::QStandard, StarProductId::QAnti, StarProductId::QWeylGF] {
        so.extend(sweep(&cases, |&(a, b, c, d)| {
            let (f, g) = (sym((a, b)), sym((c, d)));
            let expected = render_result(star(id.q1_counterpart(), &f, &g, &wide.at_q1()), SymbolPoly::render);
            let actual = render_result(star(id, &f, &g, &wide).and_then(|s| s.eval_q1()), SymbolPoly::render);
            Outcome::new(format!("{id} {}", idx_label((a, b, c, d))), expected, actual)
        }));
    }
    vec![
        base("q1-formula-reductions", Expectation::Hard, ctx).param("grid", grid).with_cases(fo),
        base("q1-star-reductions", Expectation::Hard, ctx).param("grid", grid).with_cases(so),
    ]
}

fn labeled(ordering: OrderingScheme, (p, x): (u32, u32)) -> LabeledOperator {
    match ordering {
        OrderingScheme::Standard => LabeledOperator::basis(ordering, x, p),
        OrderingScheme::Antistandard => LabeledOperator::basis(ordering, p, x),
    }
}

/// Star product and q-Moyal bracket against operator product and q-commutator.
pub fn verify_homomorphism(id: StarProductId, grid: u32, ctx: &QContext) -> Result<ConformanceReport> {
    let ordering = id
        .ordering()
        .filter(|_| matches!(id, StarProductId::QStandard | StarProductId::QAnti))
        .ok_or_else(|| Error::InvalidArgument(format!("no operator ordering mirrors {id}")))?;
    let cases = grid4(grid);
    let outcomes: Vec<Vec<Outcome>> = {
        use rayon::prelude::*;
        cases
            .par_iter()
            .map(|&(a, b, c, d)| {
                let (f, g) = (sym((a, b)), sym((c, d)));
                let label = idx_label((a, b, c, d));
                let prod = quantize(ordering, &f)
                    .and_then(|qf| Ok(multiply(&qf, &quantize(ordering, &g)?, ctx)))
                    .map(|nf| symbol_of(&nf));
                let comm = q_commutator(&labeled(ordering, (a, b)), &labeled(ordering, (c, d)), ordering, ctx)
                    .divide_exact_h()
                    .map(|nf| symbol_of(&nf));
                vec![
                    Outcome::new(
                        format!("star {label}"),
                        render_result(prod, SymbolPoly::render),
                        render_result(star(id, &f, &g, ctx), SymbolPoly::render),
                    ),
                    Outcome::new(
                        format!("bracket {label}"),
                        render_result(comm, SymbolPoly::render),
                        render_result(q_moyal_bracket(id, &f, &g, ctx), SymbolPoly::render),
                    ),
                ]
            })
            .collect()
    };
    Ok(base(&format!("homomorphism-{id}"), Expectation::Hard, ctx)
        .param("grid", grid)
        .param("product", id.name())
        .param("ordering", ordering.name())
        .with_cases(outcomes.into_iter().flatten()))
}

/// `q^{nk} f⋆g - q^{ml} g⋆f = 0` for the classical products, and the
/// `q^{α(f,g)} fg` form of the standard one.
pub fn verify_classical_identity(grid: u32, ctx: &QContext) -> Vec<ConformanceReport> {
    let wide = with_root_multiple(ctx, 2);
    let cases = grid4(grid);
    let ids = [StarProductId::ClassicalQStandard, StarProductId::ClassicalQAnti, StarProductId::ClassicalQWeyl];
    let mut outcomes = Vec::new();
    for id in ids {
        outcomes.extend(sweep(&cases, |&(m, n, k, l)| {
            let (f, g) = (sym((m, n)), sym((k, l)));
            let r = star(id, &f, &g, &wide).and_then(|fg| {
                let gf = star(id, &g, &f, &wide)?;
                let w1 = wide.q_pow_int((n * k) as i64);
                let w2 = wide.q_pow_int((m * l) as i64);
                Ok(fg.scale_scalar(&w1).sub(&gf.scale_scalar(&w2)))
            });
            Outcome::new(format!("{id} {}", idx_label((m, n, k, l))), "0", render_result(r, SymbolPoly::render))
        }));
    }
    let claim = sweep(&cases, |&(m, n, k, l)| {
        let (f, g) = (SymbolMonomial::int(m as i64, n as i64), SymbolMonomial::int(k as i64, l as i64));
        let claimed = ctx
            .q_power(&alpha(&f, &g))
            .map(|w| SymbolPoly::monomial(f.mul(&g)).scale_scalar(&w));
        let actual = star(StarProductId::ClassicalQStandard, &SymbolPoly::monomial(f), &SymbolPoly::monomial(g), ctx);
        Outcome::new(idx_label((m, n, k, l)), render_result(claimed, SymbolPoly::render), render_result(actual, SymbolPoly::render))
    });
    vec![
        base("classical-identity", Expectation::Hard, &wide).param("grid", grid).with_cases(outcomes),
        base("classical-alpha-weight", Expectation::Recorded, ctx)
            .param("grid", grid)
            .correction("p^m x^n ⋆ p^k x^l = q^{ml} p^{m+k} x^{n+l}: the weight is (p-degree of f)(x-degree of g)")
            .with_cases(claim),
    ]
}

/// GF star product: `q = 1` reduction (hard) and the generic-q coefficient
/// formula (recorded).
pub fn verify_gf_star(grid: u32, ctx: &QContext) -> Vec<ConformanceReport> {
    let wide = with_root_multiple(ctx, 2);
    let cases = grid4(grid);
    let q1 = sweep(&cases, |&idx| {
        let (m, n, k, l) = idx;
        let gf = q_moyal_bracket(StarProductId::QWeylGF, &sym((m, n)), &sym((k, l)), &wide).and_then(|b| b.eval_q1());
        Outcome::new(
            weyl_label(idx),
            render_result(weyl_moyal_symbol(idx), SymbolPoly::render),
            render_result(gf, SymbolPoly::render),
        )
    });
    let generic = sweep(&cases, |&idx| {
        let (m, n, k, l) = idx;
        let gf = q_moyal_bracket(StarProductId::QWeylGF, &sym((m, n)), &sym((k, l)), &wide);
        Outcome::new(
            weyl_label(idx),
            weyl_symbol(StructureConstantFormula::WeylGf, idx, &wide).render(),
            render_result(gf, SymbolPoly::render),
        )
    });
    vec![
        base("gf-q1-reduction", Expectation::Hard, &wide).param("grid", grid).with_cases(q1),
        base("gf-generic", Expectation::Recorded, &wide).param("grid", grid).with_cases(generic),
    ]
}

/// `(f⋆g)⋆k - f⋆(g⋆k)` over a corpus of triples.
pub fn probe_associativity(
    check: &str,
    id: StarProductId,
    corpus: &[(SymbolPoly, SymbolPoly, SymbolPoly)],
    expectation: Expectation,
    ctx: &QContext,
) -> ConformanceReport {
    let outcomes = sweep(corpus, |(f, g, k)| {
        let r = star(id, f, g, ctx).and_then(|fg| {
            let left = star(id, &fg, k, ctx)?;
            let right = star(id, f, &star(id, g, k, ctx)?, ctx)?;
            Ok(left.sub(&right))
        });
        Outcome::new(
            format!("({}, {}, {})", f.render(), g.render(), k.render()),
            "0",
            render_result(r, SymbolPoly::render),
        )
    });
    base(check, expectation, ctx).param("product", id.name()).with_cases(outcomes)
}

fn monomial_triples(degree: u32) -> Vec<(SymbolPoly, SymbolPoly, SymbolPoly)> {
    let ms = monomials_up_to(degree);
    let mut v = Vec::new();
    for a in &ms {
        for b in &ms {
            for c in &ms {
                v.push((sym(*a), sym(*b), sym(*c)));
            }
        }
    }
    v
}

fn random_poly(rng: &mut ChaCha8Rng) -> SymbolPoly {
    let mut f = SymbolPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = Scalar::from_int(rng.gen_range(-3..=3));
        f.add_assign(&SymbolPoly::px(rng.gen_range(0..=3), rng.gen_range(0..=3)).scale_scalar(&c));
    }
    f
}

pub fn associativity_reports(ctx: &QContext) -> Vec<ConformanceReport> {
    let grid = monomial_triples(3);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let random: Vec<_> = (0..40).map(|_| (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng))).collect();
    let small = monomial_triples(1);
    let half = |p: i64, x: i64| SymbolPoly::monomial(SymbolMonomial::new(exp(p, 2), exp(x, 2)));
    let fractional = vec![
        (half(0, 1), half(2, 0), half(0, 1)),
        (half(2, 0), half(0, 1), half(2, 0)),
        (half(0, -1), half(2, 0), half(0, 2)),
        (half(1, 0), half(0, 2), half(1, 0)),
        (half(2, 1), half(1, 2), half(0, -1)),
    ];
    let wide = QContext { max_h_order: ctx.max_h_order.min(4), ..with_root_multiple(ctx, 4) };
    vec![
        probe_associativity("associativity-q-standard", StarProductId::QStandard, &grid, Expectation::Hard, ctx)
            .param("max_degree", 3),
        probe_associativity("associativity-q-anti", StarProductId::QAnti, &grid, Expectation::Hard, ctx)
            .param("max_degree", 3),
        probe_associativity("associativity-hbar-standard", StarProductId::HbarStandard, &random, Expectation::Hard, &ctx.at_q1())
            .param("seed", 0x5eed_0002u64),
        probe_associativity("associativity-q-weyl-gf", StarProductId::QWeylGF, &small, Expectation::Recorded, &with_root_multiple(ctx, 2))
            .param("max_degree", 1),
        probe_associativity("associativity-q-standard-fractional", StarProductId::QStandard, &fractional, Expectation::Recorded, &wide)
            .param("max_h_order", wide.max_h_order),
        probe_associativity("associativity-q-anti-fractional", StarProductId::QAnti, &fractional, Expectation::Recorded, &wide)
            .param("max_h_order", wide.max_h_order),
    ]
}

/// Bracket `[T_{m,n}, T_{k,l}] / h` read off the q-factorial structure
/// constants, extended bilinearly over symbols `p^m x^n <-> T_{m,n}`.
fn gf_formula_bracket(f: &SymbolPoly, g: &SymbolPoly, ctx: &QContext) -> Result<SymbolPoly> {
    let index = |m: &SymbolMonomial| -> Result<(u32, u32)> {
        if !m.is_integral() || m.p < exp_int(0) || m.x < exp_int(0) {
            return Err(Error::NonQuantizableExponent(m.render()));
        }
        Ok((m.p.to_integer() as u32, m.x.to_integer() as u32))
    };
    let mut out = SymbolPoly::zero();
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            let ((m, n), (k, l)) = (index(mf)?, index(mg)?);
            out.add_assign(&weyl_symbol(StructureConstantFormula::WeylGf, (m, n, k, l), ctx).scale(&cf.mul(cg)));
        }
    }
    Ok(out)
}

/// Cyclic double brackets over monomials of total degree `<= 2`.
pub fn jacobiator_reports(ctx: &QContext) -> Vec<ConformanceReport> {
    let triples = monomial_triples(2);
    let label = |(f, g, k): &(SymbolPoly, SymbolPoly, SymbolPoly)| format!("({}, {}, {})", f.render(), g.render(), k.render());
    let q1 = ctx.at_q1();
    let weyl = sweep(&triples, |t| {
        let r = jacobiator(StarProductId::HbarWeyl, &t.0, &t.1, &t.2, &q1);
        Outcome::new(label(t), "0", render_result(r, SymbolPoly::render))
    });
    let generic: Vec<Result<SymbolPoly>> = {
        use rayon::prelude::*;
        triples.par_iter().map(|t| jacobiator(StarProductId::QStandard, &t.0, &t.1, &t.2, ctx)).collect()
    };
    let rec = triples
        .iter()
        .zip(&generic)
        .map(|(t, r)| Outcome::new(label(t), "0", render_result(r.clone(), SymbolPoly::render)));
    let at1 = triples.iter().zip(&generic).map(|(t, r)| {
        let v = r.clone().and_then(|s| s.eval_q1());
        Outcome::new(label(t), "0", render_result(v, SymbolPoly::render))
    });
    let gf_star = sweep(&triples, |t| {
        let r = jacobiator(StarProductId::QWeylGF, &t.0, &t.1, &t.2, ctx);
        Outcome::new(label(t), "0", render_result(r, SymbolPoly::render))
    });
    let gf_cyclic = |(f, g, k): &(SymbolPoly, SymbolPoly, SymbolPoly)| -> Result<SymbolPoly> {
        let br = |a: &SymbolPoly, b: &SymbolPoly| gf_formula_bracket(a, b, ctx);
        Ok(br(f, &br(g, k)?)?.add(&br(g, &br(k, f)?)?).add(&br(k, &br(f, g)?)?))
    };
    let gf_formula = sweep(&triples, |t| Outcome::new(label(t), "0", render_result(gf_cyclic(t), SymbolPoly::render)));
    vec![
        base("jacobi-hbar-weyl", Expectation::Hard, &q1).param("max_degree", 2).with_cases(weyl),
        base("jacobi-q-weyl-gf-generic", Expectation::Recorded, ctx).param("max_degree", 2).with_cases(gf_star),
        base("jacobi-gf-formula", Expectation::Recorded, ctx).param("max_degree", 2).with_cases(gf_formula),
        base("jacobi-q-standard-generic", Expectation::Recorded, ctx).param("max_degree", 2).with_cases(rec),
        base("jacobi-q-standard-at-q1", Expectation::Hard, ctx).param("max_degree", 2).with_cases(at1),
    ]
}

/// q-Poisson bracket against the `h^0` part of the standard q-Moyal bracket.
pub fn verify_poisson_consistency(grid: u32, ctx: &QContext) -> ConformanceReport {
    let mut cases: Vec<(SymbolPoly, SymbolPoly)> =
        grid4(grid).into_iter().map(|(a, b, c, d)| (sym((a, b)), sym((c, d)))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    cases.extend((0..20).map(|_| (random_poly(&mut rng), random_poly(&mut rng))));
    let outcomes = sweep(&cases, |(f, g)| {
        let m = q_moyal_bracket(StarProductId::QStandard, f, g, ctx).map(|b| b.eval_h0());
        Outcome::new(
            format!("{{{}, {}}}", f.render(), g.render()),
            render_result(m, SymbolPoly::render),
            render_result(q_poisson_bracket(f, g, ctx), SymbolPoly::render),
        )
    });
    base("poisson-consistency", Expectation::Hard, ctx).param("grid", grid).with_cases(outcomes)
}

/// Names accepted by [`run_check`].
pub const CHECKS: &[&str] = &[
    "oracle",
    "base",
    "obstruction",
    "standard-q",
    "antistandard-q",
    "h0",
    "winf",
    "q1",
    "homomorphism",
    "classical",
    "gf",
    "associativity",
    "jacobi",
    "poisson",
    "applications",
];

/// Run one named group of checks.
pub fn run_check(name: &str, grid: u32, ctx: &QContext) -> Result<Vec<ConformanceReport>> {
    Ok(match name {
        "oracle" => verify_oracle_integrity(ctx),
        "base" => vec![verify_base_relation(ctx)],
        "obstruction" => obstruction_report(ctx),
        "standard-q" => [StandardReading::Degree, StandardReading::Verbatim, StandardReading::Transposed]
            .into_iter()
            .map(|r| verify_standard_qw(grid, r, ctx))
            .collect(),
        "antistandard-q" => vec![verify_antistandard_qw(grid, ctx)],
        "h0" => vec![verify_h0_cancellation(grid, ctx)],
        "winf" => verify_ordinary_winf(grid),
        "q1" => verify_q1_reductions(grid, ctx),
        "homomorphism" => vec![
            verify_homomorphism(StarProductId::QStandard, grid, ctx)?,
            verify_homomorphism(StarProductId::QAnti, grid, ctx)?,
        ],
        "classical" => verify_classical_identity(grid.max(4), ctx),
        "gf" => verify_gf_star(grid, ctx),
        "associativity" => associativity_reports(ctx),
        "jacobi" => jacobiator_reports(ctx),
        "poisson" => vec![verify_poisson_consistency(grid, ctx)],
        "applications" => applications::reports(ctx),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown check `{other}` (expected one of: {})",
                CHECKS.join(", ")
            )))
        }
    })
}

/// Every check, in a fixed order.
pub fn run_all(grid: u32, ctx: &QContext) -> SuiteResult {
    let mut reports = Vec::new();
    for name in CHECKS {
        reports.extend(run_check(name, grid, ctx).expect("known check"));
    }
    SuiteResult { reports }
}
