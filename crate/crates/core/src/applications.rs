//! q-classical and q-quantum dynamics on symbols: equations of motion,
//! point transformations, the transformed kinetic term and a finite-N
//! composition of short-time evolution symbols.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::conformance::{with_root_multiple, ConformanceReport, Expectation, Outcome};
use crate::error::{Error, Result};
use crate::qcalc::{exp, exp_int, render_exponent, Exponent, QContext};
use crate::scalar::Scalar;
use crate::star::{
    all_bracketings, q_moyal_bracket, q_poisson_bracket, star, star_chain, star_pow, star_power, Association,
    StarProductId, TruncatedSeries,
};
use crate::symbol::{q_derivative, SymbolMonomial, SymbolPoly, Var};

/// `u = x^a`, `p_u = (D_x u)^{-1} p = [a]^{-1} x^{1-a} p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointTransform {
    pub a: Exponent,
    pub u: SymbolPoly,
    pub p_u: SymbolPoly,
}

impl PointTransform {
    pub fn new(a: Exponent, ctx: &QContext) -> Result<Self> {
        ctx.check_representable(&a)?;
        let qa = ctx.q_integer(&a)?;
        let inv = qa
            .inv()
            .ok_or_else(|| Error::InvalidArgument(format!("[{}] vanishes", render_exponent(&a))))?;
        let u = SymbolPoly::monomial(SymbolMonomial::new(exp_int(0), a));
        let p_u = SymbolPoly::monomial(SymbolMonomial::new(exp_int(1), Exponent::one() - a)).scale_scalar(&inv);
        Ok(PointTransform { a, u, p_u })
    }
}

/// The four q-Poisson brackets of a point transform.
#[derive(Clone, Debug, PartialEq)]
pub struct PointTransformBrackets {
    pub transform: PointTransform,
    pub p_x: SymbolPoly,
    pub x_p: SymbolPoly,
    pub pu_u: SymbolPoly,
    pub u_pu: SymbolPoly,
    /// Printed value of `{x, p}`.
    pub printed_x_p: String,
    /// Printed value of `{u, p_u}`, `-q^a`.
    pub printed_u_pu: String,
}

pub fn point_transform_brackets(a: Exponent, ctx: &QContext) -> Result<PointTransformBrackets> {
    let t = PointTransform::new(a, ctx)?;
    let (p, x) = (SymbolPoly::px(1, 0), SymbolPoly::px(0, 1));
    let printed_u_pu = ctx.q_power(&a)?.neg();
    Ok(PointTransformBrackets {
        p_x: q_poisson_bracket(&p, &x, ctx)?,
        x_p: q_poisson_bracket(&x, &p, ctx)?,
        pu_u: q_poisson_bracket(&t.p_u, &t.u, ctx)?,
        u_pu: q_poisson_bracket(&t.u, &t.p_u, ctx)?,
        printed_x_p: ctx.q_pow_int(1).neg().render(),
        printed_u_pu: printed_u_pu.render(),
        transform: t,
    })
}

/// Exponents used for point-transform checks; they need `6 | D`.
pub fn point_transform_exponents() -> Vec<Exponent> {
    vec![exp_int(-1), exp(1, 3), exp(1, 2), exp_int(1), exp_int(2), exp_int(3)]
}

/// Companion operator statement for the square-root transform.
pub const SQRT_TRANSFORM_CONTEXT: &str =
    "u = x^(1/2) is q-canonical when P X - q X P = h and P_u U - q^(1/2) U P_u = h";

/// Hard report on `{p,x} = 1`, `{p_u,u} = 1` and `D_x(u) p_u = p`; recorded
/// report comparing `{x,p}`, `{u,p_u}` with their printed values.
pub fn point_transform_bracket_report(exps: &[Exponent], ctx: &QContext) -> Vec<ConformanceReport> {
    let mut hard = ConformanceReport::new("point-transform", Expectation::Hard)
        .param("root_denominator", ctx.root_denominator);
    let mut rec = ConformanceReport::new("point-transform-printed", Expectation::Recorded)
        .param("root_denominator", ctx.root_denominator)
        .param("context", SQRT_TRANSFORM_CONTEXT);
    let p = SymbolPoly::px(1, 0);
    for a in exps {
        let label = render_exponent(a);
        match point_transform_brackets(*a, ctx) {
            Ok(b) => {
                hard.case(format!("{{p, x}} a={label}"), "1", b.p_x.render());
                hard.case(format!("{{p_u, u}} a={label}"), "1", b.pu_u.render());
                let consistency = q_derivative(Var::X, &b.transform.u, ctx).map(|d| d.mul(&b.transform.p_u));
                let c = match consistency {
                    Ok(v) => v.render(),
                    Err(e) => format!("error: {e}"),
                };
                hard.case(format!("D_x(u) p_u a={label}"), p.render(), c);
                rec.case(format!("{{x, p}} a={label}"), b.printed_x_p.clone(), b.x_p.render());
                rec.case(format!("{{u, p_u}} a={label}"), b.printed_u_pu.clone(), b.u_pu.render());
            }
            Err(e) => hard.case(format!("a={label}"), "1", format!("error: {e}")),
        }
    }
    vec![hard, rec]
}

/// Bracket used for an equation of motion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketFlavor {
    QMoyal(StarProductId),
    QPoisson,
}

/// `τ_q(f) = {H, f}`, each monomial weighted by its own degrees.
pub fn tau_q(h: &SymbolPoly, f: &SymbolPoly, flavor: BracketFlavor, ctx: &QContext) -> Result<SymbolPoly> {
    match flavor {
        BracketFlavor::QMoyal(id) => q_moyal_bracket(id, h, f, ctx),
        BracketFlavor::QPoisson => q_poisson_bracket(h, f, ctx),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeibnizWitness {
    pub lhs: SymbolPoly,
    pub rhs: SymbolPoly,
    pub equal_at_generic_q: bool,
    pub equal_at_q1: bool,
}

/// `τ_q(fg)` against `τ_q(f) g + f τ_q(g)` under the q-Poisson bracket.
pub fn leibniz_witness(h: &SymbolPoly, f: &SymbolPoly, g: &SymbolPoly, ctx: &QContext) -> Result<LeibnizWitness> {
    let tau = |k: &SymbolPoly| tau_q(h, k, BracketFlavor::QPoisson, ctx);
    let lhs = tau(&f.mul(g))?;
    let rhs = tau(f)?.mul(g).add(&f.mul(&tau(g)?));
    let equal_at_q1 = lhs.eval_q1()? == rhs.eval_q1()?;
    Ok(LeibnizWitness { equal_at_generic_q: lhs == rhs, equal_at_q1, lhs, rhs })
}

/// The six factors `(D_x f)^{-1/2}, p, (D_x f)^{-2}, D_x f, p, (D_x f)^{-1/2}`
/// for `f = x^a`, with `κ² = [a]` standing for `[a]^{1/2}`.
pub fn kinetic_factors(a: Exponent, ctx: &QContext) -> Result<Vec<SymbolPoly>> {
    let qa = ctx.q_integer(&a)?;
    if qa.is_zero() {
        return Err(Error::InvalidArgument("kinetic term needs [a] != 0".into()));
    }
    let one = Exponent::one();
    let x_pow = |e: Exponent| -> Result<SymbolPoly> {
        ctx.check_representable(&e)?;
        Ok(SymbolPoly::monomial(SymbolMonomial::new(Exponent::zero(), e)))
    };
    let kappa_inv = Scalar::kappa(qa.base().clone()).inv().expect("kappa is invertible");
    let root = x_pow((one - a) / 2)?.scale_scalar(&kappa_inv);
    let p = SymbolPoly::px(1, 0);
    let inv_sq = x_pow((one - a) * 2)?.scale_scalar(&qa.pow(2).inv().expect("nonzero"));
    let d = x_pow(a - one)?.scale_scalar(&qa);
    Ok(vec![root.clone(), p.clone(), inv_sq, d, p, root])
}

/// Transformed kinetic term under one association order.
pub fn kinetic_transform(a: Exponent, assoc: Association, ctx: &QContext) -> Result<SymbolPoly> {
    star_chain(StarProductId::QStandard, &kinetic_factors(a, ctx)?, assoc, ctx)
}

/// The transformed kinetic term under all 42 bracketings.
pub fn kinetic_all_bracketings(a: Exponent, ctx: &QContext) -> Result<Vec<SymbolPoly>> {
    all_bracketings(&kinetic_factors(a, ctx)?, &|f, g| star(StarProductId::QStandard, f, g, ctx))
}

/// Symbol of the short-time evolution operator `U(τ) = Σ_{j<=K} τ^j H^{⋆j} / j!`,
/// where `τ` stands for `it/ℏ`.
pub fn evolution_symbol(id: StarProductId, h: &SymbolPoly, order: u32, ctx: &QContext) -> Result<TruncatedSeries> {
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    let mut fact = Scalar::one();
    for j in 0..=order {
        if j > 0 {
            fact = fact.mul(&Scalar::from_int(j as i64));
        }
        let inv = fact.inv().expect("factorials are nonzero");
        coeffs.push(star_pow(id, h, j, ctx)?.scale_scalar(&inv));
    }
    Ok(TruncatedSeries::from_coeffs(order, coeffs))
}

/// `U(τ/N) ⋆ … ⋆ U(τ/N)` (N factors), truncated at `τ^K`.
pub fn path_integral_compose(
    id: StarProductId,
    h: &SymbolPoly,
    n: u32,
    order: u32,
    assoc: Association,
    ctx: &QContext,
) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let step = evolution_symbol(id, h, order, ctx)?.rescale_parameter(&Scalar::ratio(1, n as i64));
    star_power(id, &step, n, assoc, ctx)
}

fn show(r: Result<SymbolPoly>) -> String {
    match r {
        Ok(v) => v.render(),
        Err(e) => format!("error: {e}"),
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "equal"
    } else {
        "unequal"
    }
}

/// Equations of motion and the Leibniz-rule witness.
pub fn dynamics_reports(ctx: &QContext) -> Vec<ConformanceReport> {
    let (p, x, p2, x2) = (SymbolPoly::px(1, 0), SymbolPoly::px(0, 1), SymbolPoly::px(2, 0), SymbolPoly::px(0, 2));
    let three = SymbolPoly::scalar(Scalar::from_int(3));
    let tau = |h: &SymbolPoly, f: &SymbolPoly| show(tau_q(h, f, BracketFlavor::QPoisson, ctx));
    let q = ctx.q_pow_int(1);
    let one_q = Scalar::one().add(&q);
    let tau_report = ConformanceReport::new("tau-q", Expectation::Hard).with_cases([
        Outcome::new("H=p^2, f=x", p.scale_scalar(&one_q).render(), tau(&p2, &x)),
        Outcome::new("H=3, f=x", "0", tau(&three, &x)),
        Outcome::new("H=p^2, f=x^2", SymbolPoly::px(1, 1).scale_scalar(&q.mul(&one_q).mul(&one_q)).render(), tau(&p2, &x2)),
    ]);

    let mut leib = ConformanceReport::new("leibniz", Expectation::Hard);
    match leibniz_witness(&p2, &x, &x, ctx) {
        Ok(w) => {
            leib.case("H=p^2, f=g=x lhs", SymbolPoly::px(1, 1).scale_scalar(&q.mul(&one_q).mul(&one_q)).render(), w.lhs.render());
            leib.case("H=p^2, f=g=x rhs", SymbolPoly::px(1, 1).scale_scalar(&one_q.mul(&Scalar::from_int(2))).render(), w.rhs.render());
            leib.case("H=p^2, f=g=x generic q", "unequal", flag(w.equal_at_generic_q));
            leib.case("H=p^2, f=g=x q=1", "equal", flag(w.equal_at_q1));
        }
        Err(e) => leib.case("H=p^2, f=g=x", "witness", format!("error: {e}")),
    }
    let corpus = [
        ("H=p^2, f=3, g=x^2", p2.clone(), three.clone(), x2.clone(), true),
        ("H=3, f=x, g=p", three.clone(), x.clone(), p.clone(), true),
        ("H=p^2+x^2, f=p x, g=x", p2.add(&x2), SymbolPoly::px(1, 1), x.clone(), false),
        ("H=p^3 x, f=x^2, g=p", SymbolPoly::px(3, 1), x2.clone(), p.clone(), false),
        ("H=p x^2, f=p^2, g=p x", SymbolPoly::px(1, 2), p2.clone(), SymbolPoly::px(1, 1), false),
    ];
    for (label, h, f, g, generic_equal) in corpus {
        match leibniz_witness(&h, &f, &g, ctx) {
            Ok(w) => {
                leib.case(format!("{label} q=1"), "equal", flag(w.equal_at_q1));
                if generic_equal {
                    leib.case(format!("{label} generic q"), "equal", flag(w.equal_at_generic_q));
                }
            }
            Err(e) => leib.case(label, "equal", format!("error: {e}")),
        }
    }
    vec![tau_report, leib]
}

/// Transformed kinetic term: exact at `a = 1`, κ-free for all `a`; the
/// association dependence at `a = 1/2` is recorded.
pub fn kinetic_reports(ctx: &QContext) -> Vec<ConformanceReport> {
    let wide = with_root_multiple(ctx, 4);
    let assocs = [Association::Left, Association::Right, Association::Balanced];
    let mut hard = ConformanceReport::new("kinetic-transform", Expectation::Hard).param("root_denominator", wide.root_denominator);
    for assoc in assocs {
        hard.case(format!("a=1 {}", assoc.name()), "p^2", show(kinetic_transform(exp_int(1), assoc, &wide)));
    }
    for a in [exp(1, 2), exp_int(2), exp_int(-1)] {
        for assoc in assocs {
            let r = kinetic_transform(a, assoc, &wide).map(|s| if s.has_kappa() { "kappa present" } else { "kappa-free" });
            let actual = match r {
                Ok(s) => s.to_string(),
                Err(e) => format!("error: {e}"),
            };
            hard.case(format!("a={} {}", render_exponent(&a), assoc.name()), "kappa-free", actual);
        }
    }
    let half = exp(1, 2);
    let left = show(kinetic_transform(half, Association::Left, &wide));
    let mut rec = ConformanceReport::new("kinetic-associations", Expectation::Recorded)
        .param("root_denominator", wide.root_denominator)
        .param("a", "1/2")
        .param("left", left.clone());
    for assoc in [Association::Right, Association::Balanced] {
        rec.case(format!("left vs {}", assoc.name()), left.clone(), show(kinetic_transform(half, assoc, &wide)));
    }
    match kinetic_all_bracketings(half, &wide) {
        Ok(all) => {
            let mut distinct: Vec<String> = all.iter().map(SymbolPoly::render).collect();
            distinct.sort();
            distinct.dedup();
            let found = match distinct.len() {
                1 => "1 distinct value".to_string(),
                n => format!("{n} distinct values"),
            };
            rec.case(format!("{} bracketings", all.len()), "1 distinct value", found);
        }
        Err(e) => rec.case("all bracketings", "1 distinct value", format!("error: {e}")),
    }
    vec![hard, rec]
}

/// Finite-N composition of evolution symbols.
pub fn path_integral_reports(ctx: &QContext) -> Vec<ConformanceReport> {
    let id = StarProductId::QStandard;
    let k = 4;
    let render = |r: Result<TruncatedSeries>| match r {
        Ok(s) => s.render(),
        Err(e) => format!("error: {e}"),
    };
    let c = Scalar::from_int(2);
    let mut exp_series = Vec::new();
    let mut term = Scalar::one();
    for j in 0..=k {
        if j > 0 {
            term = term.mul(&c).mul(&Scalar::ratio(1, j as i64));
        }
        exp_series.push(SymbolPoly::scalar(term.clone()));
    }
    let exp_series = TruncatedSeries::from_coeffs(k, exp_series).render();
    let p = SymbolPoly::px(1, 0);
    let hard = ConformanceReport::new("path-integral", Expectation::Hard).param("truncation", k).with_cases([
        Outcome::new(
            "H=0, N=3",
            "[1]",
            render(path_integral_compose(id, &SymbolPoly::zero(), 3, k, Association::Left, ctx)),
        ),
        Outcome::new(
            "H=2, N=3",
            exp_series,
            render(path_integral_compose(id, &SymbolPoly::scalar(c.clone()), 3, k, Association::Balanced, ctx)),
        ),
        Outcome::new(
            "H=p, N=2 vs N=1",
            render(path_integral_compose(id, &p, 1, 2, Association::Left, ctx)),
            render(path_integral_compose(id, &p, 2, 2, Association::Left, ctx)),
        ),
    ]);
    let px = SymbolPoly::px(1, 1);
    let rec = ConformanceReport::new("path-integral-px", Expectation::Recorded).param("truncation", 2).with_cases([
        Outcome::new(
            "H=p x, N=2 vs N=1",
            render(path_integral_compose(id, &px, 1, 2, Association::Left, ctx)),
            render(path_integral_compose(id, &px, 2, 2, Association::Left, ctx)),
        ),
        Outcome::new(
            "H=p x, N=3 left vs right",
            render(path_integral_compose(id, &px, 3, 2, Association::Left, ctx)),
            render(path_integral_compose(id, &px, 3, 2, Association::Right, ctx)),
        ),
    ]);
    vec![hard, rec]
}

/// All application reports.
pub fn reports(ctx: &QContext) -> Vec<ConformanceReport> {
    let mut out = point_transform_bracket_report(&point_transform_exponents(), &with_root_multiple(ctx, 6));
    out.extend(dynamics_reports(ctx));
    out.extend(kinetic_reports(ctx));
    out.extend(path_integral_reports(ctx));
    out
}

/// Human-readable account of a point transform.
pub fn describe_point_transform(b: &PointTransformBrackets) -> String {
    let mut s = String::new();
    let t = &b.transform;
    let _ = writeln!(s, "u     = {}", t.u);
    let _ = writeln!(s, "p_u   = {}", t.p_u);
    let _ = writeln!(s, "{{p, x}}     = {}", b.p_x);
    let _ = writeln!(s, "{{p_u, u}}   = {}", b.pu_u);
    let _ = writeln!(s, "{{x, p}}     = {}   (printed: {})", b.x_p, b.printed_x_p);
    let _ = writeln!(s, "{{u, p_u}}   = {}   (printed: {})", b.u_pu, b.printed_u_pu);
    if t.a == exp(1, 2) {
        let _ = writeln!(s, "note: {SQRT_TRANSFORM_CONTEXT}");
    }
    s
}
