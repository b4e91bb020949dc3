//! Command implementations. Each returns rendered output and an exit code.

use std::collections::BTreeSet;

use qmoyal_core::applications::{
    describe_point_transform, evolution_symbol, kinetic_all_bracketings, kinetic_transform, leibniz_witness,
    path_integral_compose, point_transform_bracket_report, point_transform_brackets,
};
use qmoyal_core::conformance::formulas::render_table;
use qmoyal_core::conformance::{
    grid4, obstruction_report, run_all, run_check, with_root_multiple, ConformanceReport, Expectation, Outcome,
    SuiteResult,
};
use qmoyal_core::operator::{normal_order, q_commutator, q_commutator_pairwise, structure_constants_oracle};
use qmoyal_core::star::{q_moyal_bracket, q_poisson_bracket, star};
use qmoyal_core::{
    exp_int, Association, Exponent, LabeledOperator, OperatorExpr, OrderingScheme, QContext, StarProductId, SymbolMonomial,
};
use serde_json::{json, Value};

use crate::parse::{parse_exponent, parse_operator_expr, parse_symbol_expr};
use crate::{exit_code_for, CliConfig, CliError, Command, Demo, Format, EXIT_OK};

pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }

    fn reports(reports: &[ConformanceReport], text: String, format: Format) -> Self {
        let code = exit_code_for(reports);
        let text = match format {
            Format::Json => reports_json(reports),
            _ => text,
        };
        Output { text, code }
    }
}

fn reports_json(reports: &[ConformanceReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("json serializes")
}

fn no_csv(format: Format, command: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(format!("`{command}` supports --format text or json")));
    }
    Ok(())
}

pub fn run(command: &Command, config: &CliConfig) -> Result<Output, CliError> {
    let ctx = &config.ctx;
    let format = config.format;
    match command {
        Command::NormalOrder { expr, ordering } => {
            no_csv(format, "normal-order")?;
            let e = parse_operator_expr(expr, ctx)?;
            let nf = normal_order(&e, (*ordering).into(), ctx);
            Ok(Output::ok(match format {
                Format::Json => pretty(json!({
                    "input": expr,
                    "ordering": OrderingScheme::from(*ordering).name(),
                    "result": nf.render(),
                })),
                _ => nf.render(),
            }))
        }
        Command::Qcomm { a, b, ordering } => {
            no_csv(format, "qcomm")?;
            let ordering: OrderingScheme = (*ordering).into();
            let (ea, eb) = (parse_operator_expr(a, ctx)?, parse_operator_expr(b, ctx)?);
            let (result, labels) = match (homogeneous_labels(&ea), homogeneous_labels(&eb)) {
                (Some((xa, pa)), Some((xb, pb))) => {
                    let la = LabeledOperator::new(ea, xa, pa);
                    let lb = LabeledOperator::new(eb, xb, pb);
                    (q_commutator(&la, &lb, ordering, ctx), format!("({xa},{pa}) ({xb},{pb})"))
                }
                _ => {
                    let na = normal_order(&ea, ordering, ctx);
                    let nb = normal_order(&eb, ordering, ctx);
                    (q_commutator_pairwise(&na, &nb, ctx), "pairwise".to_string())
                }
            };
            Ok(Output::ok(match format {
                Format::Json => pretty(json!({
                    "a": a,
                    "b": b,
                    "ordering": ordering.name(),
                    "labels": labels,
                    "result": result.render(),
                })),
                _ => result.render(),
            }))
        }
        Command::Star { f, g, product } => {
            no_csv(format, "star")?;
            let id: StarProductId = (*product).into();
            let (sf, sg) = (parse_symbol_expr(f, ctx)?, parse_symbol_expr(g, ctx)?);
            let r = star(id, &sf, &sg, ctx)?;
            Ok(Output::ok(binary_output(format, "star", Some(id), f, g, &r.render())))
        }
        Command::Moyal { f, g, product } => {
            no_csv(format, "moyal")?;
            let id: StarProductId = (*product).into();
            // hbar products are the q = 1 objects; their brackets only divide by h there
            let bctx = if id.q1_counterpart() == id && !id.is_classical() { ctx.at_q1() } else { *ctx };
            let (sf, sg) = (parse_symbol_expr(f, &bctx)?, parse_symbol_expr(g, &bctx)?);
            let r = q_moyal_bracket(id, &sf, &sg, &bctx)?;
            Ok(Output::ok(binary_output(format, "moyal", Some(id), f, g, &r.render())))
        }
        Command::Poisson { f, g } => {
            no_csv(format, "poisson")?;
            let (sf, sg) = (parse_symbol_expr(f, ctx)?, parse_symbol_expr(g, ctx)?);
            let r = q_poisson_bracket(&sf, &sg, ctx)?;
            Ok(Output::ok(binary_output(format, "poisson", None, f, g, &r.render())))
        }
        Command::Verify { check } => {
            no_csv(format, "verify")?;
            let reports = run_check(check, config.grid, ctx)?;
            Ok(suite_output(SuiteResult { reports }, format))
        }
        Command::VerifyAll => {
            no_csv(format, "verify-all")?;
            Ok(suite_output(run_all(config.grid, ctx), format))
        }
        Command::Demo { name, exponent, assoc, steps, hamiltonian, product } => {
            no_csv(format, "demo")?;
            let exponent = exponent.as_deref().map(parse_exponent).transpose()?;
            let assoc = assoc.map(Association::from);
            match name {
                Demo::PointTransform => demo_point_transform(exponent.unwrap_or(qmoyal_core::exp(1, 2)), ctx, format),
                Demo::Leibniz => demo_leibniz(hamiltonian.as_deref().unwrap_or("p^2"), ctx, format),
                Demo::Kinetic => demo_kinetic(exponent.unwrap_or(exp_int(1)), assoc, ctx, format),
                Demo::PathIntegral => demo_path_integral(
                    (*product).into(),
                    hamiltonian.as_deref().unwrap_or("p x"),
                    *steps,
                    config.truncation,
                    assoc.unwrap_or(Association::Left),
                    ctx,
                    format,
                ),
                Demo::Obstruction => {
                    let reports = obstruction_report(ctx);
                    let text = reports.iter().map(ConformanceReport::summary).collect::<Vec<_>>().join("\n");
                    Ok(Output::reports(&reports, text, format))
                }
            }
        }
        Command::Tabulate { ordering } => Ok(Output::ok(tabulate((*ordering).into(), config.grid, ctx, format)?)),
    }
}

/// `(X-degree, P-degree)` shared by every word of `e`, if there is one.
fn homogeneous_labels(e: &OperatorExpr) -> Option<(u32, u32)> {
    let degrees: BTreeSet<_> = e.terms().map(|(w, _)| w.degrees()).collect();
    match degrees.len() {
        0 => Some((0, 0)),
        1 => degrees.into_iter().next(),
        _ => None,
    }
}

fn binary_output(format: Format, op: &str, id: Option<StarProductId>, f: &str, g: &str, result: &str) -> String {
    match format {
        Format::Json => pretty(json!({
            "operation": op,
            "product": id.map(StarProductId::name),
            "f": f,
            "g": g,
            "result": result,
        })),
        _ => result.to_string(),
    }
}

fn suite_output(suite: SuiteResult, format: Format) -> Output {
    let code = exit_code_for(&suite.reports);
    let text = match format {
        Format::Json => suite.to_json(),
        _ => {
            let mut lines: Vec<String> = suite.reports.iter().map(ConformanceReport::summary).collect();
            let failures = suite.hard_failures().len();
            lines.push(format!("{} reports, {failures} hard failures", suite.reports.len()));
            lines.join("\n")
        }
    };
    Output { text, code }
}

fn denominator(a: &Exponent) -> u32 {
    u32::try_from(*a.denom()).unwrap_or(1)
}

fn demo_point_transform(a: Exponent, ctx: &QContext, format: Format) -> Result<Output, CliError> {
    let ctx = with_root_multiple(ctx, denominator(&a));
    let b = point_transform_brackets(a, &ctx)?;
    let reports = point_transform_bracket_report(&[a], &ctx);
    Ok(Output::reports(&reports, describe_point_transform(&b), format))
}

fn demo_leibniz(hamiltonian: &str, ctx: &QContext, format: Format) -> Result<Output, CliError> {
    let h = parse_symbol_expr(hamiltonian, ctx)?;
    let x = parse_symbol_expr("x", ctx)?;
    let w = leibniz_witness(&h, &x, &x, ctx)?;
    let verdict = |b: bool| if b { "equal" } else { "unequal" };
    let text = format!(
        "H = {}, f = g = x\ntau(f g)             = {}\ntau(f) g + f tau(g) = {}\ngeneric q: {}\nq = 1:     {}",
        h,
        w.lhs,
        w.rhs,
        verdict(w.equal_at_generic_q),
        verdict(w.equal_at_q1)
    );
    let generic = ConformanceReport::new("demo-leibniz-generic-q", Expectation::Recorded)
        .param("hamiltonian", h.render())
        .with_cases([Outcome::new("tau(x x) vs tau(x) x + x tau(x)", w.rhs.render(), w.lhs.render())]);
    let q1 = ConformanceReport::new("demo-leibniz-q1", Expectation::Hard)
        .param("hamiltonian", h.render())
        .with_cases([Outcome::new("Leibniz rule at q = 1", "equal", verdict(w.equal_at_q1))]);
    Ok(Output::reports(&[generic, q1], text, format))
}

fn demo_kinetic(a: Exponent, assoc: Option<Association>, ctx: &QContext, format: Format) -> Result<Output, CliError> {
    let ctx = with_root_multiple(ctx, 2 * denominator(&a));
    let assocs = match assoc {
        Some(one) => vec![one],
        None => vec![Association::Left, Association::Right, Association::Balanced],
    };
    let mut lines = vec![format!("f = {}", SymbolMonomial::new(exp_int(0), a).render())];
    let expected = if a == exp_int(1) { Some("p^2".to_string()) } else { None };
    let mut report = ConformanceReport::new(
        "demo-kinetic",
        if expected.is_some() { Expectation::Hard } else { Expectation::Recorded },
    )
    .param("exponent", qmoyal_core::qcalc::render_exponent(&a));
    let mut first: Option<String> = None;
    for assoc in assocs {
        let v = kinetic_transform(a, assoc, &ctx)?.render();
        lines.push(format!("{:<9} {v}", format!("{}:", assoc.name())));
        let reference = expected.clone().or_else(|| first.clone()).unwrap_or_else(|| v.clone());
        report.case(assoc.name(), reference, v.clone());
        first.get_or_insert(v);
    }
    if assoc.is_none() {
        let all: BTreeSet<String> = kinetic_all_bracketings(a, &ctx)?.iter().map(|v| v.render()).collect();
        let noun = if all.len() == 1 { "value" } else { "values" };
        lines.push(format!("all 42 bracketings: {} distinct {noun}", all.len()));
    }
    Ok(Output::reports(&[report], lines.join("\n"), format))
}

fn demo_path_integral(
    id: StarProductId,
    hamiltonian: &str,
    steps: u32,
    truncation: u32,
    assoc: Association,
    ctx: &QContext,
    format: Format,
) -> Result<Output, CliError> {
    let h = parse_symbol_expr(hamiltonian, ctx)?;
    let single = evolution_symbol(id, &h, truncation, ctx)?;
    let composed = path_integral_compose(id, &h, steps, truncation, assoc, ctx)?;
    let text = format!(
        "H = {h}, product {}, K = {truncation}, N = {steps}, {} association\n\
         U(t)          = {single}\n\
         U(t/N)^(*N)   = {composed}\n\
         finite-N truncated composition; the N -> infinity limit is not taken",
        id.name(),
        assoc.name(),
    );
    let report = ConformanceReport::new("demo-path-integral", Expectation::Recorded)
        .param("hamiltonian", h.render())
        .param("product", id.name())
        .param("steps", steps)
        .param("truncation", truncation)
        .param("association", assoc.name())
        .with_cases([Outcome::new("N steps vs one step", single.render(), composed.render())]);
    Ok(Output::reports(&[report], text, format))
}

fn tabulate(ordering: OrderingScheme, grid: u32, ctx: &QContext, format: Format) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for idx in grid4(grid) {
        let table = structure_constants_oracle(ordering, idx, ctx);
        rows.push((idx, table));
    }
    Ok(match format {
        Format::Text => rows
            .iter()
            .map(|((a, b, c, d), t)| format!("({a},{b}) ({c},{d}) {}", render_table("r", t)))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|((a, b, c, d), t)| {
                    let coeffs: serde_json::Map<String, Value> =
                        t.iter().map(|(r, s)| (r.to_string(), Value::String(s.render()))).collect();
                    json!({ "a": a, "b": b, "c": c, "d": d, "coefficients": coeffs })
                })
                .collect();
            pretty(json!({
                "ordering": ordering.name(),
                "grid": grid,
                "root_denominator": ctx.root_denominator,
                "entries": entries,
            }))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Usage(format!("csv output failed: {e}"));
            w.write_record(["a", "b", "c", "d", "r", "coefficient"]).map_err(io)?;
            for ((a, b, c, d), t) in &rows {
                for (r, s) in t {
                    let rec = [a.to_string(), b.to_string(), c.to_string(), d.to_string(), r.to_string(), s.render()];
                    w.write_record(&rec).map_err(io)?;
                }
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv output failed: {e}")))?;
            String::from_utf8(bytes).expect("csv is utf-8")
        }
    })
}
