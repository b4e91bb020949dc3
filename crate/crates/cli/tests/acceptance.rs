//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use qmoyal_core::conformance::{run_all, weyl_commutator_symbol, ConformanceReport, Expectation, SuiteResult};
use qmoyal_core::{Coefficient, QContext, Scalar, SymbolMonomial};
use serde_json::Value;

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Suite {
    result: SuiteResult,
}

impl Suite {
    fn report(&self, check: &str) -> Result<&ConformanceReport, String> {
        self.result.find(check).ok_or_else(|| format!("report `{check}` missing"))
    }

    /// Every listed report exists and matches on all of its cases.
    fn exact(&self, checks: &[&str]) -> Verdict {
        let mut parts = Vec::new();
        for c in checks {
            let r = self.report(c)?;
            if r.n_cases == 0 {
                return Err(format!("{c}: no cases"));
            }
            if !r.all_match() {
                let w = r.witnesses.first().map(|w| format!(" ({}: {} vs {})", w.case, w.expected, w.actual));
                return Err(format!("{c}: {}/{}{}", r.n_match, r.n_cases, w.unwrap_or_default()));
            }
            parts.push(format!("{c} {}/{}", r.n_match, r.n_cases));
        }
        Ok(parts.join(", "))
    }

    fn recorded(&self, check: &str) -> Result<&ConformanceReport, String> {
        let r = self.report(check)?;
        if r.expectation != Expectation::Recorded {
            return Err(format!("{check} should be a recorded report"));
        }
        Ok(r)
    }
}

fn param<'a>(r: &'a ConformanceReport, key: &str) -> Result<&'a Value, String> {
    r.parameters.get(key).ok_or_else(|| format!("{}: parameter `{key}` missing", r.check))
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn grid_of(r: &ConformanceReport) -> Result<u64, String> {
    param(r, "grid")?.as_u64().ok_or_else(|| format!("{}: grid is not an integer", r.check))
}

fn c1_oracle(s: &Suite) -> Verdict {
    let confluence = s.report("oracle-confluence")?;
    require(confluence.n_cases >= 200, "fewer than 200 random words")?;
    let closed = s.report("oracle-closed-form")?;
    require(closed.n_cases == 49, format!("closed form covers {} cases, want b,c <= 6", closed.n_cases))?;
    s.exact(&["oracle-confluence", "oracle-closed-form"])
}

fn c2_base(s: &Suite) -> Verdict {
    let r = s.report("base-relation")?;
    require(r.n_cases == 2, "base relation and [P^2, X^2]_q expected")?;
    s.exact(&["base-relation"])
}

fn c3_obstruction(s: &Suite) -> Verdict {
    let main = s.exact(&["obstruction"])?;
    let r = s.report("obstruction")?;
    let a = param(r, "t11_from_p2x2")?.as_str().unwrap_or_default().to_string();
    let b = param(r, "t11_from_commutator")?.as_str().unwrap_or_default().to_string();
    require(a != b, "T11 candidates should differ at generic q")?;
    let printed = s.recorded("obstruction-p2x3-as-printed")?;
    require(!printed.all_match(), "P^2X^3 without h should be a recorded mismatch")?;
    require(printed.derived_correction.is_some(), "missing correction for P^2X^3")?;
    Ok(format!("{main}; candidates {a} vs {b}; printed P^2X^3 mismatch recorded"))
}

fn c4_qaal(s: &Suite) -> Verdict {
    let r = s.report("antistandard-q")?;
    require(grid_of(r)? == 3 && r.n_cases == 256, format!("antistandard sweep covers {} index tuples", r.n_cases))?;
    s.exact(&["antistandard-q"])
}

fn c5_qsal(s: &Suite) -> Verdict {
    let r = s.report("standard-q-degree")?;
    require(grid_of(r)? == 3 && r.n_cases == 256, "standard degree sweep must cover the full grid")?;
    let reading = param(r, "printed_reading")?.as_str().unwrap_or_default();
    require(reading.starts_with("transposed"), format!("reading statement: {reading}"))?;
    let verbatim = s.recorded("standard-q-verbatim")?;
    let exact = s.exact(&["standard-q-degree", "standard-q-transposed"])?;
    Ok(format!("{exact}; verbatim {}/{} recorded; reading: {reading}", verbatim.n_match, verbatim.n_cases))
}

fn c6_q1(s: &Suite) -> Verdict {
    s.exact(&["q1-formula-reductions", "q1-star-reductions", "standard-q1", "antistandard-q1"])
}

fn c7_homomorphism(s: &Suite) -> Verdict {
    s.exact(&["homomorphism-q-standard", "homomorphism-q-anti"])
}

fn c8_classical(s: &Suite) -> Verdict {
    let r = s.report("classical-identity")?;
    require(grid_of(r)? >= 4, "classical identity must cover indices <= 4")?;
    s.exact(&["classical-identity"])
}

fn c9_weyl(s: &Suite) -> Verdict {
    let exact = s.exact(&["weyl-oracles", "gf-q1-reduction"])?;
    let printed = s.recorded("weyl-printed-b")?;
    let gf = s.recorded("gf-generic")?;
    // desk case: [T3,0, T0,3] / h = 9 p^2 x^2 + 3/2 h^2
    let desk = weyl_commutator_symbol(3, 0, 0, 3).map_err(|e| e.to_string())?;
    let coeff = desk.get(&SymbolMonomial::one());
    require(
        coeff == Coefficient::monomial(Scalar::ratio(3, 2), 2),
        format!("desk case coefficient {coeff}"),
    )?;
    Ok(format!(
        "{exact}; printed B {}/{} recorded; generic GF {}/{} recorded; desk case 3/2",
        printed.n_match, printed.n_cases, gf.n_match, gf.n_cases
    ))
}

fn c10_h0(s: &Suite) -> Verdict {
    let exact = s.exact(&["h0-cancellation"])?;
    for r in &s.result.reports {
        if let Some(w) = r.witnesses.iter().find(|w| w.actual.contains("not divisible by h")) {
            return Err(format!("{}: {} raised NotDivisibleByH", r.check, w.case));
        }
    }
    Ok(exact)
}

fn c11_applications(s: &Suite) -> Verdict {
    let exact = s.exact(&["point-transform", "tau-q", "leibniz", "kinetic-transform"])?;
    let pt = s.report("point-transform")?;
    require(pt.n_cases >= 18, "point transforms must cover a in {-1, 1/3, 1/2, 1, 2, 3}")?;
    let printed = s.recorded("point-transform-printed")?;
    let shown: Vec<_> = printed.witnesses.iter().map(|w| (w.expected.as_str(), w.actual.as_str())).collect();
    require(shown.contains(&("-q", "-1")), "printed {x,p} = -q not reported beside the computed value")?;
    require(shown.contains(&("-q^(1/2)", "-1")), "printed {u,p_u} = -q^(1/2) not reported beside the computed value")?;
    Ok(format!("{exact}; printed values reported, not asserted"))
}

fn validate_schema(v: &Value) -> Result<usize, String> {
    let arr = v.as_array().ok_or("top level is not an array")?;
    let keys: BTreeSet<&str> = ["check", "parameters", "n_cases", "n_match", "witnesses", "derived_correction"].into();
    for r in arr {
        let obj = r.as_object().ok_or("report is not an object")?;
        let have: BTreeSet<&str> = obj.keys().map(String::as_str).collect();
        require(have == keys, format!("report keys {have:?}"))?;
        require(obj["check"].is_string(), "check is not a string")?;
        require(obj["parameters"].is_object(), "parameters is not an object")?;
        let (n, m) = (obj["n_cases"].as_u64(), obj["n_match"].as_u64());
        require(n.is_some() && m.is_some() && m <= n, "n_cases/n_match invalid")?;
        require(obj["derived_correction"].is_string() || obj["derived_correction"].is_null(), "derived_correction")?;
        for w in obj["witnesses"].as_array().ok_or("witnesses is not an array")? {
            let w = w.as_object().ok_or("witness is not an object")?;
            let wk: BTreeSet<&str> = w.keys().map(String::as_str).collect();
            require(wk == ["actual", "case", "expected"].into(), "witness keys")?;
            require(w.values().all(Value::is_string), "witness fields must be strings")?;
        }
    }
    Ok(arr.len())
}

fn c12_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_qmoyal");
    let verify_all = || {
        Command::new(bin)
            .args(["verify-all", "--grid", "3", "--format", "json"])
            .env_remove("QMOYAL_GRID")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (verify_all()?, verify_all()?);
    require(a.status.code() == Some(0), format!("verify-all exit {:?}", a.status.code()))?;
    require(b.status.code() == Some(0), format!("verify-all exit {:?}", b.status.code()))?;
    require(a.stdout == b.stdout, "verify-all output differs between runs")?;
    let v: Value = serde_json::from_slice(&a.stdout).map_err(|e| format!("invalid JSON: {e}"))?;
    let n = validate_schema(&v)?;

    let code = |args: &[&str]| Command::new(bin).args(args).output().map(|o| o.status.code()).map_err(|e| e.to_string());
    require(code(&["normal-order", "P X"])? == Some(0), "normal-order exit")?;
    require(code(&["normal-order", "P^(1/2)"])? == Some(1), "parse error must exit 1")?;
    require(code(&["frobnicate"])? == Some(1), "unknown command must exit 1")?;
    require(code(&["verify-all", "--grid", "9"])? == Some(1), "grid guard must exit 1")?;
    let failing = ConformanceReport::new("synthetic", Expectation::Hard)
        .with_cases([qmoyal_core::conformance::Outcome::new("c", "1", "2")]);
    require(qmoyal_cli::exit_code_for(&[failing]) == 2, "hard failure must map to exit 2")?;
    Ok(format!("{n} reports, {} bytes, byte-identical; exit codes 0/1/2", a.stdout.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let suite = Suite { result: run_all(3, &QContext::generic(2)) };
    let suite_time = start.elapsed();
    let criteria: Vec<Criterion> = vec![
        ("1 oracle integrity", Box::new(|| c1_oracle(&suite))),
        ("2 base relation and [P^2, X^2]_q", Box::new(|| c2_base(&suite))),
        ("3 Weyl-ordering obstruction", Box::new(|| c3_obstruction(&suite))),
        ("4 antistandard q-algebra verbatim", Box::new(|| c4_qaal(&suite))),
        ("5 standard q-algebra adjudication", Box::new(|| c5_qsal(&suite))),
        ("6 q = 1 reductions", Box::new(|| c6_q1(&suite))),
        ("7 homomorphism theorem", Box::new(|| c7_homomorphism(&suite))),
        ("8 classical identity", Box::new(|| c8_classical(&suite))),
        ("9 Weyl sector", Box::new(|| c9_weyl(&suite))),
        ("10 h^0 cancellation", Box::new(|| c10_h0(&suite))),
        ("11 applications", Box::new(|| c11_applications(&suite))),
        ("12 determinism, schema, exit codes", Box::new(c12_determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed (suite {:.1?}, total {:.1?})",
        criteria.len() - failed,
        criteria.len(),
        suite_time,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
