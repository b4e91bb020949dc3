//! Grid sweeps comparing closed forms and star-product brackets with the
//! rewrite engine. Every check yields a [`ConformanceReport`]; a suite run
//! is a list of reports plus a hard/recorded flag per report.

mod checks;
pub mod formulas;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

pub use checks::*;

/// Stored witnesses per report; cases beyond this are counted only.
pub const MAX_WITNESSES: usize = 16;

/// Whether a mismatch fails the suite or is only recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Expectation {
    #[default]
    Hard,
    Recorded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub case: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConformanceReport {
    pub check: String,
    pub parameters: BTreeMap<String, Value>,
    pub n_cases: usize,
    pub n_match: usize,
    pub witnesses: Vec<Witness>,
    pub derived_correction: Option<String>,
    #[serde(skip)]
    pub expectation: Expectation,
}

impl ConformanceReport {
    pub fn new(check: impl Into<String>, expectation: Expectation) -> Self {
        ConformanceReport {
            check: check.into(),
            parameters: BTreeMap::new(),
            n_cases: 0,
            n_match: 0,
            witnesses: Vec::new(),
            derived_correction: None,
            expectation,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn correction(mut self, text: impl Into<String>) -> Self {
        self.derived_correction = Some(text.into());
        self
    }

    /// Record one case; a mismatch keeps a witness while below the cap.
    pub fn case(&mut self, case: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) {
        let (expected, actual) = (expected.into(), actual.into());
        self.n_cases += 1;
        if expected == actual {
            self.n_match += 1;
        } else if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { case: case.into(), expected, actual });
        }
    }

    pub fn with_cases(mut self, cases: impl IntoIterator<Item = Outcome>) -> Self {
        for o in cases {
            self.case(o.case, o.expected, o.actual);
        }
        self
    }

    pub fn all_match(&self) -> bool {
        self.n_match == self.n_cases
    }

    pub fn hard_failure(&self) -> bool {
        self.expectation == Expectation::Hard && !self.all_match()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let tag = match (self.expectation, self.all_match()) {
            (_, true) => "ok",
            (Expectation::Hard, false) => "FAIL",
            (Expectation::Recorded, false) => "recorded",
        };
        let mut s = format!("{:<40} {:>5}/{:<5} {tag}", self.check, self.n_match, self.n_cases);
        for w in &self.witnesses {
            s.push_str(&format!("\n    {}: expected {} | actual {}", w.case, w.expected, w.actual));
        }
        if let Some(c) = &self.derived_correction {
            s.push_str(&format!("\n    correction: {c}"));
        }
        s
    }
}

/// One compared case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub case: String,
    pub expected: String,
    pub actual: String,
}

impl Outcome {
    pub fn new(case: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        Outcome { case: case.into(), expected: expected.into(), actual: actual.into() }
    }

    /// A case whose computation failed: the error stands in for the actual value.
    pub fn error(case: impl Into<String>, expected: impl Into<String>, err: &crate::Error) -> Self {
        Outcome::new(case, expected, format!("error: {err}"))
    }
}

/// Evaluate cases in parallel, keeping input order.
pub fn sweep<T: Sync>(cases: &[T], f: impl Fn(&T) -> Outcome + Sync + Send) -> Vec<Outcome> {
    cases.par_iter().map(f).collect()
}

/// All index quadruples with every entry `<= grid`, lexicographic.
pub fn grid4(grid: u32) -> Vec<formulas::Indices> {
    let mut v = Vec::new();
    for a in 0..=grid {
        for b in 0..=grid {
            for c in 0..=grid {
                for d in 0..=grid {
                    v.push((a, b, c, d));
                }
            }
        }
    }
    v
}

/// Integer monomials `(p, x)` with `p + x <= degree`.
pub fn monomials_up_to(degree: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for p in 0..=degree {
        for x in 0..=degree - p {
            v.push((p, x));
        }
    }
    v
}

/// Outcome of a full suite run.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub reports: Vec<ConformanceReport>,
}

impl SuiteResult {
    pub fn hard_failures(&self) -> Vec<&ConformanceReport> {
        self.reports.iter().filter(|r| r.hard_failure()).collect()
    }

    pub fn passed(&self) -> bool {
        self.hard_failures().is_empty()
    }

    pub fn find(&self, check: &str) -> Option<&ConformanceReport> {
        self.reports.iter().find(|r| r.check == check)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.reports).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_are_capped_but_counted() {
        let mut r = ConformanceReport::new("t", Expectation::Hard);
        for i in 0..40 {
            r.case(format!("{i}"), "a", if i % 2 == 0 { "a" } else { "b" });
        }
        assert_eq!((r.n_cases, r.n_match), (40, 20));
        assert_eq!(r.witnesses.len(), MAX_WITNESSES);
        assert!(r.hard_failure());
    }

    #[test]
    fn json_shape() {
        let r = ConformanceReport::new("t", Expectation::Recorded).param("grid", 3).with_cases([Outcome::new("x", "1", "2")]);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["check", "derived_correction", "n_cases", "n_match", "parameters", "witnesses"]);
        assert!(!r.hard_failure());
    }

    #[test]
    fn grids() {
        assert_eq!(grid4(3).len(), 256);
        assert_eq!(monomials_up_to(2).len(), 6);
    }
}
