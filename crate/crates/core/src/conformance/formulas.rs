//! Closed-form structure constants as printed, plus the degree-language
//! forms they are compared with. Evaluators are total: out-of-range
//! factorials contribute zero.

use std::collections::BTreeMap;

use crate::qcalc::{exp_int, QContext};
use crate::scalar::{Coefficient, Scalar};
use crate::symbol::SymbolPoly;

/// Four indices `(a, b, c, d)`: the two basis monomials `(a, b)` and `(c, d)`
/// in the key convention of the ordering at hand.
pub type Indices = (u32, u32, u32, u32);

/// How the exponents of the standard-ordered q-algebra display are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardReading {
    /// Weights from the operator degrees: `q^{x(A)p(B)}` and `q^{p(A)x(B)}`.
    Degree,
    /// Exponents exactly as displayed.
    Verbatim,
    /// Displayed exponents with the two indices of the left monomial swapped.
    Transposed,
}

impl StandardReading {
    pub fn name(self) -> &'static str {
        match self {
            StandardReading::Degree => "degree",
            StandardReading::Verbatim => "verbatim",
            StandardReading::Transposed => "transposed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureConstantFormula {
    /// Standard ordering at `q = 1`, keyed by `r`.
    Standard,
    /// Antistandard ordering at `q = 1`, keyed by `r`.
    Antistandard,
    /// Weyl-basis coefficients `B^a`, keyed by `a`, as printed.
    WeylB,
    /// `B^a` with `(2a+1-c)! c!` in the denominator and an overall `2^{-2a}`.
    WeylBCorrected,
    StandardQ(StandardReading),
    AntistandardQ,
    /// q-factorial version of `B^a`, as printed.
    WeylGf,
}

impl StructureConstantFormula {
    pub fn name(self) -> String {
        match self {
            StructureConstantFormula::Standard => "standard".into(),
            StructureConstantFormula::Antistandard => "antistandard".into(),
            StructureConstantFormula::WeylB => "weyl-b".into(),
            StructureConstantFormula::WeylBCorrected => "weyl-b-corrected".into(),
            StructureConstantFormula::StandardQ(r) => format!("standard-q-{}", r.name()),
            StructureConstantFormula::AntistandardQ => "antistandard-q".into(),
            StructureConstantFormula::WeylGf => "weyl-gf".into(),
        }
    }

    /// Nonzero coefficients, keyed by `r` (power of h) or by `a` (Weyl sector).
    pub fn evaluate(self, idx: Indices, ctx: &QContext) -> BTreeMap<u32, Scalar> {
        let raw = match self {
            StructureConstantFormula::Standard => w_inf(idx, false),
            StructureConstantFormula::Antistandard => w_inf(idx, true),
            StructureConstantFormula::WeylB => weyl_b(idx, &QContext::generic(1).at_q1(), false),
            StructureConstantFormula::WeylBCorrected => weyl_b(idx, &QContext::generic(1).at_q1(), true),
            StructureConstantFormula::StandardQ(reading) => standard_q(idx, reading, ctx),
            StructureConstantFormula::AntistandardQ => antistandard_q(idx, ctx),
            StructureConstantFormula::WeylGf => weyl_b(idx, ctx, false),
        };
        raw.into_iter().filter(|(_, s)| !s.is_zero()).collect()
    }
}

fn r_range(idx: Indices) -> std::ops::RangeInclusive<u32> {
    let (a, b, c, d) = idx;
    1..=a.max(b).max(c).max(d)
}

fn sign(r: u32) -> Scalar {
    if r.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

fn w_inf((a, b, c, d): Indices, anti: bool) -> BTreeMap<u32, Scalar> {
    let one = QContext::generic(1).at_q1();
    let bin = |n: u32, r: u32| one.q_binomial(n as i64, r as i64);
    r_range((a, b, c, d))
        .map(|r| {
            let s = one
                .q_factorial(r)
                .mul(&bin(c, r).mul(&bin(b, r)).sub(&bin(a, r).mul(&bin(d, r))));
            (r, if anti { sign(r).mul(&s) } else { s })
        })
        .collect()
}

// Display indices: left monomial X^n P^m, right X^k P^l, i.e. (a, b, c, d) = (n, m, k, l).
fn standard_q((a, b, c, d): Indices, reading: StandardReading, ctx: &QContext) -> BTreeMap<u32, Scalar> {
    let (n, m, k, l) = (a as i64, b as i64, c as i64, d as i64);
    let bin = |x: i64, r: i64| ctx.q_binomial(x, r);
    r_range((a, b, c, d))
        .map(|r| {
            let ri = r as i64;
            let (e1, e2) = match reading {
                StandardReading::Degree => (n * l + (m - ri) * (k - ri), m * k + (l - ri) * (n - ri)),
                StandardReading::Verbatim => ((k - ri) * (n - ri) + m * l, (m - ri) * (l - ri) + n * k),
                StandardReading::Transposed => ((k - ri) * (m - ri) + n * l, (n - ri) * (l - ri) + m * k),
            };
            let (first, second) = match reading {
                StandardReading::Degree => (bin(m, ri).mul(&bin(k, ri)), bin(l, ri).mul(&bin(n, ri))),
                _ => (bin(k, ri).mul(&bin(m, ri)), bin(n, ri).mul(&bin(l, ri))),
            };
            let s = ctx
                .q_factorial(r)
                .mul(&ctx.q_pow_int(e1).mul(&first).sub(&ctx.q_pow_int(e2).mul(&second)));
            (r, s)
        })
        .collect()
}

// Display indices: left monomial P^n X^m, right P^k X^l, i.e. (a, b, c, d) = (n, m, k, l).
fn antistandard_q((a, b, c, d): Indices, ctx: &QContext) -> BTreeMap<u32, Scalar> {
    let (n, m, k, l) = (a as i64, b as i64, c as i64, d as i64);
    let bin = |x: i64, r: i64| ctx.q_binomial(x, r);
    r_range((a, b, c, d))
        .map(|r| {
            let ri = r as i64;
            let w = sign(r).mul(&ctx.q_pow_int(ri * (ri - 1) / 2)).mul(&ctx.q_factorial(r));
            let s = w.mul(&bin(k, ri).mul(&bin(m, ri)).sub(&bin(n, ri).mul(&bin(l, ri))));
            (r, s)
        })
        .collect()
}

/// Upper summation bound `min(⌊(m+k-1)/2⌋, ⌊(n+l-1)/2⌋)`, or `None` when negative.
pub fn weyl_bound((m, n, k, l): Indices) -> Option<u32> {
    let f = |s: u32| (s as i64 - 1).div_euclid(2);
    let b = f(m + k).min(f(n + l));
    (b >= 0).then_some(b as u32)
}

// Weyl indices: [T_{m,n}, T_{k,l}], T_{m,n} with m P's and n X's.
fn weyl_b((m, n, k, l): Indices, ctx: &QContext, corrected: bool) -> BTreeMap<u32, Scalar> {
    let mut out = BTreeMap::new();
    if (m == 0 && n == 0) || (k == 0 && l == 0) {
        return out;
    }
    let Some(b) = weyl_bound((m, n, k, l)) else {
        return out;
    };
    let rf = |x: i64| ctx.recip_q_factorial(x);
    let num = [m, n, k, l].iter().fold(Scalar::one(), |acc, &x| acc.mul(&ctx.q_factorial(x)));
    let (mi, ni, ki, li, bi) = (m as i64, n as i64, k as i64, l as i64, b as i64);
    for a in 0..=bi {
        let mut s = Scalar::zero();
        for c in 0..=2 * a + 1 {
            let j = if corrected { c } else { bi };
            let den = rf(2 * a + 1 - j)
                .mul(&rf(j))
                .mul(&rf(mi + c - 2 * a - 1))
                .mul(&rf(ni - c))
                .mul(&rf(ki - c))
                .mul(&rf(li + c - 2 * a - 1));
            s = s.add(&sign(c as u32).mul(&num).mul(&den));
        }
        if corrected {
            s = s.mul(&Scalar::ratio(1, 4).pow(a as u32));
        }
        out.insert(a as u32, s);
    }
    out
}

/// The Weyl-sector formula as a symbol: `Σ_a B^a h^{2a} p^{m+k-2a-1} x^{n+l-2a-1}`
/// (the commutator divided by one power of h).
pub fn weyl_symbol(formula: StructureConstantFormula, idx: Indices, ctx: &QContext) -> SymbolPoly {
    let (m, n, k, l) = idx;
    let mut out = SymbolPoly::zero();
    for (a, s) in formula.evaluate(idx, ctx) {
        let p = (m + k) as i64 - 2 * a as i64 - 1;
        let x = (n + l) as i64 - 2 * a as i64 - 1;
        out.add_assign(&SymbolPoly::term(
            crate::symbol::SymbolMonomial::new(exp_int(p), exp_int(x)),
            Coefficient::monomial(s, 2 * a),
        ));
    }
    out
}

/// `r=1: …; r=2: …` or `0`.
pub fn render_table(key: &str, table: &BTreeMap<u32, Scalar>) -> String {
    if table.is_empty() {
        return "0".into();
    }
    table
        .iter()
        .map(|(r, s)| format!("{key}={r}: {}", s.render()))
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RatFunc;

    fn q(k: i64) -> Scalar {
        RatFunc::q_power(k, 1).into()
    }

    #[test]
    fn qsal_readings_on_desk_case() {
        let c = QContext::generic(2);
        let deg = StructureConstantFormula::StandardQ(StandardReading::Degree).evaluate((2, 1, 1, 2), &c);
        let one_q = Scalar::one().add(&q(1));
        assert_eq!(deg[&1], q(4).sub(&q(2).mul(&one_q).mul(&one_q)));
        assert_eq!(deg[&2], q(1).mul(&one_q).neg());
        let tr = StructureConstantFormula::StandardQ(StandardReading::Transposed).evaluate((2, 1, 1, 2), &c);
        assert_eq!(deg, tr);
    }

    #[test]
    fn qaal_desk_cases() {
        let c = QContext::generic(2);
        let t = StructureConstantFormula::AntistandardQ.evaluate((2, 1, 1, 2), &c);
        assert_eq!(render_table("r", &t), "r=1: 2*q+q^2; r=2: -q-q^2");
        let t = StructureConstantFormula::AntistandardQ.evaluate((2, 0, 0, 1), &c);
        assert_eq!(render_table("r", &t), "r=1: 1+q");
    }

    #[test]
    fn weyl_b_desk_cases() {
        let c = QContext::generic(2);
        let printed = StructureConstantFormula::WeylB.evaluate((3, 0, 0, 3), &c);
        assert_eq!(render_table("a", &printed), "a=0: 9; a=1: 18");
        let fixed = StructureConstantFormula::WeylBCorrected.evaluate((3, 0, 0, 3), &c);
        assert_eq!(render_table("a", &fixed), "a=0: 9; a=1: 3/2");
        let t = StructureConstantFormula::WeylB.evaluate((2, 0, 0, 2), &c);
        assert_eq!(render_table("a", &t), "a=0: 4");
        assert!(StructureConstantFormula::WeylGf.evaluate((0, 0, 2, 1), &c).is_empty());
    }
}
