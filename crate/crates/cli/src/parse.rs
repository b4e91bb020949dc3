//! Recursive-descent parser for operator and symbol expressions.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := product ('*' product)*
//! product  := quotient+                      (juxtaposition)
//! quotient := power ('/' power)*
//! power    := atom ['^' exponent]
//! atom     := integer | 'q' | 'h' | letter | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! ```
//!
//! Letters are `P`, `X` for operators and `p`, `x` for symbols. The canonical
//! renderings of normal forms and symbols parse back to the same value.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use qmoyal_core::{
    Coefficient, Exponent, Letter, OperatorExpr, OperatorWord, QContext, Rational, Scalar, SymbolMonomial,
    SymbolPoly,
};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(char),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Name(c) | Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else if c.is_ascii_alphabetic() {
            out.push((i, Tok::Name(c)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().expect("in bounds");
            return Err(ParseError {
                offset: i,
                expected: vec!["a term".into()],
                found: format!("`{ch}`"),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

/// Target algebra of a parse.
pub trait Algebra: Sized + Clone {
    const LETTERS: [char; 2];
    fn coefficient(c: Coefficient) -> Self;
    fn letter(name: char, e: Exponent, ctx: &QContext) -> Result<Self, CliError>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The value as an h-free scalar, if it is one.
    fn as_scalar(&self) -> Option<Scalar>;
    /// Whether letter exponents may be fractional or negative.
    fn rational_exponents() -> bool;
}

impl Algebra for OperatorExpr {
    const LETTERS: [char; 2] = ['P', 'X'];

    fn coefficient(c: Coefficient) -> Self {
        OperatorExpr::scalar(c)
    }

    fn letter(name: char, e: Exponent, _ctx: &QContext) -> Result<Self, CliError> {
        let l = if name == 'P' { Letter::P } else { Letter::X };
        Ok(OperatorExpr::word(OperatorWord::letter(l, e.to_integer() as u32)))
    }

    fn add(&self, other: &Self) -> Self {
        OperatorExpr::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        OperatorExpr::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        OperatorExpr::mul(self, other)
    }

    fn neg(&self) -> Self {
        OperatorExpr::neg(self)
    }

    fn as_scalar(&self) -> Option<Scalar> {
        let mut terms = self.terms();
        match (terms.next(), terms.next()) {
            (None, _) => Some(Scalar::zero()),
            (Some((w, c)), None) if w.is_identity() => scalar_of(c),
            _ => None,
        }
    }

    fn rational_exponents() -> bool {
        false
    }
}

impl Algebra for SymbolPoly {
    const LETTERS: [char; 2] = ['p', 'x'];

    fn coefficient(c: Coefficient) -> Self {
        SymbolPoly::constant(c)
    }

    fn letter(name: char, e: Exponent, ctx: &QContext) -> Result<Self, CliError> {
        ctx.check_representable(&e)?;
        let zero = Exponent::zero();
        let m = if name == 'p' { SymbolMonomial::new(e, zero) } else { SymbolMonomial::new(zero, e) };
        Ok(SymbolPoly::monomial(m))
    }

    fn add(&self, other: &Self) -> Self {
        SymbolPoly::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        SymbolPoly::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        SymbolPoly::mul(self, other)
    }

    fn neg(&self) -> Self {
        SymbolPoly::neg(self)
    }

    fn as_scalar(&self) -> Option<Scalar> {
        let mut terms = self.terms();
        match (terms.next(), terms.next()) {
            (None, _) => Some(Scalar::zero()),
            (Some((m, c)), None) if *m == SymbolMonomial::one() => scalar_of(c),
            _ => None,
        }
    }

    fn rational_exponents() -> bool {
        true
    }
}

fn scalar_of(c: &Coefficient) -> Option<Scalar> {
    match c.h_degree() {
        None => Some(Scalar::zero()),
        Some(0) => Some(c.get(0)),
        Some(_) => None,
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ctx: &'a QContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> CliError {
        CliError::Parse(ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn starts_atom<A: Algebra>(&self) -> bool {
        match self.peek() {
            Tok::Int(_) => true,
            Tok::Name(c) => *c == 'q' || *c == 'h' || A::LETTERS.contains(c),
            Tok::Sym('(') => true,
            _ => false,
        }
    }

    fn expr<A: Algebra>(&mut self) -> Result<A, CliError> {
        let mut acc = if self.eat('-') {
            self.term::<A>()?.neg()
        } else {
            self.eat('+');
            self.term::<A>()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term::<A>()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term::<A>()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<A: Algebra>(&mut self) -> Result<A, CliError> {
        let mut acc = self.product::<A>()?;
        while self.eat('*') {
            acc = acc.mul(&self.product::<A>()?);
        }
        Ok(acc)
    }

    fn product<A: Algebra>(&mut self) -> Result<A, CliError> {
        let mut acc = self.quotient::<A>()?;
        while self.starts_atom::<A>() {
            acc = acc.mul(&self.quotient::<A>()?);
        }
        Ok(acc)
    }

    fn quotient<A: Algebra>(&mut self) -> Result<A, CliError> {
        let mut acc = self.power::<A>()?;
        while *self.peek() == Tok::Sym('/') {
            let at = self.offset();
            self.bump();
            let d = self.power::<A>()?;
            let inv = d.as_scalar().and_then(|s| s.inv()).ok_or_else(|| {
                CliError::Parse(ParseError {
                    offset: at,
                    expected: vec!["a nonzero scalar divisor".into()],
                    found: "a non-scalar or zero divisor".into(),
                })
            })?;
            acc = acc.mul(&A::coefficient(Coefficient::constant(inv)));
        }
        Ok(acc)
    }

    fn power<A: Algebra>(&mut self) -> Result<A, CliError> {
        let letter_expected = format!("`{}` or `{}`", A::LETTERS[0], A::LETTERS[1]);
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let base = A::coefficient(Coefficient::constant(Scalar::from_rational(Rational::from_integer(n))));
                self.nat_power(base)
            }
            Tok::Name('q') => {
                self.bump();
                let e = if self.eat('^') { self.exponent()? } else { Exponent::from_integer(1) };
                Ok(A::coefficient(Coefficient::constant(self.ctx.q_power(&e)?)))
            }
            Tok::Name('h') => {
                self.bump();
                let k = if self.eat('^') { self.nat_exponent()? } else { 1 };
                Ok(A::coefficient(Coefficient::h_power(k)))
            }
            Tok::Name(c) if A::LETTERS.contains(&c) => {
                self.bump();
                let e = if self.eat('^') {
                    if A::rational_exponents() {
                        self.exponent()?
                    } else {
                        Exponent::from_integer(self.nat_exponent()? as i64)
                    }
                } else {
                    Exponent::from_integer(1)
                };
                A::letter(c, e, self.ctx)
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr::<A>()?;
                if !self.eat(')') {
                    return Err(self.error(&["`)`", "`+`", "`-`", "`*`"]));
                }
                self.nat_power(inner)
            }
            _ => Err(self.error(&["a number", "`q`", "`h`", &letter_expected, "`(`"])),
        }
    }

    /// Optional `^n` applied by repeated multiplication.
    fn nat_power<A: Algebra>(&mut self, base: A) -> Result<A, CliError> {
        if !self.eat('^') {
            return Ok(base);
        }
        let n = self.nat_exponent()?;
        let mut acc = A::coefficient(Coefficient::one());
        for _ in 0..n {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn int(&mut self) -> Result<i64, CliError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let v = i64::try_from(&n).map_err(|_| self.error(&["a small integer"]))?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.error(&["an integer"])),
        }
    }

    fn nat_exponent(&mut self) -> Result<u32, CliError> {
        if self.eat('(') {
            let v = self.nat_exponent()?;
            if !self.eat(')') {
                return Err(self.error(&["`)`"]));
            }
            return Ok(v);
        }
        match self.peek().clone() {
            Tok::Int(n) => {
                let v = u32::try_from(&n).map_err(|_| self.error(&["a non-negative integer exponent"]))?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.error(&["a non-negative integer exponent"])),
        }
    }

    fn exponent(&mut self) -> Result<Exponent, CliError> {
        if self.eat('(') {
            let neg = self.eat('-');
            let n = self.int()?;
            let d = if self.eat('/') { self.int()? } else { 1 };
            if d == 0 {
                return Err(self.error(&["a nonzero denominator"]));
            }
            if !self.eat(')') {
                return Err(self.error(&["`)`", "`/`"]));
            }
            let r = Ratio::new(n, d);
            return Ok(if neg { -r } else { r });
        }
        let neg = self.eat('-');
        let n = self.int()?;
        Ok(Exponent::from_integer(if neg { -n } else { n }))
    }

    fn finish<A: Algebra>(&mut self) -> Result<A, CliError> {
        let v = self.expr::<A>()?;
        if *self.peek() != Tok::End {
            return Err(self.error(&["`+`", "`-`", "`*`", "end of input"]));
        }
        Ok(v)
    }
}

fn parse<A: Algebra>(src: &str, ctx: &QContext) -> Result<A, CliError> {
    let toks = lex(src).map_err(CliError::Parse)?;
    Parser { toks, pos: 0, ctx }.finish::<A>()
}

/// Parse an operator expression in `P`, `X`, `q`, `h`.
pub fn parse_operator_expr(src: &str, ctx: &QContext) -> Result<OperatorExpr, CliError> {
    parse(src, ctx)
}

/// Parse a symbol expression in `p`, `x`, `q`, `h`; exponents must be
/// representable with the context's root denominator.
pub fn parse_symbol_expr(src: &str, ctx: &QContext) -> Result<SymbolPoly, CliError> {
    parse(src, ctx)
}

/// Rational exponent from text such as `1/2`, `-1` or `(1/3)`.
pub fn parse_exponent(src: &str) -> Result<Exponent, CliError> {
    let s = src.trim().trim_start_matches('(').trim_end_matches(')');
    let bad = || CliError::Usage(format!("not a rational exponent: `{src}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmoyal_core::operator::normal_order;
    use qmoyal_core::{exp, OrderingScheme};

    fn ctx() -> QContext {
        QContext::generic(2)
    }

    #[test]
    fn operator_examples() {
        let c = ctx();
        let e = parse_operator_expr("P X - q X P", &c).unwrap();
        assert_eq!(normal_order(&e, OrderingScheme::Standard, &c).render(), "h");
        let e = parse_operator_expr("P^2 X^2", &c).unwrap();
        assert_eq!(e.terms().count(), 1);
        let err = parse_operator_expr("P^(1/2)", &c).unwrap_err();
        match err {
            CliError::Parse(p) => assert_eq!(p.offset, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn symbol_examples() {
        let c = ctx();
        assert_eq!(parse_symbol_expr("p^2 x", &c).unwrap(), SymbolPoly::px(2, 1));
        let half = parse_symbol_expr("x^(1/2)", &c).unwrap();
        assert_eq!(half, SymbolPoly::monomial(SymbolMonomial::new(exp(0, 1), exp(1, 2))));
        assert!(matches!(
            parse_symbol_expr("x^(1/3)", &c),
            Err(CliError::Core(qmoyal_core::Error::NonRepresentableExponent { .. }))
        ));
    }

    #[test]
    fn canonical_renderings_round_trip() {
        let c = QContext::generic(4);
        for s in [
            "q^2 p x^2 + (1+q) h x",
            "q^-1 p x - q^-1 h",
            "p^3 x^3 + 9/2 h p^2 x^2 + 9/2 h^2 p x + 3/4 h^3",
            "1/(1+q^(1/2)) x^(-1/2)",
            "(q^2+2*q^3) p^2 x^2 + (q+q^2) h p x",
            "-q",
            "0",
            "3/4*q^2 p^(1/4) x^-1",
        ] {
            let v = parse_symbol_expr(s, &c).unwrap();
            assert_eq!(v.render(), s);
        }
        let e = parse_operator_expr("q X P + h", &c).unwrap();
        assert_eq!(normal_order(&e, OrderingScheme::Standard, &c).render(), "q X P + h");
    }

    #[test]
    fn errors_carry_offsets() {
        let c = ctx();
        let CliError::Parse(e) = parse_symbol_expr("p + * x", &c).unwrap_err() else { panic!() };
        assert_eq!(e.offset, 4);
        let CliError::Parse(e) = parse_symbol_expr("(p + x", &c).unwrap_err() else { panic!() };
        assert_eq!(e.offset, 6);
        let CliError::Parse(e) = parse_operator_expr("P x", &c).unwrap_err() else { panic!() };
        assert_eq!(e.offset, 2);
        assert!(matches!(parse_symbol_expr("p / x", &c), Err(CliError::Parse(_))));
    }

    #[test]
    fn exponent_arguments() {
        assert_eq!(parse_exponent("1/2").unwrap(), exp(1, 2));
        assert_eq!(parse_exponent("(-1/3)").unwrap(), exp(-1, 3));
        assert_eq!(parse_exponent("2/-4").unwrap(), exp(-1, 2));
        assert!(parse_exponent("x").is_err());
    }
}
