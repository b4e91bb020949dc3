//! Commuting symbols `p^a x^b` with rational exponents, Jackson
//! q-derivatives, and the symbol / quantization maps.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::operator::{NormalForm, OrderingScheme};
use crate::qcalc::{exp_int, falling_factorial, is_nonneg_integer, render_exponent, Exponent, QContext};
use crate::render::{render_power, render_terms};
use crate::scalar::{Coefficient, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    P,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolMonomial {
    pub p: Exponent,
    pub x: Exponent,
}

impl SymbolMonomial {
    pub fn new(p: Exponent, x: Exponent) -> Self {
        SymbolMonomial { p, x }
    }

    pub fn int(p: i64, x: i64) -> Self {
        SymbolMonomial::new(exp_int(p), exp_int(x))
    }

    pub fn one() -> Self {
        SymbolMonomial::int(0, 0)
    }

    pub fn degree(&self, var: Var) -> Exponent {
        match var {
            Var::P => self.p,
            Var::X => self.x,
        }
    }

    pub fn mul(&self, other: &SymbolMonomial) -> SymbolMonomial {
        SymbolMonomial::new(self.p + other.p, self.x + other.x)
    }

    /// Lower the exponent of `var` by `r`.
    pub fn lower(&self, var: Var, r: u32) -> SymbolMonomial {
        let r = exp_int(r as i64);
        match var {
            Var::P => SymbolMonomial::new(self.p - r, self.x),
            Var::X => SymbolMonomial::new(self.p, self.x - r),
        }
    }

    pub fn is_integral(&self) -> bool {
        is_nonneg_integer(&self.p) && is_nonneg_integer(&self.x)
    }

    pub fn check_representable(&self, ctx: &QContext) -> Result<()> {
        ctx.check_representable(&self.p)?;
        ctx.check_representable(&self.x)
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (name, e) in [("p", self.p), ("x", self.x)] {
            if !e.is_zero() {
                parts.push(render_power(name, *e.numer(), *e.denom()));
            }
        }
        parts.join(" ")
    }
}

/// Formal combination of symbol monomials; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolPoly {
    terms: BTreeMap<SymbolMonomial, Coefficient>,
}

impl SymbolPoly {
    pub fn zero() -> Self {
        SymbolPoly::default()
    }

    pub fn one() -> Self {
        SymbolPoly::constant(Coefficient::one())
    }

    pub fn constant(c: Coefficient) -> Self {
        SymbolPoly::term(SymbolMonomial::one(), c)
    }

    pub fn scalar(s: Scalar) -> Self {
        SymbolPoly::constant(Coefficient::constant(s))
    }

    pub fn monomial(m: SymbolMonomial) -> Self {
        SymbolPoly::term(m, Coefficient::one())
    }

    /// `p^a x^b` with integer exponents.
    pub fn px(a: i64, b: i64) -> Self {
        SymbolPoly::monomial(SymbolMonomial::int(a, b))
    }

    pub fn term(m: SymbolMonomial, c: Coefficient) -> Self {
        let mut f = SymbolPoly::zero();
        f.add_term(m, &c);
        f
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SymbolMonomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn get(&self, m: &SymbolMonomial) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: SymbolMonomial, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &SymbolPoly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn add(&self, other: &SymbolPoly) -> SymbolPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> SymbolPoly {
        SymbolPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn sub(&self, other: &SymbolPoly) -> SymbolPoly {
        self.add(&other.neg())
    }

    /// Ordinary commutative product.
    pub fn mul(&self, other: &SymbolPoly) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, &v.mul(c));
        }
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> SymbolPoly {
        self.scale(&Coefficient::constant(s.clone()))
    }

    pub fn try_map(&self, f: impl Fn(&Coefficient) -> Result<Coefficient>) -> Result<SymbolPoly> {
        let mut out = SymbolPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c)?);
        }
        Ok(out)
    }

    pub fn eval_q1(&self) -> Result<SymbolPoly> {
        self.try_map(Coefficient::eval_q1)
    }

    /// The `h^0` part.
    pub fn eval_h0(&self) -> SymbolPoly {
        self.try_map(|c| Ok(Coefficient::constant(c.eval_h0()))).expect("infallible")
    }

    pub fn divide_exact_h(&self) -> Result<SymbolPoly> {
        self.try_map(Coefficient::divide_exact_h)
    }

    pub fn check_representable(&self, ctx: &QContext) -> Result<()> {
        self.terms.keys().try_for_each(|m| m.check_representable(ctx))
    }

    /// True when any scalar carries a κ part.
    pub fn has_kappa(&self) -> bool {
        self.terms.values().any(|c| c.terms().any(|(_, s)| s.has_kappa()))
    }

    /// Canonical rendering: monomials by `(p, x)` descending, `h` ascending.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().rev().flat_map(|(m, c)| {
            let mono = m.render();
            c.terms().map(move |(k, s)| (s.clone(), k, mono.clone())).collect::<Vec<_>>()
        }))
    }
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `Π_{i<r} [a - i]`: the scalar picked up by `D^r z^a`.
pub fn q_falling(a: &Exponent, r: u32, ctx: &QContext) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for i in 0..r as i64 {
        let f = ctx.q_integer(&(*a - i))?;
        if f.is_zero() {
            return Ok(Scalar::zero());
        }
        acc = acc.mul(&f);
    }
    Ok(acc)
}

/// Jackson derivative `D_z f = (f(z) - f(qz)) / ((1-q) z)`, applied
/// monomial-wise as `z^a -> [a] z^{a-1}`.
pub fn q_derivative(var: Var, f: &SymbolPoly, ctx: &QContext) -> Result<SymbolPoly> {
    q_derivative_n(var, f, 1, ctx)
}

/// `r`-fold Jackson derivative.
pub fn q_derivative_n(var: Var, f: &SymbolPoly, r: u32, ctx: &QContext) -> Result<SymbolPoly> {
    let mut out = SymbolPoly::zero();
    for (m, c) in f.terms() {
        let s = q_falling(&m.degree(var), r, ctx)?;
        out.add_term(m.lower(var, r), &c.scale(&s));
    }
    Ok(out)
}

/// Ordinary partial derivative.
pub fn derivative(var: Var, f: &SymbolPoly) -> SymbolPoly {
    let mut out = SymbolPoly::zero();
    for (m, c) in f.terms() {
        let s = falling_factorial(&m.degree(var), 1);
        out.add_term(m.lower(var, 1), &c.scale(&s));
    }
    out
}

/// Symbol map: standard `X^a P^b -> x^a p^b`, antistandard `P^a X^b -> p^a x^b`.
pub fn symbol_of(nf: &NormalForm) -> SymbolPoly {
    let mut out = SymbolPoly::zero();
    for (&(a, b), c) in nf.terms() {
        let m = match nf.ordering() {
            OrderingScheme::Standard => SymbolMonomial::int(b as i64, a as i64),
            OrderingScheme::Antistandard => SymbolMonomial::int(a as i64, b as i64),
        };
        out.add_term(m, c);
    }
    out
}

/// Inverse of [`symbol_of`]; exponents must be non-negative integers.
pub fn quantize(ordering: OrderingScheme, f: &SymbolPoly) -> Result<NormalForm> {
    let mut nf = NormalForm::zero(ordering);
    for (m, c) in f.terms() {
        for e in [m.p, m.x] {
            if !e.is_integer() || e.is_negative() {
                return Err(Error::NonQuantizableExponent(render_exponent(&e)));
            }
        }
        let (p, x) = (m.p.to_integer() as u32, m.x.to_integer() as u32);
        let key = match ordering {
            OrderingScheme::Standard => (x, p),
            OrderingScheme::Antistandard => (p, x),
        };
        nf.add_term(key, c);
    }
    Ok(nf)
}
