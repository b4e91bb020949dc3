//! Star products on symbols, the q-Moyal and q-Poisson brackets, and
//! truncated series in a formal time parameter.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operator::OrderingScheme;
use crate::qcalc::{exp_int, factorial, falling_factorial, is_nonneg_integer, Exponent, QContext};
use crate::scalar::{Coefficient, Scalar};
use crate::symbol::{q_falling, SymbolMonomial, SymbolPoly, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarProductId {
    HbarStandard,
    HbarAnti,
    HbarWeyl,
    ClassicalQStandard,
    ClassicalQAnti,
    ClassicalQWeyl,
    QStandard,
    QAnti,
    QWeylGF,
}

impl StarProductId {
    pub const ALL: [StarProductId; 9] = [
        StarProductId::HbarStandard,
        StarProductId::HbarAnti,
        StarProductId::HbarWeyl,
        StarProductId::ClassicalQStandard,
        StarProductId::ClassicalQAnti,
        StarProductId::ClassicalQWeyl,
        StarProductId::QStandard,
        StarProductId::QAnti,
        StarProductId::QWeylGF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StarProductId::HbarStandard => "hbar-standard",
            StarProductId::HbarAnti => "hbar-anti",
            StarProductId::HbarWeyl => "hbar-weyl",
            StarProductId::ClassicalQStandard => "classical-q-standard",
            StarProductId::ClassicalQAnti => "classical-q-anti",
            StarProductId::ClassicalQWeyl => "classical-q-weyl",
            StarProductId::QStandard => "q-standard",
            StarProductId::QAnti => "q-anti",
            StarProductId::QWeylGF => "q-weyl-gf",
        }
    }

    /// Operator ordering whose normal-ordered product this star product mirrors.
    pub fn ordering(self) -> Option<OrderingScheme> {
        match self {
            StarProductId::QStandard | StarProductId::HbarStandard => Some(OrderingScheme::Standard),
            StarProductId::QAnti | StarProductId::HbarAnti => Some(OrderingScheme::Antistandard),
            _ => None,
        }
    }

    /// The undeformed product a q-product reduces to at `q = 1`.
    pub fn q1_counterpart(self) -> StarProductId {
        match self {
            StarProductId::QStandard => StarProductId::HbarStandard,
            StarProductId::QAnti => StarProductId::HbarAnti,
            StarProductId::QWeylGF => StarProductId::HbarWeyl,
            other => other,
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(
            self,
            StarProductId::ClassicalQStandard | StarProductId::ClassicalQAnti | StarProductId::ClassicalQWeyl
        )
    }

    fn needs_half_powers(self) -> bool {
        matches!(self, StarProductId::ClassicalQWeyl | StarProductId::QWeylGF)
    }
}

impl fmt::Display for StarProductId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StarProductId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StarProductId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown star product `{s}`")))
    }
}

/// Bracket weight `α(f, g) = (x-degree of f)·(p-degree of g)`.
pub fn alpha(f: &SymbolMonomial, g: &SymbolMonomial) -> Exponent {
    f.x * g.p
}

/// Number of terms a derivative sum can carry: exact when some exponent
/// is a non-negative integer, otherwise the context cap.
fn sum_bound(exps: &[Exponent], ctx: &QContext) -> u32 {
    exps.iter()
        .filter(|e| is_nonneg_integer(e))
        .map(|e| e.to_integer() as u32)
        .min()
        .unwrap_or(ctx.max_h_order)
}

fn half_check(ctx: &QContext) -> Result<()> {
    if !ctx.root_denominator.is_multiple_of(2) {
        return Err(Error::NonRepresentableExponent {
            exponent: "1/2".into(),
            root_denominator: ctx.root_denominator,
        });
    }
    Ok(())
}

fn h_term(out: &mut SymbolPoly, m: SymbolMonomial, s: Scalar, r: u32) {
    if !s.is_zero() {
        out.add_term(m, &Coefficient::monomial(s, r));
    }
}

/// Star product of two monomials with unit coefficients.
pub fn star_monomial(
    id: StarProductId,
    f: &SymbolMonomial,
    g: &SymbolMonomial,
    ctx: &QContext,
) -> Result<SymbolPoly> {
    if id.needs_half_powers() {
        half_check(ctx)?;
    }
    let (a, b, c, d) = (f.p, f.x, g.p, g.x);
    let prod = f.mul(g);
    let mut out = SymbolPoly::zero();
    match id {
        StarProductId::ClassicalQStandard => {
            h_term(&mut out, prod, ctx.q_power(&(a * d))?, 0);
        }
        StarProductId::ClassicalQAnti => {
            h_term(&mut out, prod, ctx.q_power(&-(b * c))?, 0);
        }
        StarProductId::ClassicalQWeyl => {
            h_term(&mut out, prod, ctx.q_power(&(-(b * c - a * d) / 2))?, 0);
        }
        StarProductId::HbarStandard => {
            for r in 0..=sum_bound(&[a, d], ctx) {
                let s = falling_factorial(&a, r).mul(&falling_factorial(&d, r)).mul(&inv_factorial(r));
                h_term(&mut out, lowered(prod, r), s, r);
            }
        }
        StarProductId::HbarAnti => {
            for r in 0..=sum_bound(&[b, c], ctx) {
                let s = falling_factorial(&b, r).mul(&falling_factorial(&c, r)).mul(&inv_factorial(r));
                h_term(&mut out, lowered(prod, r), sign(r).mul(&s), r);
            }
        }
        StarProductId::HbarWeyl => {
            weyl_sum(&mut out, f, g, ctx, |e, r| Ok(falling_factorial(e, r)), inv_factorial)?;
        }
        StarProductId::QStandard => {
            for r in 0..=sum_bound(&[a, d], ctx) {
                let ri = exp_int(r as i64);
                let s = q_falling(&a, r, ctx)?
                    .mul(&q_falling(&d, r, ctx)?)
                    .mul(&ctx.recip_q_factorial(r as i64));
                if s.is_zero() {
                    continue;
                }
                let euler = ctx.q_power(&((a - ri) * (d - ri)))?;
                h_term(&mut out, lowered(prod, r), s.mul(&euler), r);
            }
        }
        StarProductId::QAnti => {
            let euler = ctx.q_power(&-(b * c))?;
            for r in 0..=sum_bound(&[b, c], ctx) {
                let s = q_falling(&b, r, ctx)?
                    .mul(&q_falling(&c, r, ctx)?)
                    .mul(&ctx.recip_q_factorial(r as i64));
                if s.is_zero() {
                    continue;
                }
                let w = sign(r).mul(&ctx.q_pow_int((r as i64) * (r as i64 - 1) / 2)).mul(&euler);
                h_term(&mut out, lowered(prod, r), s.mul(&w), r);
            }
        }
        StarProductId::QWeylGF => {
            let euler = ctx.q_power(&(-(b * c - a * d) / 2))?;
            let mut inner = SymbolPoly::zero();
            weyl_sum(&mut inner, f, g, ctx, |e, r| q_falling(e, r, ctx), |n| ctx.recip_q_factorial(n as i64))?;
            out = inner.scale_scalar(&euler);
        }
    }
    Ok(out)
}

fn lowered(m: SymbolMonomial, r: u32) -> SymbolMonomial {
    m.lower(Var::P, r).lower(Var::X, r)
}

fn sign(r: u32) -> Scalar {
    if r.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

fn inv_factorial(n: u32) -> Scalar {
    factorial(n).inv().expect("factorials are nonzero")
}

/// `Σ_α (-h/2)^α Σ_β (-1)^β w(α-β) w(β) (D_x^{α-β} D_p^β f)(D_p^{α-β} D_x^β g)`
/// with derivative scalars from `fall` and reciprocal factorials from `w`.
fn weyl_sum(
    out: &mut SymbolPoly,
    f: &SymbolMonomial,
    g: &SymbolMonomial,
    ctx: &QContext,
    fall: impl Fn(&Exponent, u32) -> Result<Scalar>,
    w: impl Fn(u32) -> Scalar,
) -> Result<()> {
    let (a, b, c, d) = (f.p, f.x, g.p, g.x);
    let side = |u: Exponent, v: Exponent| {
        if is_nonneg_integer(&u) && is_nonneg_integer(&v) {
            Some((u + v).to_integer() as u32)
        } else {
            None
        }
    };
    let bound = match (side(a, b), side(c, d)) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => ctx.max_h_order,
    };
    let prod = f.mul(g);
    let minus_half = Scalar::ratio(-1, 2);
    for alpha in 0..=bound {
        let mut s = Scalar::zero();
        for beta in 0..=alpha {
            let k = alpha - beta;
            let t = fall(&b, k)?.mul(&fall(&a, beta)?).mul(&fall(&c, k)?).mul(&fall(&d, beta)?);
            if t.is_zero() {
                continue;
            }
            s = s.add(&sign(beta).mul(&w(k)).mul(&w(beta)).mul(&t));
        }
        h_term(out, lowered(prod, alpha), s.mul(&minus_half.pow(alpha)), alpha);
    }
    Ok(())
}

/// Bilinear extension of [`star_monomial`].
pub fn star(id: StarProductId, f: &SymbolPoly, g: &SymbolPoly, ctx: &QContext) -> Result<SymbolPoly> {
    let mut out = SymbolPoly::zero();
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            let c = c1.mul(c2);
            out.add_assign(&star_monomial(id, m1, m2, ctx)?.scale(&c));
        }
    }
    Ok(out)
}

/// `(q^{α(f,g)} f⋆g - q^{α(g,f)} g⋆f) / h` for single monomials.
pub fn q_moyal_bracket_monomial(
    id: StarProductId,
    f: &SymbolMonomial,
    g: &SymbolMonomial,
    ctx: &QContext,
) -> Result<SymbolPoly> {
    let fg = star_monomial(id, f, g, ctx)?.scale_scalar(&ctx.q_power(&alpha(f, g))?);
    let gf = star_monomial(id, g, f, ctx)?.scale_scalar(&ctx.q_power(&alpha(g, f))?);
    fg.sub(&gf).divide_exact_h()
}

/// q-Moyal bracket, pairwise over the monomials of `f` and `g`.
pub fn q_moyal_bracket(id: StarProductId, f: &SymbolPoly, g: &SymbolPoly, ctx: &QContext) -> Result<SymbolPoly> {
    let mut out = SymbolPoly::zero();
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            out.add_assign(&q_moyal_bracket_monomial(id, m1, m2, ctx)?.scale(&c1.mul(c2)));
        }
    }
    Ok(out)
}

fn poisson_half(f: &SymbolMonomial, g: &SymbolMonomial, ctx: &QContext) -> Result<SymbolPoly> {
    let one = exp_int(1);
    let dpf = q_falling(&f.p, 1, ctx)?;
    let dxg = q_falling(&g.x, 1, ctx)?;
    if dpf.is_zero() || dxg.is_zero() {
        return Ok(SymbolPoly::zero());
    }
    let w = ctx.q_power(&alpha(f, g))?.mul(&ctx.q_power(&((f.p - one) * (g.x - one)))?);
    let m = f.lower(Var::P, 1).mul(&g.lower(Var::X, 1));
    Ok(SymbolPoly::term(m, Coefficient::constant(w.mul(&dpf).mul(&dxg))))
}

/// q-Poisson bracket, pairwise over monomials.
pub fn q_poisson_bracket(f: &SymbolPoly, g: &SymbolPoly, ctx: &QContext) -> Result<SymbolPoly> {
    let mut out = SymbolPoly::zero();
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            let b = poisson_half(m1, m2, ctx)?.sub(&poisson_half(m2, m1, ctx)?);
            out.add_assign(&b.scale(&c1.mul(c2)));
        }
    }
    Ok(out)
}

/// Cyclic sum `{f,{g,k}} + {g,{k,f}} + {k,{f,g}}` under a q-Moyal bracket.
pub fn jacobiator(
    id: StarProductId,
    f: &SymbolPoly,
    g: &SymbolPoly,
    k: &SymbolPoly,
    ctx: &QContext,
) -> Result<SymbolPoly> {
    let br = |a: &SymbolPoly, b: &SymbolPoly| q_moyal_bracket(id, a, b, ctx);
    Ok(br(f, &br(g, k)?)?.add(&br(g, &br(k, f)?)?).add(&br(k, &br(f, g)?)?))
}

/// Bracketing used when folding a chain of products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Association {
    Left,
    Right,
    Balanced,
}

impl Association {
    pub fn name(self) -> &'static str {
        match self {
            Association::Left => "left",
            Association::Right => "right",
            Association::Balanced => "balanced",
        }
    }
}

impl FromStr for Association {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Association::Left),
            "right" => Ok(Association::Right),
            "balanced" => Ok(Association::Balanced),
            _ => Err(Error::InvalidArgument(format!("unknown association `{s}`"))),
        }
    }
}

/// Fold a non-empty chain with a binary operation under the given bracketing.
pub fn associate<T: Clone>(items: &[T], assoc: Association, op: &dyn Fn(&T, &T) -> Result<T>) -> Result<T> {
    match items.len() {
        0 => Err(Error::InvalidArgument("empty product".into())),
        1 => Ok(items[0].clone()),
        n => match assoc {
            Association::Left => {
                let mut acc = items[0].clone();
                for it in &items[1..] {
                    acc = op(&acc, it)?;
                }
                Ok(acc)
            }
            Association::Right => {
                let mut acc = items[n - 1].clone();
                for it in items[..n - 1].iter().rev() {
                    acc = op(it, &acc)?;
                }
                Ok(acc)
            }
            Association::Balanced => {
                let (l, r) = items.split_at(n / 2);
                op(&associate(l, assoc, op)?, &associate(r, assoc, op)?)
            }
        },
    }
}

/// Values of a chain under every full bracketing (Catalan many), left-first order.
pub fn all_bracketings<T: Clone>(items: &[T], op: &dyn Fn(&T, &T) -> Result<T>) -> Result<Vec<T>> {
    let n = items.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty product".into()));
    }
    // table[i][len-1] holds every value of items[i..i+len]
    let mut table: Vec<Vec<Vec<T>>> = (0..n).map(|i| vec![vec![items[i].clone()]]).collect();
    for len in 2..=n {
        for i in 0..=n - len {
            let mut vals = Vec::new();
            for split in 1..len {
                let left = table[i][split - 1].clone();
                let right = table[i + split][len - split - 1].clone();
                for l in &left {
                    for r in &right {
                        vals.push(op(l, r)?);
                    }
                }
            }
            table[i].push(vals);
        }
    }
    Ok(table[0][n - 1].clone())
}

/// Chain of star products.
pub fn star_chain(id: StarProductId, factors: &[SymbolPoly], assoc: Association, ctx: &QContext) -> Result<SymbolPoly> {
    associate(factors, assoc, &|a, b| star(id, a, b, ctx))
}

/// Polynomial in a formal parameter `t` with symbol coefficients, truncated at order `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: u32,
    coeffs: Vec<SymbolPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: u32) -> Self {
        TruncatedSeries { order, coeffs: vec![SymbolPoly::zero(); order as usize + 1] }
    }

    pub fn constant(f: SymbolPoly, order: u32) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = f;
        s
    }

    /// Coefficients beyond the order are dropped.
    pub fn from_coeffs(order: u32, coeffs: Vec<SymbolPoly>) -> Self {
        let mut s = TruncatedSeries::zero(order);
        for (j, c) in coeffs.into_iter().enumerate().take(order as usize + 1) {
            s.coeffs[j] = c;
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, j: u32) -> &SymbolPoly {
        &self.coeffs[j as usize]
    }

    pub fn coeffs(&self) -> &[SymbolPoly] {
        &self.coeffs
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(other.order);
        TruncatedSeries::from_coeffs(order, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale_scalar(&self, s: &Scalar) -> TruncatedSeries {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| c.scale_scalar(s)).collect() }
    }

    /// Replace `t` by `c·t`.
    pub fn rescale_parameter(&self, c: &Scalar) -> TruncatedSeries {
        let mut pow = Scalar::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for f in &self.coeffs {
            coeffs.push(f.scale_scalar(&pow));
            pow = pow.mul(c);
        }
        TruncatedSeries { order: self.order, coeffs }
    }

    /// Cauchy product with `star` on the coefficients.
    pub fn star(&self, id: StarProductId, other: &TruncatedSeries, ctx: &QContext) -> Result<TruncatedSeries> {
        let order = self.order.min(other.order);
        let mut out = TruncatedSeries::zero(order);
        for i in 0..=order as usize {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order as usize - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = star(id, &self.coeffs[i], &other.coeffs[j], ctx)?;
                out.coeffs[i + j].add_assign(&prod);
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("[{}]", c.render()),
                1 => format!("t [{}]", c.render()),
                _ => format!("t^{j} [{}]", c.render()),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `N`-fold star product of a series with itself.
pub fn star_power(
    id: StarProductId,
    f: &TruncatedSeries,
    n: u32,
    assoc: Association,
    ctx: &QContext,
) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("star power needs N >= 1".into()));
    }
    let items = vec![f.clone(); n as usize];
    associate(&items, assoc, &|a, b| a.star(id, b, ctx))
}

/// Star power `f^{⋆j}` of a symbol.
pub fn star_pow(id: StarProductId, f: &SymbolPoly, j: u32, ctx: &QContext) -> Result<SymbolPoly> {
    let mut acc = SymbolPoly::one();
    for _ in 0..j {
        acc = star(id, &acc, f, ctx)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcalc::exp;
    use crate::ring::RatFunc;
    use crate::symbol::q_derivative_n;

    fn ctx() -> QContext {
        QContext::generic(2)
    }

    fn px(a: i64, b: i64) -> SymbolPoly {
        SymbolPoly::px(a, b)
    }

    fn st(id: StarProductId, f: &SymbolPoly, g: &SymbolPoly) -> String {
        star(id, f, g, &ctx()).unwrap().render()
    }

    #[test]
    fn star_examples() {
        use StarProductId::*;
        assert_eq!(st(QStandard, &px(1, 0), &px(0, 2)), "q^2 p x^2 + (1+q) h x");
        assert_eq!(st(QStandard, &px(0, 1), &px(1, 0)), "p x");
        assert_eq!(st(QAnti, &px(0, 1), &px(1, 0)), "q^-1 p x - q^-1 h");
        assert_eq!(st(ClassicalQStandard, &px(1, 0), &px(0, 1)), "q p x");
        assert_eq!(st(ClassicalQStandard, &px(2, 1), &px(1, 3)), "q^6 p^3 x^4");
        let c1 = ctx().at_q1();
        let w = star(HbarWeyl, &px(3, 0), &px(0, 3), &c1).unwrap();
        assert_eq!(w.render(), "p^3 x^3 + 9/2 h p^2 x^2 + 9/2 h^2 p x + 3/4 h^3");
    }

    #[test]
    fn weyl_products_need_even_root() {
        let odd = QContext::generic(3);
        for id in [StarProductId::QWeylGF, StarProductId::ClassicalQWeyl] {
            assert!(matches!(
                star(id, &px(1, 0), &px(0, 1), &odd),
                Err(Error::NonRepresentableExponent { .. })
            ));
        }
    }

    #[test]
    fn moyal_examples() {
        let c = ctx();
        let br = |f: &SymbolPoly, g: &SymbolPoly| q_moyal_bracket(StarProductId::QStandard, f, g, &c).unwrap().render();
        assert_eq!(br(&px(1, 0), &px(0, 1)), "1");
        assert_eq!(br(&px(1, 0), &px(0, 2)), "(1+q) x");
        assert_eq!(br(&px(2, 1), &px(1, 2)), "(q^2+2*q^3) p^2 x^2 + (q+q^2) h p x");
        for id in StarProductId::ALL {
            let f = px(2, 1).add(&px(0, 3));
            let c = if id.q1_counterpart() == id && !id.is_classical() { c.at_q1() } else { c };
            assert!(q_moyal_bracket(id, &f, &f, &c).unwrap().is_zero(), "{id}");
        }
    }

    #[test]
    fn poisson_examples() {
        let c = ctx();
        let pb = |f: &SymbolPoly, g: &SymbolPoly| q_poisson_bracket(f, g, &c).unwrap().render();
        assert_eq!(pb(&px(1, 0), &px(0, 1)), "1");
        assert_eq!(pb(&px(0, 1), &px(1, 0)), "-1");
        assert_eq!(pb(&px(2, 0), &px(0, 1)), "(1+q) p");
        assert_eq!(pb(&px(2, 0), &px(0, 2)), "(q+2*q^2+q^3) p x");
    }

    #[test]
    fn poisson_is_h0_of_moyal() {
        let c = ctx();
        for (a, b, cc, d) in [(1, 0, 0, 1), (2, 1, 1, 2), (3, 2, 0, 3), (1, 1, 2, 2)] {
            let (f, g) = (px(a, b), px(cc, d));
            let m = q_moyal_bracket(StarProductId::QStandard, &f, &g, &c).unwrap().eval_h0();
            assert_eq!(m, q_poisson_bracket(&f, &g, &c).unwrap());
        }
    }

    #[test]
    fn hbar_standard_matches_derivative_series() {
        let c1 = ctx().at_q1();
        let (f, g) = (px(3, 1).add(&px(1, 2)), px(2, 3));
        let mut direct = SymbolPoly::zero();
        for r in 0..=4 {
            let dp = q_derivative_n(Var::P, &f, r, &c1).unwrap();
            let dx = q_derivative_n(Var::X, &g, r, &c1).unwrap();
            let w = factorial(r).inv().unwrap();
            direct.add_assign(&dp.mul(&dx).scale(&Coefficient::monomial(w, r)));
        }
        assert_eq!(star(StarProductId::HbarStandard, &f, &g, &c1).unwrap(), direct);
    }

    #[test]
    fn q1_reduction() {
        let c = ctx();
        let c1 = c.at_q1();
        for id in [StarProductId::QStandard, StarProductId::QAnti, StarProductId::QWeylGF] {
            for (a, b, cc, d) in [(1, 2, 2, 1), (3, 0, 0, 3), (2, 2, 2, 2)] {
                let lhs = star(id, &px(a, b), &px(cc, d), &c).unwrap().eval_q1().unwrap();
                let rhs = star(id.q1_counterpart(), &px(a, b), &px(cc, d), &c1).unwrap();
                assert_eq!(lhs, rhs, "{id}");
            }
        }
    }

    #[test]
    fn fractional_sums_are_capped() {
        let mut c = QContext::generic(4);
        c.max_h_order = 3;
        let f = SymbolPoly::monomial(SymbolMonomial::new(exp(1, 2), exp_int(0)));
        let g = SymbolPoly::monomial(SymbolMonomial::new(exp_int(0), exp(-1, 2)));
        let r = star(StarProductId::QStandard, &f, &g, &c).unwrap();
        assert_eq!(r.len(), 4);
        let top = r.get(&SymbolMonomial::new(exp(-5, 2), exp(-7, 2)));
        assert_eq!(top.h_degree(), Some(3));
    }

    #[test]
    fn series_power() {
        let c = ctx();
        let one = TruncatedSeries::constant(SymbolPoly::one(), 3);
        assert_eq!(star_power(StarProductId::QStandard, &one, 5, Association::Balanced, &c).unwrap(), one);
        let f = TruncatedSeries::from_coeffs(2, vec![SymbolPoly::one(), px(1, 0)]);
        let sq = star_power(StarProductId::QStandard, &f, 2, Association::Left, &c).unwrap();
        let two = Scalar::from_int(2);
        assert_eq!(sq, TruncatedSeries::from_coeffs(2, vec![SymbolPoly::one(), px(1, 0).scale_scalar(&two), px(2, 0)]));
        let g = TruncatedSeries::from_coeffs(3, vec![SymbolPoly::one(), px(1, 1), px(0, 2)]);
        let l = star_power(StarProductId::QAnti, &g, 3, Association::Left, &c).unwrap();
        let r = star_power(StarProductId::QAnti, &g, 3, Association::Right, &c).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn bracketings_count() {
        let items: Vec<i64> = (1..=6).collect();
        let all = all_bracketings(&items, &|a, b| Ok(a + b)).unwrap();
        assert_eq!(all.len(), 42);
        assert!(all.iter().all(|v| *v == 21));
    }

    #[test]
    fn names_round_trip() {
        for id in StarProductId::ALL {
            assert_eq!(id.name().parse::<StarProductId>().unwrap(), id);
        }
        assert!("bogus".parse::<StarProductId>().is_err());
        let _ = RatFunc::one();
    }
}
