//! Noncommutative words in `P`, `X` and normal ordering under
//! `PX - qXP = h`.
//!
//! The rewrite engine here is the ground truth for every other module: it
//! applies one local rewrite at a time until no rewrite site remains.
//! Closed forms and star products are checked against it, never the other
//! way round.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::Result;
use crate::qcalc::{exp_int, QContext};
use crate::render::render_terms;
use crate::scalar::{Coefficient, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    P,
    X,
}

impl Letter {
    fn as_str(self) -> &'static str {
        match self {
            Letter::P => "P",
            Letter::X => "X",
        }
    }
}

/// Which letter is collected to the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderingScheme {
    /// `X^a P^b` (all X on the left).
    Standard,
    /// `P^a X^b` (all P on the left).
    Antistandard,
}

impl OrderingScheme {
    pub fn name(self) -> &'static str {
        match self {
            OrderingScheme::Standard => "standard",
            OrderingScheme::Antistandard => "antistandard",
        }
    }

    /// The (left, right) letters of a normal-ordered monomial.
    fn letters(self) -> (Letter, Letter) {
        match self {
            OrderingScheme::Standard => (Letter::X, Letter::P),
            OrderingScheme::Antistandard => (Letter::P, Letter::X),
        }
    }
}

/// Run-length encoded word; adjacent runs always carry distinct letters and
/// positive exponents. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OperatorWord(Vec<(Letter, u32)>);

impl OperatorWord {
    pub fn identity() -> Self {
        OperatorWord(Vec::new())
    }

    pub fn new(runs: impl IntoIterator<Item = (Letter, u32)>) -> Self {
        let mut w = OperatorWord::identity();
        for (l, e) in runs {
            w.push(l, e);
        }
        w
    }

    pub fn letter(l: Letter, e: u32) -> Self {
        OperatorWord::new([(l, e)])
    }

    /// Parse a plain letter string such as `"PXXP"`.
    pub fn from_letters(s: &str) -> Self {
        OperatorWord::new(s.chars().map(|c| match c {
            'P' => (Letter::P, 1),
            'X' => (Letter::X, 1),
            other => panic!("not an operator letter: {other}"),
        }))
    }

    fn push(&mut self, l: Letter, e: u32) {
        if e == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((last, n)) if *last == l => *n += e,
            _ => self.0.push((l, e)),
        }
    }

    pub fn runs(&self) -> &[(Letter, u32)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &OperatorWord) -> OperatorWord {
        let mut w = self.clone();
        for &(l, e) in &other.0 {
            w.push(l, e);
        }
        w
    }

    /// Number of letters.
    pub fn len(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (X-degree, P-degree)
    pub fn degrees(&self) -> (u32, u32) {
        self.0.iter().fold((0, 0), |(x, p), &(l, e)| match l {
            Letter::X => (x + e, p),
            Letter::P => (x, p + e),
        })
    }

    /// Count of letter pairs standing in the wrong order for `ordering`.
    fn inversions(&self, ordering: OrderingScheme) -> u32 {
        let (_, right) = ordering.letters();
        let mut seen_right = 0;
        let mut inv = 0;
        for &(l, e) in &self.0 {
            if l == right {
                seen_right += e;
            } else {
                inv += seen_right * e;
            }
        }
        inv
    }

    /// Positions `i` where runs `i`, `i+1` form a rewrite site.
    fn sites(&self, ordering: OrderingScheme) -> Vec<usize> {
        let (left, right) = ordering.letters();
        (0..self.0.len().saturating_sub(1))
            .filter(|&i| self.0[i].0 == right && self.0[i + 1].0 == left)
            .collect()
    }

    /// Exponents `(a, b)` of the normal-ordered monomial, if already normal.
    fn normal_key(&self, ordering: OrderingScheme) -> Option<(u32, u32)> {
        let (left, right) = ordering.letters();
        match self.0.as_slice() {
            [] => Some((0, 0)),
            [(l, e)] if *l == left => Some((*e, 0)),
            [(r, e)] if *r == right => Some((0, *e)),
            [(l, a), (r, b)] if *l == left && *r == right => Some((*a, *b)),
            _ => None,
        }
    }

    /// Swap one letter pair at run boundary `i`: returns the swapped word and
    /// the word with the pair removed.
    fn rewrite_at(&self, i: usize) -> (OperatorWord, OperatorWord) {
        let (a, ea) = self.0[i];
        let (b, eb) = self.0[i + 1];
        let mut prefix = OperatorWord(self.0[..i].to_vec());
        prefix.push(a, ea - 1);
        let mut suffix = OperatorWord::identity();
        suffix.push(b, eb - 1);
        for &(l, e) in &self.0[i + 2..] {
            suffix.push(l, e);
        }
        let swapped = prefix.concat(&OperatorWord::new([(b, 1), (a, 1)])).concat(&suffix);
        let contracted = prefix.concat(&suffix);
        (swapped, contracted)
    }

    pub fn render(&self) -> String {
        self.0
            .iter()
            .map(|&(l, e)| if e == 1 { l.as_str().to_string() } else { format!("{}^{e}", l.as_str()) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Formal linear combination of words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperatorExpr {
    terms: BTreeMap<OperatorWord, Coefficient>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr::default()
    }

    pub fn one() -> Self {
        OperatorExpr::word(OperatorWord::identity())
    }

    pub fn word(w: OperatorWord) -> Self {
        OperatorExpr::term(w, Coefficient::one())
    }

    pub fn term(w: OperatorWord, c: Coefficient) -> Self {
        let mut e = OperatorExpr::zero();
        e.add_term(w, &c);
        e
    }

    pub fn scalar(c: Coefficient) -> Self {
        OperatorExpr::term(OperatorWord::identity(), c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OperatorWord, &Coefficient)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: OperatorWord, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                v.add_assign(c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> OperatorExpr {
        OperatorExpr { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &OperatorExpr) -> OperatorExpr {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &v.mul(c));
        }
        out
    }

    /// Noncommutative product (word concatenation).
    pub fn mul(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), &c1.mul(c2));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().rev().flat_map(|(w, c)| {
            c.terms().map(move |(k, s)| (s.clone(), k, w.render())).collect::<Vec<_>>()
        }))
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Expression in an ordered basis: key `(a, b)` stands for `X^a P^b`
/// (standard) or `P^a X^b` (antistandard).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    ordering: OrderingScheme,
    terms: BTreeMap<(u32, u32), Coefficient>,
}

impl NormalForm {
    pub fn zero(ordering: OrderingScheme) -> Self {
        NormalForm { ordering, terms: BTreeMap::new() }
    }

    pub fn monomial(ordering: OrderingScheme, a: u32, b: u32) -> Self {
        NormalForm::term(ordering, (a, b), Coefficient::one())
    }

    pub fn term(ordering: OrderingScheme, key: (u32, u32), c: Coefficient) -> Self {
        let mut nf = NormalForm::zero(ordering);
        nf.add_term(key, &c);
        nf
    }

    pub fn ordering(&self) -> OrderingScheme {
        self.ordering
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &Coefficient)> {
        self.terms.iter()
    }

    pub fn get(&self, key: (u32, u32)) -> Coefficient {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: (u32, u32), c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        entry.add_assign(c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check_same(&self, other: &NormalForm) {
        assert_eq!(self.ordering, other.ordering, "mixing ordering schemes");
    }

    pub fn add(&self, other: &NormalForm) -> NormalForm {
        self.check_same(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> NormalForm {
        NormalForm {
            ordering: self.ordering,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &NormalForm) -> NormalForm {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> NormalForm {
        let mut out = NormalForm::zero(self.ordering);
        for (k, v) in &self.terms {
            out.add_term(*k, &v.mul(c));
        }
        out
    }

    /// The word for basis key `(a, b)`.
    pub fn basis_word(ordering: OrderingScheme, (a, b): (u32, u32)) -> OperatorWord {
        let (l, r) = ordering.letters();
        OperatorWord::new([(l, a), (r, b)])
    }

    pub fn to_expr(&self) -> OperatorExpr {
        let mut e = OperatorExpr::zero();
        for (k, c) in &self.terms {
            e.add_term(NormalForm::basis_word(self.ordering, *k), c);
        }
        e
    }

    /// Part of the expression at `h^0`.
    pub fn h0_part(&self) -> NormalForm {
        let mut out = NormalForm::zero(self.ordering);
        for (k, c) in &self.terms {
            out.add_term(*k, &Coefficient::constant(c.get(0)));
        }
        out
    }

    pub fn try_map(&self, f: impl Fn(&Coefficient) -> Result<Coefficient>) -> Result<NormalForm> {
        let mut out = NormalForm::zero(self.ordering);
        for (k, c) in &self.terms {
            out.add_term(*k, &f(c)?);
        }
        Ok(out)
    }

    pub fn eval_q1(&self) -> Result<NormalForm> {
        self.try_map(Coefficient::eval_q1)
    }

    pub fn divide_exact_h(&self) -> Result<NormalForm> {
        self.try_map(Coefficient::divide_exact_h)
    }

    /// Canonical rendering: basis keys descending, `h` powers ascending.
    pub fn render(&self) -> String {
        let ordering = self.ordering;
        render_terms(self.terms.iter().rev().flat_map(|(k, c)| {
            let w = NormalForm::basis_word(ordering, *k).render();
            c.terms().map(move |(e, s)| (s.clone(), e, w.clone())).collect::<Vec<_>>()
        }))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// An operator together with the bi-degree labels that drive q-commutator
/// weights. Labels need not match the degrees of any term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledOperator {
    pub expr: OperatorExpr,
    pub x_label: u32,
    pub p_label: u32,
}

impl LabeledOperator {
    pub fn new(expr: OperatorExpr, x_label: u32, p_label: u32) -> Self {
        LabeledOperator { expr, x_label, p_label }
    }

    /// A single word labelled by its own degrees.
    pub fn from_word(w: OperatorWord) -> Self {
        let (x, p) = w.degrees();
        LabeledOperator::new(OperatorExpr::word(w), x, p)
    }

    /// Basis monomial `(a, b)` of an ordering, labelled by its degrees.
    pub fn basis(ordering: OrderingScheme, a: u32, b: u32) -> Self {
        LabeledOperator::from_word(NormalForm::basis_word(ordering, (a, b)))
    }
}

/// Normal-order with the first available rewrite site.
pub fn normal_order(expr: &OperatorExpr, ordering: OrderingScheme, ctx: &QContext) -> NormalForm {
    normal_order_with(expr, ordering, ctx, &mut |_| 0)
}

/// Normal-order, letting `choose(n)` pick which of the `n` available rewrite
/// sites of a word is rewritten next. The result does not depend on the choice.
pub fn normal_order_with(
    expr: &OperatorExpr,
    ordering: OrderingScheme,
    ctx: &QContext,
    choose: &mut dyn FnMut(usize) -> usize,
) -> NormalForm {
    // swap factor and contraction factor of one rewrite
    let (swap, contract) = match ordering {
        // PX -> q XP + h
        OrderingScheme::Standard => (ctx.q_pow_int(1), Scalar::one()),
        // XP -> q^-1 PX - q^-1 h
        OrderingScheme::Antistandard => {
            let qi = ctx.q_pow_int(-1);
            (qi.clone(), qi.neg())
        }
    };
    // keyed by (length, inversions) so every word is popped after all words
    // that can rewrite into it
    let mut pending: BTreeMap<(u32, u32, OperatorWord), Coefficient> = BTreeMap::new();
    let mut out = NormalForm::zero(ordering);
    let push = |pending: &mut BTreeMap<_, Coefficient>, w: OperatorWord, c: &Coefficient| {
        if c.is_zero() {
            return;
        }
        let key = (w.len(), w.inversions(ordering), w);
        let entry = pending.entry(key).or_default();
        entry.add_assign(c);
    };
    for (w, c) in expr.terms() {
        push(&mut pending, w.clone(), c);
    }
    while let Some(((_, _, w), c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        if let Some(key) = w.normal_key(ordering) {
            out.add_term(key, &c);
            continue;
        }
        let sites = w.sites(ordering);
        let i = sites[choose(sites.len()).min(sites.len() - 1)];
        let (swapped, contracted) = w.rewrite_at(i);
        push(&mut pending, swapped, &c.scale(&swap));
        push(&mut pending, contracted, &c.scale(&contract).mul_h(1));
    }
    out
}

/// Closed form `P^b X^c = Σ_r q^{(b-r)(c-r)} [b,r][c,r][r]! h^r X^{c-r} P^{b-r}`.
pub fn normal_order_closed_form(b: u32, c: u32, ctx: &QContext) -> NormalForm {
    let mut nf = NormalForm::zero(OrderingScheme::Standard);
    for r in 0..=b.min(c) {
        let (bi, ci, ri) = (b as i64, c as i64, r as i64);
        let s = ctx
            .q_pow_int((bi - ri) * (ci - ri))
            .mul(&ctx.q_binomial(bi, ri))
            .mul(&ctx.q_binomial(ci, ri))
            .mul(&ctx.q_factorial(r));
        nf.add_term((c - r, b - r), &Coefficient::monomial(s, r));
    }
    nf
}

/// Product of two normal forms, re-ordered in the ordering of `a`.
pub fn multiply(a: &NormalForm, b: &NormalForm, ctx: &QContext) -> NormalForm {
    normal_order(&a.to_expr().mul(&b.to_expr()), a.ordering(), ctx)
}

/// Weighted commutator `q^{x(A)·p(B)} AB - q^{p(A)·x(B)} BA`, normal-ordered.
pub fn q_commutator(
    a: &LabeledOperator,
    b: &LabeledOperator,
    ordering: OrderingScheme,
    ctx: &QContext,
) -> NormalForm {
    let w_ab = ctx.q_pow_int(a.x_label as i64 * b.p_label as i64);
    let w_ba = ctx.q_pow_int(a.p_label as i64 * b.x_label as i64);
    let ab = a.expr.mul(&b.expr).scale(&Coefficient::constant(w_ab));
    let ba = b.expr.mul(&a.expr).scale(&Coefficient::constant(w_ba));
    normal_order(&ab.sub(&ba), ordering, ctx)
}

/// q-commutator of two normal forms, taken pairwise over their basis
/// monomials with each monomial labelled by its own degrees.
pub fn q_commutator_pairwise(a: &NormalForm, b: &NormalForm, ctx: &QContext) -> NormalForm {
    let ordering = a.ordering();
    let mut expr = OperatorExpr::zero();
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            let la = LabeledOperator::basis(ordering, ka.0, ka.1);
            let lb = LabeledOperator::basis(b.ordering(), kb.0, kb.1);
            let w_ab = ctx.q_pow_int(la.x_label as i64 * lb.p_label as i64);
            let w_ba = ctx.q_pow_int(la.p_label as i64 * lb.x_label as i64);
            let c = ca.mul(cb);
            expr = expr
                .add(&la.expr.mul(&lb.expr).scale(&c.scale(&w_ab)))
                .sub(&lb.expr.mul(&la.expr).scale(&c.scale(&w_ba)));
        }
    }
    normal_order(&expr, ordering, ctx)
}

/// Coefficients of `h^r` in the weighted commutator of two basis monomials
/// `(a, b)` and `(c, d)`; the `h^r` term always sits on the monomial
/// `(a + c - r, b + d - r)`.
pub fn structure_constants_oracle(
    ordering: OrderingScheme,
    (a, b, c, d): (u32, u32, u32, u32),
    ctx: &QContext,
) -> BTreeMap<u32, Scalar> {
    let lhs = LabeledOperator::basis(ordering, a, b);
    let rhs = LabeledOperator::basis(ordering, c, d);
    let nf = q_commutator(&lhs, &rhs, ordering, ctx);
    let mut table = BTreeMap::new();
    for (key, coeff) in nf.terms() {
        for (r, s) in coeff.terms() {
            debug_assert_eq!(key.0 + r, a + c);
            debug_assert_eq!(key.1 + r, b + d);
            table.insert(r, s.clone());
        }
    }
    table
}

/// Totally symmetrized monomial `T_{m,n}` (m P's, n X's), standard
/// normal form at q = 1.
pub fn weyl_symmetrize(m: u32, n: u32, ctx: &QContext) -> Result<NormalForm> {
    ctx.require_q1()?;
    let total = m + n;
    let mut expr = OperatorExpr::zero();
    let mut count = 0i64;
    // every subset of size m of the positions gets a P
    for mask in 0u64..(1u64 << total) {
        if mask.count_ones() != m {
            continue;
        }
        let w = OperatorWord::new((0..total).map(|i| {
            if mask >> i & 1 == 1 {
                (Letter::P, 1)
            } else {
                (Letter::X, 1)
            }
        }));
        expr.add_term(w, &Coefficient::one());
        count += 1;
    }
    let nf = normal_order(&expr, OrderingScheme::Standard, ctx);
    Ok(nf.scale(&Coefficient::constant(Scalar::ratio(1, count))))
}

/// Expand a q = 1 normal form over the symmetrized basis: key `(m, n)` is
/// the coefficient of `T_{m,n}`.
pub fn to_weyl_basis(nf: &NormalForm, ctx: &QContext) -> Result<BTreeMap<(u32, u32), Coefficient>> {
    ctx.require_q1()?;
    let mut rest = match nf.ordering() {
        OrderingScheme::Standard => nf.clone(),
        OrderingScheme::Antistandard => normal_order(&nf.to_expr(), OrderingScheme::Standard, ctx),
    };
    let mut cache: HashMap<(u32, u32), NormalForm> = HashMap::new();
    let mut out = BTreeMap::new();
    // T_{m,n} = X^n P^m + lower total degree, so peel off the top degree first
    while let Some((&(a, b), c)) = rest.terms().max_by_key(|((a, b), _)| (a + b, *a)) {
        let c = c.clone();
        let t = match cache.get(&(b, a)) {
            Some(t) => t.clone(),
            None => {
                let t = weyl_symmetrize(b, a, ctx)?;
                cache.insert((b, a), t.clone());
                t
            }
        };
        rest = rest.sub(&t.scale(&c));
        out.insert((b, a), c);
    }
    Ok(out)
}

/// Powers `P^m` as a normal form.
pub fn p_power(ordering: OrderingScheme, m: u32) -> NormalForm {
    match ordering {
        OrderingScheme::Standard => NormalForm::monomial(ordering, 0, m),
        OrderingScheme::Antistandard => NormalForm::monomial(ordering, m, 0),
    }
}

/// `q^k` for integer `k` as a coefficient.
pub fn q_coeff(ctx: &QContext, k: i64) -> Coefficient {
    Coefficient::constant(ctx.q_power(&exp_int(k)).expect("integer exponent"))
}
