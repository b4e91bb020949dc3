//! Scalars (`Q(q^(1/L))`, optionally adjoined with one formal square root κ)
//! and coefficients (polynomials in the central generator `h`, standing for iℏ).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{RatFunc, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Extension {
    coeff: RatFunc,
    square: RatFunc,
}

/// `base + coeff·κ` with `κ² = square`. The κ part is dropped as soon as its
/// coefficient reduces to zero, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    base: RatFunc,
    ext: Option<Box<Extension>>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        RatFunc::one().into()
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_int(n).into()
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFunc::from_rational(c).into()
    }

    /// `n/d` as a scalar.
    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The formal generator κ with `κ² = square`.
    pub fn kappa(square: RatFunc) -> Self {
        Scalar {
            base: RatFunc::zero(),
            ext: Some(Box::new(Extension { coeff: RatFunc::one(), square })),
        }
    }

    fn with_ext(base: RatFunc, coeff: RatFunc, square: RatFunc) -> Self {
        if coeff.is_zero() {
            Scalar { base, ext: None }
        } else {
            Scalar { base, ext: Some(Box::new(Extension { coeff, square })) }
        }
    }

    pub fn base(&self) -> &RatFunc {
        &self.base
    }

    /// Coefficient of κ, if any.
    pub fn kappa_part(&self) -> Option<&RatFunc> {
        self.ext.as_ref().map(|e| &e.coeff)
    }

    pub fn has_kappa(&self) -> bool {
        self.ext.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.ext.is_none()
    }

    pub fn is_one(&self) -> bool {
        self.base.is_one() && self.ext.is_none()
    }

    fn square_of<'a>(a: &'a Scalar, b: &'a Scalar) -> Option<&'a RatFunc> {
        match (&a.ext, &b.ext) {
            (Some(x), Some(y)) => {
                assert_eq!(x.square, y.square, "mixing scalars with different κ²");
                Some(&x.square)
            }
            (Some(x), None) => Some(&x.square),
            (None, Some(y)) => Some(&y.square),
            (None, None) => None,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let base = self.base.add(&other.base);
        match Scalar::square_of(self, other) {
            None => base.into(),
            Some(sq) => {
                let c = match (self.kappa_part(), other.kappa_part()) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                };
                Scalar::with_ext(base, c, sq.clone())
            }
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            base: self.base.neg(),
            ext: self.ext.as_ref().map(|e| {
                Box::new(Extension { coeff: e.coeff.neg(), square: e.square.clone() })
            }),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match Scalar::square_of(self, other) {
            None => self.base.mul(&other.base).into(),
            Some(sq) => {
                let zero = RatFunc::zero();
                let (a, b) = (&self.base, self.kappa_part().unwrap_or(&zero));
                let (c, d) = (&other.base, other.kappa_part().unwrap_or(&zero));
                let base = a.mul(c).add(&b.mul(d).mul(sq));
                let k = a.mul(d).add(&b.mul(c));
                Scalar::with_ext(base, k, sq.clone())
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        self.mul(&Scalar::from_rational(c.clone()))
    }

    /// Multiplicative inverse; `None` for zero (or a zero divisor when κ² is
    /// a perfect square in the base field).
    pub fn inv(&self) -> Option<Scalar> {
        match &self.ext {
            None => self.base.inv().map(Into::into),
            Some(e) => {
                // (a + bκ)^-1 = (a - bκ) / (a² - b²κ²)
                let norm = self.base.mul(&self.base).sub(&e.coeff.mul(&e.coeff).mul(&e.square));
                let ninv = norm.inv()?;
                Some(Scalar::with_ext(self.base.mul(&ninv), e.coeff.neg().mul(&ninv), e.square.clone()))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Substitute `q = 1` (κ stays formal, with its square evaluated).
    pub fn eval_q1(&self) -> Result<Scalar> {
        let base = RatFunc::from_rational(self.base.eval_one().ok_or(Error::PoleAtQ1)?);
        match &self.ext {
            None => Ok(base.into()),
            Some(e) => {
                let c = RatFunc::from_rational(e.coeff.eval_one().ok_or(Error::PoleAtQ1)?);
                let sq = RatFunc::from_rational(e.square.eval_one().ok_or(Error::PoleAtQ1)?);
                Ok(Scalar::with_ext(base, c, sq))
            }
        }
    }

    /// True when the rendering needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        self.ext.is_some() || self.base.is_compound()
    }

    pub fn leading_negative(&self) -> bool {
        self.ext.is_none() && self.base.leading_negative()
    }

    pub fn render(&self) -> String {
        match &self.ext {
            None => self.base.render(),
            Some(e) => {
                let k = if e.coeff.is_compound() {
                    format!("({})*kappa", e.coeff.render())
                } else if e.coeff.is_one() {
                    "kappa".to_string()
                } else {
                    format!("{}*kappa", e.coeff.render())
                };
                if self.base.is_zero() {
                    k
                } else if k.starts_with('-') {
                    format!("{}{}", self.base.render(), k)
                } else {
                    format!("{}+{}", self.base.render(), k)
                }
            }
        }
    }
}

impl From<RatFunc> for Scalar {
    fn from(base: RatFunc) -> Self {
        Scalar { base, ext: None }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar::$m(self, rhs)
            }
        }
    };
}
scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// Polynomial in `h` with [`Scalar`] coefficients; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    terms: BTreeMap<u32, Scalar>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::default()
    }

    pub fn one() -> Self {
        Coefficient::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        Coefficient::monomial(s, 0)
    }

    /// `s · h^k`
    pub fn monomial(s: Scalar, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(k, s);
        }
        Coefficient { terms }
    }

    /// `h^k`
    pub fn h_power(k: u32) -> Self {
        Coefficient::monomial(Scalar::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Scalar::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Coefficient of `h^k`.
    pub fn get(&self, k: u32) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn h_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, k: u32, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v = v.add(s);
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, s.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Coefficient) {
        for (k, s) in &other.terms {
            self.add_term(*k, s);
        }
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> Coefficient {
        Coefficient { terms: self.terms.iter().map(|(k, v)| (*k, v.neg())).collect() }
    }

    pub fn sub(&self, other: &Coefficient) -> Coefficient {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_term(i + j, &a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Coefficient {
        if s.is_zero() {
            return Coefficient::zero();
        }
        if s.is_one() {
            return self.clone();
        }
        let mut out = Coefficient::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &v.mul(s));
        }
        out
    }

    /// Multiply by `h^k`.
    pub fn mul_h(&self, k: u32) -> Coefficient {
        Coefficient { terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect() }
    }

    /// Drop every `h^k` with `k > order`.
    pub fn truncate(&self, order: u32) -> Coefficient {
        Coefficient { terms: self.terms.range(..=order).map(|(k, v)| (*k, v.clone())).collect() }
    }

    /// Exact division by `h`; fails when the `h^0` part is nonzero.
    pub fn divide_exact_h(&self) -> Result<Coefficient> {
        if self.terms.contains_key(&0) {
            return Err(Error::NotDivisibleByH { constant_part: self.get(0).render() });
        }
        Ok(Coefficient { terms: self.terms.iter().map(|(k, v)| (k - 1, v.clone())).collect() })
    }

    /// The `h^0` part (the ℏ → 0 limit).
    pub fn eval_h0(&self) -> Scalar {
        self.get(0)
    }

    /// Substitute `q = 1` in every scalar.
    pub fn eval_q1(&self) -> Result<Coefficient> {
        let mut out = Coefficient::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &v.eval_q1()?);
        }
        Ok(out)
    }

    /// Apply a fallible map to every scalar.
    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Coefficient> {
        let mut out = Coefficient::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &f(v)?);
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        crate::render::render_terms(self.terms().map(|(k, s)| (s.clone(), k, String::new())))
    }
}

impl From<Scalar> for Coefficient {
    fn from(s: Scalar) -> Self {
        Coefficient::constant(s)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        RatFunc::q_power(1, 1).into()
    }

    #[test]
    fn kappa_squares_back() {
        let sq = RatFunc::one().add(&RatFunc::q_power(1, 1));
        let k = Scalar::kappa(sq.clone());
        let kk = k.mul(&k);
        assert!(!kk.has_kappa());
        assert_eq!(kk, Scalar::from(sq));
        let inv = k.inv().unwrap();
        assert_eq!(inv.mul(&k), Scalar::one());
    }

    #[test]
    fn divide_exact_h_cases() {
        let c = Coefficient::h_power(2).add(&Coefficient::monomial(q(), 1));
        let d = c.divide_exact_h().unwrap();
        assert_eq!(d, Coefficient::h_power(1).add(&Coefficient::constant(q())));
        assert_eq!(Coefficient::zero().divide_exact_h().unwrap(), Coefficient::zero());
        let bad = Coefficient::one().add(&Coefficient::h_power(1));
        assert!(matches!(bad.divide_exact_h(), Err(Error::NotDivisibleByH { .. })));
    }

    #[test]
    fn eval_h0_cases() {
        let c = Coefficient::h_power(1).add(&Coefficient::constant(q()));
        assert_eq!(c.eval_h0(), q());
        assert_eq!(Coefficient::h_power(2).eval_h0(), Scalar::zero());
        let one_plus_q = Scalar::one().add(&q());
        assert_eq!(Coefficient::constant(one_plus_q.clone()).eval_h0(), one_plus_q);
    }

    #[test]
    fn eval_q1_pole() {
        let c = Coefficient::constant(Scalar::one().sub(&q()).inv().unwrap());
        assert_eq!(c.eval_q1(), Err(Error::PoleAtQ1));
    }
}
