//! Univariate polynomials and rational functions in `s = q^(1/L)` over the
//! rationals.
//!
//! A [`RatFunc`] carries its own root `L` and is always stored in reduced
//! form: numerator and denominator coprime, denominator monic, and `L`
//! minimal (no common divisor of `L` and every occupied exponent). Under
//! these rules two rational functions are equal iff their fields are equal,
//! whatever root they were built at.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Dense polynomial with rational coefficients, lowest degree first.
/// The coefficient vector never ends in a zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * s^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when the polynomial is `c * s^k` for some `c`, `k`.
    pub fn is_monomial(&self) -> bool {
        match self.valuation() {
            Some(v) => v + 1 == self.coeffs.len(),
            None => false,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, o) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += o;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `s^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `s^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.is_zero() || self.valuation().unwrap() >= k);
        if self.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs[k..].to_vec() }
    }

    /// Substitute `s -> s^k`.
    pub fn inflate(&self, k: usize) -> Poly {
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.terms() {
            coeffs[i * k] = c.clone();
        }
        Poly { coeffs }
    }

    /// Substitute `s^k -> s`; every occupied exponent must be a multiple of `k`.
    pub fn deflate(&self, k: usize) -> Poly {
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) / k + 1];
        for (i, c) in self.terms() {
            debug_assert_eq!(i % k, 0);
            coeffs[i / k] = c.clone();
        }
        Poly { coeffs }
    }

    /// Gcd of all occupied exponents (0 if only the constant term is occupied).
    pub fn exponent_gcd(&self) -> usize {
        self.terms().fold(0usize, |g, (i, _)| g.gcd(&i))
    }

    pub fn eval_one(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }
}

/// Element of `Q(s)` with `s = q^(1/root)`, kept in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    root: u32,
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { root: 1, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_rational(Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFunc { root: 1, num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::from_rational(Rational::from_integer(BigInt::from(c)))
    }

    /// `q^(num/root)` for any integer `num`.
    pub fn q_power(num: i64, root: u32) -> Self {
        assert!(root > 0);
        let k = num.unsigned_abs() as usize;
        let mono = Poly::monomial(Rational::one(), k);
        if num >= 0 {
            RatFunc::new(root, mono, Poly::one())
        } else {
            RatFunc::new(root, Poly::one(), mono)
        }
    }

    /// Build and reduce `num / den` in `s = q^(1/root)`.
    pub fn new(root: u32, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (mut num, mut den) = if den.is_monomial() {
            let k = den.valuation().unwrap();
            let lead = den.leading().unwrap().recip();
            let m = k.min(num.valuation().unwrap());
            (num.shift_down(m).scale(&lead), Poly::monomial(Rational::one(), k - m))
        } else if num.is_monomial() {
            // gcd with a monomial is a power of s
            let v = num.valuation().unwrap().min(den.valuation().unwrap());
            let lead = den.leading().unwrap().recip();
            (num.shift_down(v).scale(&lead), den.shift_down(v).monic())
        } else {
            let g = num.gcd(&den);
            let (n, _) = num.div_rem(&g);
            let (d, _) = den.div_rem(&g);
            let lead = d.leading().unwrap().recip();
            (n.scale(&lead), d.scale(&lead))
        };
        let mut root = root;
        let g = (root as usize).gcd(&num.exponent_gcd()).gcd(&den.exponent_gcd());
        if g > 1 {
            num = num.deflate(g);
            den = den.deflate(g);
            root /= g as u32;
        }
        RatFunc { root, num, den }
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some(c) when the value is the rational constant `c`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.den.is_one() && self.num.degree() == Some(0) {
            return Some(self.num.coeffs()[0].clone());
        }
        None
    }

    /// Re-express numerator and denominator at a multiple of the stored root.
    fn lifted(&self, root: u32) -> (Poly, Poly) {
        let k = (root / self.root) as usize;
        (self.num.inflate(k), self.den.inflate(k))
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let root = (self.root as usize).lcm(&(other.root as usize)) as u32;
        let (n1, d1) = self.lifted(root);
        let (n2, d2) = other.lifted(root);
        if d1 == d2 {
            return RatFunc::new(root, n1.add(&n2), d1);
        }
        RatFunc::new(root, n1.mul(&d2).add(&n2.mul(&d1)), d1.mul(&d2))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { root: self.root, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let root = (self.root as usize).lcm(&(other.root as usize)) as u32;
        let (n1, d1) = self.lifted(root);
        let (n2, d2) = other.lifted(root);
        RatFunc::new(root, n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { root: self.root, num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.root, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Option<RatFunc> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u32) -> RatFunc {
        let mut base = self.clone();
        let mut acc = RatFunc::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Value at `q = 1`; `None` when the reduced denominator vanishes there.
    pub fn eval_one(&self) -> Option<Rational> {
        let d = self.den.eval_one();
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_one() / d)
        }
    }

    /// Canonical text form: Laurent part over the `s`-free part of the
    /// denominator, powers of q written `q^k` or `q^(a/b)`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let shift = self.den.valuation().unwrap();
        let rest = self.den.shift_down(shift);
        let num = render_laurent(&self.num, shift as i64, self.root);
        if rest.is_one() {
            return num;
        }
        let den = render_laurent(&rest, 0, self.root);
        let num = if self.num.terms().count() > 1 { format!("({num})") } else { num };
        format!("{num}/({den})")
    }

    /// True when the canonical rendering needs parentheses as a factor:
    /// a bare sum of several Laurent terms.
    pub fn is_compound(&self) -> bool {
        self.num.terms().count() > 1 && self.den.is_monomial()
    }

    /// Sign of the first rendered term, used to pull a leading minus out.
    pub fn leading_negative(&self) -> bool {
        self.num.terms().next().is_some_and(|(_, c)| c.is_negative())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Render a rational exponent `num/den` of q (without the `q`).
pub fn render_q_exponent(num: i64, den: i64) -> Option<String> {
    let r = num_rational::Ratio::new(num, den);
    if r == num_rational::Ratio::from_integer(1) {
        return None;
    }
    if r.is_integer() {
        Some(format!("^{}", r.numer()))
    } else {
        Some(format!("^({}/{})", r.numer(), r.denom()))
    }
}

fn render_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_laurent(p: &Poly, shift: i64, root: u32) -> String {
    let mut out = String::new();
    for (i, (k, c)) in p.terms().enumerate() {
        let e = k as i64 - shift;
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        if e == 0 {
            out.push_str(&render_rational(&mag));
            continue;
        }
        if !mag.is_one() {
            out.push_str(&render_rational(&mag));
            out.push('*');
        }
        out.push('q');
        if let Some(x) = render_q_exponent(e, root as i64) {
            out.push_str(&x);
        }
    }
    out
}

/// Total order on rational functions used only for deterministic sorting.
pub fn canonical_cmp(a: &RatFunc, b: &RatFunc) -> Ordering {
    a.render().cmp(&b.render())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn poly(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| r(c)).collect())
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1+s)(1-s) and (1+s)^2
        let a = poly(&[1, 0, -1]);
        let b = poly(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), poly(&[1, 1]));
    }

    #[test]
    fn reduction_picks_minimal_root() {
        // (1 - s^2)/(1 - s^4) at root 4 is 1/(1+q^(1/2))
        let f = RatFunc::new(4, poly(&[1, 0, -1]), poly(&[1, 0, 0, 0, -1]));
        assert_eq!(f.root(), 2);
        assert_eq!(f.render(), "1/(1+q^(1/2))");
        let g = RatFunc::new(2, poly(&[1]), poly(&[1, 1]));
        assert_eq!(f, g);
    }

    #[test]
    fn laurent_rendering() {
        let f = RatFunc::q_power(-1, 1).neg();
        assert_eq!(f.render(), "-q^-1");
        let g = RatFunc::q_power(3, 2).add(&RatFunc::one());
        assert_eq!(g.render(), "1+q^(3/2)");
        let h = RatFunc::from_rational(Rational::new(BigInt::from(3), BigInt::from(4)));
        assert_eq!(h.mul(&RatFunc::q_power(2, 1)).render(), "3/4*q^2");
    }

    #[test]
    fn mixed_roots_add() {
        let a = RatFunc::q_power(1, 2);
        let b = RatFunc::q_power(1, 3);
        let s = a.add(&b);
        assert_eq!(s.root(), 6);
        assert_eq!(s.sub(&b), a);
    }

    #[test]
    fn pole_at_one() {
        let f = RatFunc::one().sub(&RatFunc::q_power(1, 1)).inv().unwrap();
        assert_eq!(f.eval_one(), None);
    }
}
