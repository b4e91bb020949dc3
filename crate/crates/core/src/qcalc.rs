//! Evaluation context and q-combinatorics: q-powers, q-integers, q-factorials
//! and q-binomials.
//!
//! `q` is realized as `s^D` for the configured root denominator `D`. A context
//! can also pin `q = 1`, in which case every q-quantity collapses to its
//! classical value and the same code paths compute the undeformed algebra.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{RatFunc, Rational};
use crate::scalar::Scalar;

/// Small exact rational used for exponents of q, p, x.
pub type Exponent = Ratio<i64>;

pub fn exp(n: i64, d: i64) -> Exponent {
    Ratio::new(n, d)
}

pub fn exp_int(n: i64) -> Exponent {
    Ratio::from_integer(n)
}

pub fn render_exponent(e: &Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QValue {
    /// q is a formal parameter.
    Generic,
    /// q is pinned to 1.
    One,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QContext {
    /// `q = s^D`; every exponent of q must lie in `(1/D)·Z`.
    pub root_denominator: u32,
    pub q: QValue,
    /// Cap on the derivative order of star-product sums that do not terminate
    /// on their own (fractional or negative exponents).
    pub max_h_order: u32,
}

impl Default for QContext {
    fn default() -> Self {
        QContext { root_denominator: 2, q: QValue::Generic, max_h_order: 8 }
    }
}

impl QContext {
    pub fn generic(root_denominator: u32) -> Self {
        assert!(root_denominator >= 1);
        QContext { root_denominator, ..Default::default() }
    }

    pub fn at_q1(self) -> Self {
        QContext { q: QValue::One, ..self }
    }

    pub fn is_q1(&self) -> bool {
        self.q == QValue::One
    }

    pub fn require_q1(&self) -> Result<()> {
        if self.is_q1() {
            Ok(())
        } else {
            Err(Error::RequiresQ1)
        }
    }

    /// `D·a` as an integer, or `NonRepresentableExponent`.
    pub fn scaled_exponent(&self, a: &Exponent) -> Result<i64> {
        let scaled = *a * Ratio::from_integer(self.root_denominator as i64);
        if scaled.is_integer() {
            Ok(scaled.to_integer())
        } else {
            Err(Error::NonRepresentableExponent {
                exponent: render_exponent(a),
                root_denominator: self.root_denominator,
            })
        }
    }

    pub fn check_representable(&self, a: &Exponent) -> Result<()> {
        self.scaled_exponent(a).map(|_| ())
    }

    /// `q^a = s^(D·a)`.
    pub fn q_power(&self, a: &Exponent) -> Result<Scalar> {
        let k = self.scaled_exponent(a)?;
        if self.is_q1() {
            return Ok(Scalar::one());
        }
        Ok(RatFunc::q_power(k, self.root_denominator).into())
    }

    /// `q^n` for an integer `n` (always representable).
    pub fn q_pow_int(&self, n: i64) -> Scalar {
        if self.is_q1() {
            return Scalar::one();
        }
        RatFunc::q_power(n, 1).into()
    }

    /// The q-integer `[a] = (1 - q^a)/(1 - q)`.
    pub fn q_integer(&self, a: &Exponent) -> Result<Scalar> {
        self.check_representable(a)?;
        if self.is_q1() {
            return Ok(Scalar::from_rational(to_big(a)));
        }
        if a.is_zero() {
            return Ok(Scalar::zero());
        }
        let one = RatFunc::one();
        let qa = RatFunc::q_power(self.scaled_exponent(a)?, self.root_denominator);
        let q = RatFunc::q_power(1, 1);
        Ok(one.sub(&qa).div(&one.sub(&q)).expect("1 - q is nonzero").into())
    }

    /// `[n]! = [1][2]…[n]`, with `[0]! = 1`.
    pub fn q_factorial(&self, n: u32) -> Scalar {
        (1..=n as i64).fold(Scalar::one(), |acc, k| {
            acc.mul(&self.q_integer(&exp_int(k)).expect("integer exponents are representable"))
        })
    }

    /// `1/[n]!`, defined as 0 for negative `n`.
    pub fn recip_q_factorial(&self, n: i64) -> Scalar {
        if n < 0 {
            return Scalar::zero();
        }
        self.q_factorial(n as u32).inv().expect("q-factorials are nonzero")
    }

    /// Gaussian binomial `[n, r]`; zero outside `0 <= r <= n`.
    pub fn q_binomial(&self, n: i64, r: i64) -> Scalar {
        if n < 0 || r < 0 || r > n {
            return Scalar::zero();
        }
        self.q_factorial(n as u32)
            .mul(&self.recip_q_factorial(r))
            .mul(&self.recip_q_factorial(n - r))
    }
}

pub(crate) fn to_big(a: &Exponent) -> Rational {
    Rational::new(BigInt::from(*a.numer()), BigInt::from(*a.denom()))
}

/// Ordinary factorial as a scalar.
pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Scalar::from_rational(Rational::from_integer(acc))
}

/// Ordinary falling factorial `a (a-1) … (a-r+1)` for a rational `a`.
pub fn falling_factorial(a: &Exponent, r: u32) -> Scalar {
    let mut acc = Ratio::from_integer(BigInt::one());
    for i in 0..r as i64 {
        acc *= to_big(&(*a - i));
    }
    Scalar::from_rational(acc)
}

pub fn is_nonneg_integer(a: &Exponent) -> bool {
    a.is_integer() && !a.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> Scalar {
        RatFunc::q_power(k, 1).into()
    }

    #[test]
    fn q_power_examples() {
        let c = QContext::generic(2);
        assert_eq!(c.q_power(&exp_int(0)).unwrap(), Scalar::one());
        assert_eq!(c.q_power(&exp_int(1)).unwrap().render(), "q");
        let c1 = QContext::generic(1);
        assert_eq!(c1.q_power(&exp_int(-1)).unwrap().render(), "q^-1");
        assert!(matches!(
            c.q_power(&exp(1, 3)),
            Err(Error::NonRepresentableExponent { .. })
        ));
    }

    #[test]
    fn q_integer_examples() {
        let c = QContext::generic(2);
        assert_eq!(c.q_integer(&exp_int(2)).unwrap(), Scalar::one().add(&q(1)));
        assert_eq!(c.q_integer(&exp_int(0)).unwrap(), Scalar::zero());
        assert_eq!(c.q_integer(&exp(1, 2)).unwrap().render(), "1/(1+q^(1/2))");
        assert_eq!(c.q_integer(&exp_int(-1)).unwrap(), q(-1).neg());
        assert!(c.q_integer(&exp(1, 3)).is_err());
    }

    #[test]
    fn q_factorial_examples() {
        let c = QContext::generic(2);
        assert_eq!(c.q_factorial(0), Scalar::one());
        let two = Scalar::one().add(&q(1));
        assert_eq!(c.q_factorial(2), two);
        let three = Scalar::one().add(&q(1)).add(&q(2));
        assert_eq!(c.q_factorial(3), two.mul(&three));
    }

    #[test]
    fn recip_and_binomial_examples() {
        let c = QContext::generic(2);
        assert_eq!(c.recip_q_factorial(-1), Scalar::zero());
        assert_eq!(c.recip_q_factorial(0), Scalar::one());
        assert_eq!(c.recip_q_factorial(2), Scalar::one().add(&q(1)).inv().unwrap());
        assert_eq!(c.q_binomial(2, 1), Scalar::one().add(&q(1)));
        assert_eq!(c.q_binomial(5, 0), Scalar::one());
        assert_eq!(c.q_binomial(1, 2), Scalar::zero());
        let expect = Scalar::one().add(&q(2)).mul(&Scalar::one().add(&q(1)).add(&q(2)));
        assert_eq!(c.q_binomial(4, 2), expect);
    }

    #[test]
    fn eval_q1_examples() {
        let c = QContext::generic(2);
        let three = crate::scalar::Coefficient::constant(c.q_integer(&exp_int(3)).unwrap());
        assert_eq!(three.eval_q1().unwrap().get(0), Scalar::from_int(3));
        let half = c.q_integer(&exp(1, 2)).unwrap();
        assert_eq!(half.eval_q1().unwrap(), Scalar::ratio(1, 2));
    }

    #[test]
    fn pinned_context_collapses() {
        let c = QContext::generic(2).at_q1();
        assert_eq!(c.q_factorial(4), Scalar::from_int(24));
        assert_eq!(c.q_binomial(4, 2), Scalar::from_int(6));
        assert_eq!(c.q_power(&exp(3, 2)).unwrap(), Scalar::one());
    }
}
