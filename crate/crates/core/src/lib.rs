//! Exact symbolic engine for the q-deformed two-dimensional phase space
//! `PX - qXP = h` (with `h` standing for iℏ).
//!
//! The crate is layered bottom-up:
//!
//! - [`ring`], [`scalar`], [`qcalc`]: exact coefficients in `Q(q^(1/D))[h]`
//!   and q-combinatorics.
//! - [`operator`]: noncommutative words in `P`, `X`, the normal-ordering
//!   rewrite engine and weighted q-commutators. This is the ground truth.
//! - [`symbol`], [`star`]: commuting symbols `p^a x^b`, Jackson derivatives,
//!   star products, q-Moyal and q-Poisson brackets.
//! - [`conformance`]: grid sweeps comparing closed-form structure constants
//!   with the rewrite engine, emitting JSON reports.
//! - [`applications`]: q-classical dynamics demos.

pub mod applications;
pub mod conformance;
pub mod error;
pub mod operator;
pub mod qcalc;
pub mod render;
pub mod ring;
pub mod scalar;
pub mod star;
pub mod symbol;

pub use error::{Error, Result};
pub use operator::{LabeledOperator, Letter, NormalForm, OperatorExpr, OperatorWord, OrderingScheme};
pub use qcalc::{exp, exp_int, Exponent, QContext, QValue};
pub use ring::{RatFunc, Rational};
pub use scalar::{Coefficient, Scalar};
pub use star::{Association, StarProductId, TruncatedSeries};
pub use symbol::{SymbolMonomial, SymbolPoly, Var};


