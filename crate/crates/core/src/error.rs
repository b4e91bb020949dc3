use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent {exponent} is not representable with root denominator {root_denominator}")]
    NonRepresentableExponent { exponent: String, root_denominator: u32 },
    #[error("coefficient is not divisible by h (h^0 part {constant_part})")]
    NotDivisibleByH { constant_part: String },
    #[error("denominator vanishes at q = 1")]
    PoleAtQ1,
    #[error("operation is only defined at q = 1")]
    RequiresQ1,
    #[error("exponent {0} cannot be quantized (operators carry non-negative integer powers)")]
    NonQuantizableExponent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
