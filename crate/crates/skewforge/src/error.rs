//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable id {0}")]
    UnknownVariable(u32),
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("elements belong to different settings")]
    SettingMismatch,
    #[error("group closure exceeded cap of {0}")]
    ClosureCapExceeded(usize),
    #[error("coefficient is not fixed by the stabilizer of the automorphism")]
    NotStabilizerInvariant,
    #[error("scalar is not a G-invariant polynomial")]
    NotGammaElement,
    #[error("zero element")]
    ZeroElement,
    #[error("empty support")]
    EmptySupport,
    #[error("operation not supported for this monoid kind")]
    UnsupportedMonoid,
    #[error("tensor multiplicity {0} is not a positive integer")]
    NonIntegerMultiplicity(String),
    #[error("family is not G-invariant")]
    NotGInvariantFamily,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("relation `{name}` failed, residual: {residual}")]
    RelationFailed { name: String, residual: String },
    #[error("tableau is not generic: {0}")]
    NonGenericTableau(String),
    #[error("unsupported flavor: {0}")]
    UnsupportedFlavor(String),
    #[error("setting does not support this operation: {0}")]
    UnsupportedSetting(String),
    #[error("no nonzero projection operator found within the candidate cap")]
    ProjectionSearchFailed,
    #[error("syntax error at offset {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("monoid is not separating (witness pair exists)")]
    NotSeparating,
    #[error("group does not normalize the shift monoid")]
    NotNormalizing,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
