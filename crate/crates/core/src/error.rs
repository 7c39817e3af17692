use thiserror::Error;

/// Domain errors raised by the arithmetic and analysis layers.
///
/// Parse failures have their own positioned type, see
/// [`ParseError`](crate::syntax::ParseError).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different group presentations")]
    MixedPresentations,
    #[error("operands belong to different coefficient fields or groups")]
    MixedCarriers,
    #[error("value {value} is not in the component {class} at chain point {point}")]
    ComponentOutOfClass {
        point: String,
        class: String,
        value: String,
    },
    #[error("chain point {point} is not a point of {chain}")]
    InvalidChainPoint { point: String, chain: String },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("component {class} at chain point {point} is not divisible by {divisor}")]
    NotDivisible {
        point: String,
        class: String,
        divisor: String,
    },
    #[error("coefficient {0} is not in the coefficient field")]
    CoefficientOutsideField(String),
    #[error("radicand must be positive")]
    NonPositiveRadicand,
    #[error("{value} has no exact root of degree {n} in the coefficient field")]
    NoExactRoot { value: String, n: u32 },
    #[error("the leading term of zero is undefined")]
    LeadingOfZero,
    #[error("valuation {valuation} is not divisible by {n} in the value group")]
    NotDivisibleExponent { valuation: String, n: u32 },
    #[error("series must be positive")]
    NonPositive,
    #[error("no multiple of {step} exceeds the bound {bound}: they lie in different Archimedean classes")]
    UnreachableBound { step: String, bound: String },
    #[error("{0} is infinite and has no residue")]
    NotFinite(String),
    #[error("{0} is not an element of the integer part")]
    NotInIntegerPart(String),
    #[error("the target class {target} is not the additive group of the residue field {field}")]
    ResidueMismatch { target: String, field: String },
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
    #[error("{0} is not exactly invertible as a finite series")]
    NotExactlyInvertible(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
