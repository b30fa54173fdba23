use crate::dsl::ParseError;
use crate::exactalg::AlgError;
use crate::typecore::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Parse(#[from] Box<ParseError>),
    #[error("malformed presentation: {0}")]
    Structure(String),
    #[error("no splitting associativity")]
    NoSplittingAssociativity,
    #[error("invalid presentation `{}`\n{0}", .0.name)]
    Invalid(Box<ValidationReport>),
    #[error("unknown type `{name}`; available: {available}")]
    UnknownType { name: String, available: String },
    #[error("morphism error: {0}")]
    Morphism(String),
    #[error("monomial search over {m} generators exceeds the guard of {guard}")]
    SearchGuard { m: usize, guard: usize },
    #[error("power exponent must be at least 1")]
    BadExponent,
    #[error("rewrite budget exhausted")]
    BudgetExhausted,
    #[error("nesting cap exceeded")]
    NestingCapExceeded,
    #[error("{0}")]
    Usage(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(Box::new(e))
    }
}
