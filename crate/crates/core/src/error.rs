use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different fields")]
    SpecMismatch,
    #[error("division by zero")]
    DivByZero,
    #[error("zero input")]
    ZeroInput,
    #[error("{what}: size {size} exceeds cap {cap} (raise it with CARLITZLAB_CAPS={key}=N)")]
    TooLarge {
        what: &'static str,
        key: &'static str,
        size: String,
        cap: u64,
    },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("torsion moduli differ")]
    ModulusMismatch,
    #[error("target modulus is not a multiple of the source modulus")]
    NotAMultiple,
    #[error("elements belong to different cyclotomic fields")]
    FieldMismatch,
    #[error("subgroups are not nested")]
    NotNested,
    #[error("{0} is not a unit modulo the ambient modulus")]
    NotAUnit(String),
    #[error("torsion point does not lie in the top field")]
    NotInL,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("root search needs a degree-one modulus")]
    DegreeNotOne,
    #[error("moduli are not coprime")]
    NotCoprime,
    #[error("torsion points do not have the requested orders")]
    WrongOrders,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn too_large(what: &'static str, key: &'static str, size: impl ToString, cap: u64) -> Error {
    Error::TooLarge {
        what,
        key,
        size: size.to_string(),
        cap,
    }
}
