use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable registries differ: [{left}] vs [{right}]")]
    RegistryMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent on ordinary variable `{0}`")]
    NegativeExponent(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("`{0}` is not a unit of the coefficient ring")]
    NotAUnit(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("n = {0} is out of range (need {1})")]
    InvalidN(usize, &'static str),
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("element is not in g0")]
    NotInG0,
    #[error("cochain value lies outside the algebra: {0}")]
    OutsideAlgebra(String),
    #[error("symbolic parameters present; specialize first")]
    Symbolic,
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("model `{name}` is not defined for n = {n}")]
    IncompatibleModel { name: String, n: usize },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("frame is not invertible over the chart ring")]
    SingularFrame,
    #[error("metric is not invertible over the chart ring; declare its denominators")]
    SingularMetric,
    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),
    #[error("not a symmetry: {0}")]
    NotASymmetry(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("invalid ansatz: {0}")]
    InvalidAnsatz(String),
    #[error("untagged expectation `{0}`")]
    Untagged(String),
}

pub type Result<T> = std::result::Result<T, Error>;
