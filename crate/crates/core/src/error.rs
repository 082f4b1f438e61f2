use thiserror::Error;

/// Errors raised by the algebra, calculus and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live on different charts ({left} vs {right})")]
    ChartMismatch { left: String, right: String },

    #[error("expected a point of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("terms disagree on bidegree: ({0},{1}) vs ({2},{3})")]
    MixedDegrees(usize, usize, usize, usize),

    #[error("form degree {degree} exceeds chart dimension {dim}")]
    DegreeTooHigh { degree: usize, dim: usize },

    #[error("variable index {index} out of range for a chart of dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },

    #[error("expected a scalar differential form, got a field of bidegree ({0},{1})")]
    NotScalarForm(usize, usize),

    #[error("bad valence: {0}")]
    BadValence(String),

    #[error("operation requires a cotangent chart, got chart [{0}]")]
    NotCotangent(String),

    #[error("form is not horizontal: term {0} has a fiber differential")]
    NotHorizontal(String),

    #[error("coefficient {coefficient} is not homogeneous of fiber degree {degree}")]
    NotHomogeneous { coefficient: String, degree: usize },

    #[error("form is not closed")]
    NotClosed,

    #[error("a nonzero closed 0-form has no primitive")]
    ConstantHasNoPrimitive,

    #[error("invalid Poisson bivector: {0}")]
    InvalidPoisson(String),

    #[error("invalid metric data: {0}")]
    InvalidMetric(String),

    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("operator `{op}` expects {expected} argument(s), got {got}")]
    Arity {
        op: String,
        expected: usize,
        got: usize,
    },

    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),

    #[error("invalid case configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn valence(message: impl Into<String>) -> Self {
        Error::BadValence(message.into())
    }
}
