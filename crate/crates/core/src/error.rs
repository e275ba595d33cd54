use crate::numeric::NumericError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("rule `{rule}` has no parameter `{param}`")]
    UnknownParameter { rule: String, param: String },
    #[error("rule `{rule}` requires parameter `{param}`")]
    MissingParameter { rule: String, param: String },
    #[error("parameter out of domain for `{rule}`: {reason}")]
    ParamOutOfDomain { rule: String, reason: String },
    #[error("rule `{0}` has no free parameter to scan")]
    NoFreeParameter(String),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("interval is empty: a must be below b")]
    BadInterval,
    #[error("rule uses derivative values but the integrand provides no derivative")]
    MissingDerivative,
    #[error("order r = {order} exceeds the degree of exactness d = {degree}")]
    OrderExceedsExactness { order: usize, degree: i64 },
    #[error("kernel constant could not be certified: radius {radius} exceeds tolerance {tol}")]
    NotCertified { radius: f64, tol: f64 },
    #[error("point lies outside the box")]
    PointOutsideBox,
    #[error("invalid box: {0}")]
    InvalidBox(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("{0} must be non-negative")]
    Negative(&'static str),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("grid needs at least 3 points, got {0}")]
    GridTooSmall(usize),
    #[error("closed-form and numerical minimiser disagree: {0}")]
    CrossCheckMismatch(String),
    #[error("malformed input: {0}")]
    Format(String),
}
