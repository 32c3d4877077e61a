use thiserror::Error;

/// Errors raised by the statistics, model and efficiency routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid sample: {0}")]
    InvalidSample(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tied observations in column {column}")]
    TiesPresent { column: usize },
    #[error("statistic {0} has no standardized form")]
    UnsupportedKind(String),
    #[error("{what}: {size} evaluations exceeds the cap of {cap}")]
    TooLarge { what: &'static str, size: f64, cap: f64 },
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("dependence density is unbounded: {0}")]
    Unbounded(String),
    #[error("correlation {0} outside [0, 1)")]
    BadCorrelation(f64),
    #[error("dependence function `{0}` carries no closed-form integrals")]
    MissingClosedForm(String),
    #[error("integrand of `{0}` is singular on the cube faces; use the transformed Gauss-Hermite rule")]
    SingularIntegrand(String),
    #[error("degenerate model: Fisher information is zero")]
    DegenerateModel,
    #[error("efficiency {value} of {statistic} exceeds the Fisher bound")]
    FisherBoundViolated { statistic: &'static str, value: f64 },
    #[error("reference slope is zero")]
    DivisionByZeroSlope,
    #[error("family is not closed under supersets: {0}")]
    NotUpward(String),
    #[error("point outside the unit cube: {0}")]
    OutOfDomain(String),
    #[error("measure gives a zero Lagrange multiplier")]
    DegenerateMeasure,
    #[error("theta {theta} exceeds the validity bound {theta_max}")]
    ThetaTooLarge { theta: f64, theta_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
