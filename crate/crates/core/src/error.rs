use thiserror::Error;

pub type Result<T> = std::result::Result<T, KmsError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KmsError {
    #[error("matrix dimension n = {0} is not supported (need n >= 3)")]
    Size(usize),
    #[error("odd dimension n >= 3 required, got {0}")]
    NotOdd(usize),
    #[error("mu = {mu} is degenerate: {what} vanishes")]
    DegenerateMu {
        mu: num_complex::Complex64,
        what: &'static str,
    },
    #[error("rho = {0} lies in the excluded set {{-(n+1)/(n-1), -1, 1, (n+1)/(n-1)}}")]
    ExcludedRho(num_complex::Complex64),
    #[error("half-integer Chebyshev degree evaluated at z = {0} (sin(Arccos z) = 0)")]
    DegenerateArgument(num_complex::Complex64),
    #[error("argument {0} outside the domain of the function")]
    Domain(f64),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("denominator vanishes at t = {0}")]
    DegenerateDenominator(num_complex::Complex64),
    #[error("leading series coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("t_c = {0} is degenerate for the closed-form Puiseux parameters")]
    DegenerateT(num_complex::Complex64),
    #[error("level-curve condition |a|^2 - 2|b|cos(Theta) != 0 violated")]
    ConditionViolated,
    #[error("iteration did not converge: {0}")]
    Convergence(String),
    #[error("positivity violated: {0}")]
    Positivity(String),
    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("eigenvalue {0} cannot be classified as type-1 or type-2")]
    AmbiguousType(usize),
    #[error("oracle disagrees: {0}")]
    OracleMismatch(String),
    #[error("integer coefficient overflow for n = {0}")]
    CoefficientOverflow(usize),
}
