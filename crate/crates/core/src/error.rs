use thiserror::Error;

/// Errors raised by the polynomial, potential and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A closed form divides by zero or hits a Gamma pole for these parameters.
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    /// A polynomial denominator vanishes (within tolerance) at `x`.
    #[error("singular point at x = {x}: {what}")]
    SingularPoint { x: f64, what: String },

    /// The requested quantum number is not a bound state of the potential.
    #[error("no bound state n = {n}: {reason}")]
    NoSuchBoundState { n: u32, reason: String },

    #[error("iteration failed to converge: {0}")]
    ConvergenceFailure(String),

    /// `x` lies outside (or too close to the edge of) the domain.
    #[error("x = {x} is outside the domain ({lo}, {hi})")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    /// Parameters fail the no-zeros conditions of the weight denominator.
    #[error("inadmissible parameters (a = {a}, b = {b}, m = {m})")]
    Inadmissible { a: f64, b: f64, m: u32 },

    /// Any other violated precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
