use thiserror::Error;

/// Every failure the library reports. Variants are domain errors; callers such
/// as the CLI map them to exit status 2.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("singular linear transform")]
    SingularTransform,
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("region undefined: {0}")]
    RegionUndefined(String),
    #[error("not a Hopf point: {0}")]
    NotHopf(String),
    #[error("transform does not produce the normal-form linear part: {0}")]
    BadTransform(String),
    #[error("complexified system violates the reality constraints: {0}")]
    NotRealSystem(String),
    #[error("hyperbolic eigenvalue is zero")]
    DegenerateLambda,
    #[error("constant function cannot serve as a first integral")]
    NotAFirstIntegralCandidate,
    #[error("focus obstruction at radial order {order}: {value}")]
    FocusObstruction { order: usize, value: String },
    #[error("pivot parameters do not give an invertible linear part")]
    BadPivots,
    #[error("jet degree {have} too low for requested degree {want}")]
    TruncationTooLow { have: usize, want: usize },
    #[error("integrator step size underflow at t = {0}")]
    StiffnessFailure(f64),
    #[error("orbit did not return to the section within t = {0}")]
    NoReturn(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
