use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state needs at least 2 amplitudes, got {0}")]
    TooShort(usize),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("amplitude sum vanishes (|sum| = {0:e}); uniform post-selection carries no signal")]
    ZeroSum(f64),
    #[error("coupling angle {0} outside (0, pi]")]
    InvalidTheta(f64),
    #[error("target index {x} outside 1..={dim}")]
    TargetOutOfRange { x: usize, dim: usize },
    #[error("alpha^2 + beta^2 vanishes")]
    DegenerateAlphaBeta,
    #[error("alpha and beta both vanish; phase branch undefined")]
    BranchAmbiguity,
    #[error("inverse phase map has a pole at this phase")]
    PoleAtPhase,
    #[error("reconstruction is singular: sin(theta/2) vanishes at theta = {0}")]
    SingularTheta(f64),
    #[error("Jacobian is singular (det = {det:e})")]
    SingularJacobian { det: f64 },
    #[error("Fisher matrix is singular (condition number {0:e})")]
    SingularFisher(f64),
    #[error("outcome distribution is degenerate")]
    DegenerateDistribution,
    #[error("alpha + i beta vanishes; gamma has a pole")]
    PoleAtGamma,
    #[error("closed form needs integer spin, got j = {0}/2")]
    HalfIntegerJ(u32),
    #[error("{what}: imaginary residue {residue:e} exceeds tolerance")]
    ComplexResidue { what: &'static str, residue: f64 },
    #[error("variance limit did not converge: {0}")]
    DivergentVariance(String),
    #[error("singular working point: {0}")]
    SingularWorkingPoint(String),
    #[error("observable `{observable}` cannot act on a {state} state")]
    UnsupportedRepresentation { observable: String, state: String },
    #[error("empirical mean {mean} of {observable} is outside the invertible range")]
    OutOfDomainMean { observable: String, mean: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the CLI: 2 for configuration problems, 3 for
    /// numeric-domain failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidInput(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
