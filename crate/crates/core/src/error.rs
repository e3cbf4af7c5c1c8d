use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular to working precision")]
    SingularMatrix,
    #[error("matrix pencil is singular (det(A - zB) vanishes identically)")]
    SingularPencil,
    #[error("cannot build a reflector for the zero vector")]
    ZeroVector,
    #[error("evaluation point hits a pole")]
    PoleHit,
    #[error("coefficient vector is zero")]
    ZeroCoefficients,
    #[error("resolvent A - z_{0} I is singular")]
    ResolventSingular(usize),
    #[error("denominator matrix D(A) is singular (A has an eigenvalue at a pole)")]
    DenominatorSingular,
    #[error("need at least {min} boundary points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("scalar function cannot be evaluated at {re}{im:+}i")]
    EvaluationFailure { re: f64, im: f64 },
    #[error(
        "h_{0} is zero, so the linearization is undefined; translate the problem so no support point sits at the origin"
    )]
    ZeroH(usize),
    #[error("all eigenvector blocks are negligible")]
    DegenerateVector,
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
