use thiserror::Error;

use crate::gas::MomentKind;

/// Errors raised by the evaluation routines.
///
/// Numerical payloads are carried as `f64` regardless of the scalar type
/// the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infeasible half moments: N1*N5/N2^2 = {upsilon} must exceed 1")]
    InfeasibleMoments { upsilon: f64 },

    #[error("infeasible state: incoming moment {moment} = {value:e} is not positive")]
    InfeasibleState { moment: MomentKind, value: f64 },

    #[error("minimal entropy flux is not defined standalone for delta = 0; use the entropy-production path where log Gamma cancels")]
    MonatomicUnsupported,

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("recast form is ill-conditioned here (cancellation factor {kappa:e})")]
    IllConditioned { kappa: f64 },

    #[error("direct and recast forms disagree: direct = {direct:e}, recast = {recast:e}")]
    CrossCheck { direct: f64, recast: f64 },

    #[error("no feasible point in the search region")]
    NoFeasiblePoint,

    #[error("search bound reached: positive entropy production still possible at mach = {0}")]
    SearchBound(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
