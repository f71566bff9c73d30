use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Values are carried as `f64` regardless of the scalar type so that the
/// error stays `'static` and printable.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("unsupported Bessel order {order} (supported: 0 <= order <= {max})")]
    UnsupportedOrder { order: f64, max: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("coupling alpha = {alpha} is in the {found} region; {expected} required")]
    Regime {
        alpha: f64,
        found: &'static str,
        expected: &'static str,
    },

    #[error(
        "no generalized oscillator representation exists for alpha = {alpha} < -1/4: \
         every real solution of the zero-mode equation oscillates near the origin"
    )]
    NoRepresentation { alpha: f64 },

    #[error("sampled function is missing its derivative channel")]
    MissingDerivative,

    #[error("grid and value lengths differ ({grid} vs {values})")]
    LengthMismatch { grid: usize, values: usize },

    #[error("grid must be positive and strictly increasing")]
    BadGrid,

    #[error("adaptive quadrature did not converge: estimated error {error:e} after {intervals} intervals")]
    Quadrature { error: f64, intervals: usize },

    #[error("ODE integration failed at x = {at}: {reason}")]
    Integration { at: f64, reason: String },

    #[error("matching point x0 = {x0} is outside the asymptotic region (correction ratio {ratio:e})")]
    OriginTooFar { x0: f64, ratio: f64 },

    #[error("zero window too large: O(x^2) correction bound {bound:e} exceeds {tolerance:e}")]
    WindowTooLarge { bound: f64, tolerance: f64 },

    #[error("root finding did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        func,
        detail: detail.into(),
    }
}
