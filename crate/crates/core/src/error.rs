use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failures of the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A mode has `Re λ < 0`, so the semigroup is not bounded.
    NegativeRealPart { index: usize },
    /// The observation Gram matrix has a negative eigenvalue.
    NotPsd { min_eigenvalue: f64 },
    NotHermitian,
    /// `λ = 0` where an injective generator is required.
    ZeroEigenvalue { index: usize },
    DimensionMismatch { expected: usize, found: usize },
    EmptySystem,
    NegativeTime,
    InvalidGrid(&'static str),
    InvalidArgument(&'static str),
    /// A mathematical hypothesis of the requested construction is violated.
    Precondition(&'static str),
    /// `∫_0^∞ e^{-zt} dt` with `Re z ≤ 0`.
    DivergentKernel,
    /// Some pair of modes has `Re(λₙ + conj λₘ) ≤ 0`, so `G(∞)` does not exist.
    NotInfiniteTimeAdmissible,
    NoConvergence { sweeps: usize },
    ToleranceNotMet,
    InsufficientModes { distinct: usize },
    /// The square-function estimate fails on the declared family or degenerates.
    SquareFunctionFails,
    /// The coercivity constant `δ` vanishes on the truncation.
    DeltaZero,
    /// No grid time satisfies the finite-time stopping rule.
    NoFiniteTau,
    /// `G(∞)` is singular.
    NotExactlyObservable,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NegativeRealPart { index } => {
                write!(f, "mode {index} has negative real part (unbounded semigroup)")
            }
            Error::NotPsd { min_eigenvalue } => write!(
                f,
                "observation Gram matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})"
            ),
            Error::NotHermitian => write!(f, "matrix is not Hermitian"),
            Error::ZeroEigenvalue { index } => {
                write!(f, "mode {index} has zero eigenvalue but A must be injective")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptySystem => write!(f, "system has no modes"),
            Error::NegativeTime => write!(f, "time must be nonnegative"),
            Error::InvalidGrid(why) => write!(f, "invalid grid: {why}"),
            Error::InvalidArgument(why) => write!(f, "invalid argument: {why}"),
            Error::Precondition(why) => write!(f, "precondition violated: {why}"),
            Error::DivergentKernel => write!(f, "kernel integral diverges on [0, inf)"),
            Error::NotInfiniteTimeAdmissible => {
                write!(f, "infinite-time Gramian does not exist (Re(λn + conj λm) <= 0)")
            }
            Error::NoConvergence { sweeps } => {
                write!(f, "Jacobi iteration did not converge in {sweeps} sweeps")
            }
            Error::ToleranceNotMet => write!(f, "quadrature tolerance not met"),
            Error::InsufficientModes { distinct } => write!(
                f,
                "need at least 3 distinct |λ| values for the exponent fit, found {distinct}"
            ),
            Error::SquareFunctionFails => {
                write!(f, "square-function estimate fails, no certificate possible")
            }
            Error::DeltaZero => write!(f, "coercivity constant delta is zero"),
            Error::NoFiniteTau => write!(f, "no grid time satisfies the finite-time stopping rule"),
            Error::NotExactlyObservable => {
                write!(f, "infinite-time Gramian is singular (not exactly observable)")
            }
        }
    }
}

impl core::error::Error for Error {}
