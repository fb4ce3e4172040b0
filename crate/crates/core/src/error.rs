use core::fmt;

/// Errors surfaced by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A coordinate vector does not describe a strictly interior point.
    InvalidPoint { norm: f64 },
    /// Two objects with incompatible dimensions were combined.
    DimensionMismatch { expected: usize, got: usize },
    /// A quadrature node left the open unit ball.
    QuadratureDivergence,
    /// An integrand returned a non-finite value at a sample point.
    NonFiniteSample,
    /// Too many Monte Carlo samples stayed unresolved at the maximum budget.
    InsufficientResolution { unresolved_fraction: f64 },
    /// A pair of lattice centers could not be certified as separated.
    SeparationUncertain,
    /// A monomial product exceeded the configured maximum degree.
    DegreeOverflow { degree: usize, max_degree: usize },
    /// A test-function exponent would overflow `exp`.
    OverflowGuard { exponent: f64 },
    /// A matrix expected to be Hermitian is not, beyond sampling error.
    NonHermitian { residual: f64 },
    /// A configuration value is outside its documented range.
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPoint { norm } => {
                write!(f, "point with |z| = {norm} is not strictly interior")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::QuadratureDivergence => write!(f, "quadrature node left the unit ball"),
            Error::NonFiniteSample => write!(f, "integrand returned a non-finite value"),
            Error::InsufficientResolution { unresolved_fraction } => write!(
                f,
                "membership unresolved for {:.1}% of samples at maximum budget",
                100.0 * unresolved_fraction
            ),
            Error::SeparationUncertain => {
                write!(f, "lattice separation could not be certified at maximum budget")
            }
            Error::DegreeOverflow { degree, max_degree } => {
                write!(f, "monomial degree {degree} exceeds configured maximum {max_degree}")
            }
            Error::OverflowGuard { exponent } => {
                write!(f, "test-function exponent {exponent} would overflow")
            }
            Error::NonHermitian { residual } => {
                write!(f, "matrix symmetry residual {residual} too large")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
