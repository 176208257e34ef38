use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QesError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("radicand 1+4A(A+1+(2L+8j+5)qA) = {radicand} is negative; B is undefined")]
    NegativeRadicand { radicand: f64 },

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("singular point at x = {x}")]
    Singularity { x: f64 },

    #[error("x = {x} lies outside the domain {domain}")]
    Domain { x: f64, domain: &'static str },

    #[error("pole of the continued potential near z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("gamma function pole at argument {arg}")]
    GammaPole { arg: f64 },

    #[error("inconsistent sextic coefficients: residual {residual:e}")]
    InconsistentCoefficients { residual: f64 },

    #[error("potential is complex-valued; use the residual check instead of the FD spectrum")]
    ComplexPotential,

    #[error("FD spectrum not converged: relative two-grid difference {difference:e} exceeds {tolerance:e}")]
    NotConverged { difference: f64, tolerance: f64 },

    #[error("adaptive differencing could not reach tolerance {tolerance:e} at x = {x}")]
    StepUnderflow { x: f64, tolerance: f64 },

    #[error("wavefunction is not normalizable on the grid: endpoint ratio {ratio:e}")]
    NonNormalizable { ratio: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, QesError>;

impl QesError {
    /// Validation errors are the caller's fault; everything else is numerical.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            QesError::InvalidParameter(_)
                | QesError::NegativeRadicand { .. }
                | QesError::OutOfRange { .. }
                | QesError::DegenerateParameters(_)
                | QesError::Singularity { .. }
                | QesError::Domain { .. }
                | QesError::GammaPole { .. }
                | QesError::ComplexPotential
                | QesError::InconsistentCoefficients { .. }
        )
    }
}
