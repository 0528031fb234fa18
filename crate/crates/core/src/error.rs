use thiserror::Error;

/// Errors raised by effect-algebra operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    HermiticityViolation { residual: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionError { expected: usize, found: usize },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("spectrum leaves [0,1] (eigenvalue {eigenvalue:.6e})")]
    SpectrumOutOfRange { eigenvalue: f64 },

    #[error("expected a rank-one effect, found rank {rank}")]
    RankError { rank: usize },

    #[error("order violation: A is not below B")]
    OrderViolation,

    #[error("projections are not orthogonal (tr PQ = {overlap:.3e})")]
    OrthogonalityError { overlap: f64 },

    #[error("ray lies outside the span of the given projections (residual {residual:.3e})")]
    SpanError { residual: f64 },

    #[error("degenerate ranges: {0}")]
    DegenerateRanges(String),

    #[error("sequential quotient failed: {0}")]
    QuotientFailure(String),

    #[error("value {value} outside the domain {domain}")]
    DomainError { value: f64, domain: &'static str },

    #[error("invalid parameter: {0}")]
    ParamError(String),

    #[error("fit failed: {0}")]
    FitError(String),

    #[error("map does not act by a scalar on the ray (residual {residual:.3e})")]
    NotScalarAction { residual: f64 },

    #[error("map is not in the fractional family (exponent {exponent})")]
    NotInFamily { exponent: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionError { expected, found })
    }
}
