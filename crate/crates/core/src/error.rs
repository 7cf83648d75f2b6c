use thiserror::Error;

/// Errors raised by the library. Every variant corresponds to a violated
/// precondition or a degenerate input; none are transient.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unphysical polarization: |p| = {norm} exceeds 1")]
    UnphysicalPolarization { norm: f64 },

    #[error("matrix dimension {0} not supported (expected 2, 3 or 4)")]
    Dimension(usize),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("unsupported angular momentum coupling: {0}")]
    Coupling(String),

    #[error("unsupported spin j = {0}")]
    UnsupportedSpin(f64),

    #[error("polynomial has no non-zero coefficient")]
    NullPolynomial,

    #[error("state vector is zero or not normalized (norm {0})")]
    NullState(f64),

    #[error("triplet projection is null (weight {0:e})")]
    ProjectionNull(f64),

    #[error("degenerate frame: |p1 + p2| = {0:e}")]
    FrameDegenerate(f64),

    #[error("degenerate geometry: sin(theta) or p vanishes")]
    DegenerateGeometry,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
