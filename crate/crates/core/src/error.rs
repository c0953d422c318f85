use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operator is not symmetric: max |M - M^T| = {asymmetry:.3e} exceeds {tolerance:.3e}")]
    NotSymmetric { asymmetry: f64, tolerance: f64 },

    #[error("diagonal blocks have unequal traces ({plus:.6e} vs {minus:.6e}); not an algebraic curvature operator")]
    BlockTraceMismatch { plus: f64, minus: f64 },

    #[error("matrix is not trace-free: trace = {trace:.3e}")]
    NotTraceFree { trace: f64 },

    #[error("curvature is not Einstein: trace-free Ricci block has norm {mixed_norm:.3e}")]
    NotEinstein { mixed_norm: f64 },

    #[error("bivector is not simple: |phi+|^2 = {plus_sq:.6e}, |phi-|^2 = {minus_sq:.6e}")]
    NotSimple { plus_sq: f64, minus_sq: f64 },

    #[error("bivector is not unit length: |phi| = {norm:.6e}")]
    NotUnit { norm: f64 },

    #[error("point {point:?} is closer than {margin:.3e} to the chart boundary")]
    BoundaryMargin { point: [f64; 4], margin: f64 },

    #[error("metric is not positive definite at {point:?}")]
    NotPositiveDefinite { point: [f64; 4] },

    #[error("conformal factor must be positive, got {value:.6e} at {point:?}")]
    NonPositiveConformalFactor { value: f64, point: [f64; 4] },

    #[error("non-finite integrand value at chart point {point:?}")]
    NonFinite { point: [f64; 4] },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("chi = {chi} and tau = {tau} have different parity")]
    Parity { chi: i64, tau: i64 },

    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),

    #[error("spinor tensor shape mismatch: {0}")]
    Shape(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
