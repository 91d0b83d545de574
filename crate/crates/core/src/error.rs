use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not real-valued: conjugate symmetry fails at (alpha, beta) = {pairs:?}")]
    SymmetryViolation { pairs: Vec<(Vec<u32>, Vec<u32>)> },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("curve base point does not match the center of the polynomial")]
    BasePointMismatch,

    #[error("curve germ must be non-constant with vanishing constant terms")]
    ConstantCurve,

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("truncation order must be at least 1, got {0}")]
    BadTruncation(u32),

    #[error("matrix is not skew-Hermitian")]
    NotSkewHermitian,

    #[error("I + S is singular; resample the skew-Hermitian matrix")]
    Resample,

    #[error("basis size mismatch: unitary has size {unitary}, decomposition basis has {basis}")]
    BasisSizeMismatch { unitary: usize, basis: usize },

    #[error("linear forms must be homogeneous of degree one: form {0}")]
    NotLinearForm(usize),

    #[error("linear forms are dependent; slice has dimension {found} instead of {expected}")]
    DependentForms { expected: usize, found: usize },

    #[error("curve leaves the slice: form {form} does not vanish along it")]
    CurveNotInSlice { form: usize },

    #[error("q must satisfy 1 <= q <= n (q = {q}, n = {n})")]
    BadQ { q: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("template set is empty")]
    EmptyTemplates,

    #[error("json: {0}")]
    Json(String),
}
