use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: max |m - m^dagger| = {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("trace is not one: |tr(m) - 1| = {deviation:e} exceeds {tolerance:e}")]
    TraceNotOne { deviation: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e} below -{tolerance:e}")]
    NotPositive { min_eigenvalue: f64, tolerance: f64 },

    #[error("matrix is not unitary: max |u^dagger u - 1| = {deviation:e} exceeds {tolerance:e}")]
    NotUnitary { deviation: f64, tolerance: f64 },

    #[error("{value} is not a non-negative half-integer spin")]
    InvalidSpin { value: f64 },

    #[error("invalid quantum numbers j={j}, m={m}, m'={mp}")]
    BadQuantumNumbers { j: f64, m: f64, mp: f64 },

    #[error("adaptive quadrature failed: {reason}")]
    QuadratureFailure { reason: String },

    #[error("Kraus operators are not complete: max |sum K^dagger K - 1| = {deviation:e}")]
    IncompleteKrausSet { deviation: f64 },

    #[error("state vector is zero")]
    ZeroState,

    #[error("discrete Wigner function has imaginary residue {residue:e}")]
    NonHermitianInput { residue: f64 },

    #[error("discrete phase space needs odd dimension, got {d}")]
    EvenDimension { d: usize },

    #[error("phase indices (t={t}, q={q}) do not define a bijective line family mod {d}")]
    InvalidPhaseIndices { t: i64, q: i64, d: usize },

    #[error("quadrature variance {variance:e} is not positive; squeezing too large for the thermal occupation")]
    UnphysicalVariance { variance: f64 },

    #[error("RK4 trace drift {drift:e} exceeds 1e-6; reduce the step size")]
    StepSizeTooLarge { drift: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration error: {0}")]
    Config(String),
}
