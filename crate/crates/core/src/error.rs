use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: ‖H − H*‖ = {deviation:e} exceeds {tolerance:e}")]
    NonHermitian { deviation: f64, tolerance: f64 },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("{what} did not converge within {budget} iterations")]
    NoConvergence { what: &'static str, budget: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not positive semidefinite: λ_min = {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("entry ({row}, {col}) = {value:e} is negative")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("bound kind {0} is not applicable: {1}")]
    UnsupportedKind(&'static str, String),
    #[error("operators do not commute: ‖AB − BA‖ = {commutator:e}")]
    NotCommuting { commutator: f64 },
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("invalid argument: {0}")]
    BadSpec(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("trial {case_id}: {source}")]
    InTrial { case_id: String, source: Box<Error> },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
