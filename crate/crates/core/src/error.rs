use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("qubit index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("negative eigenvalue {0:e} below tolerance")]
    NegativeEigenvalue(f64),
    #[error("covariance matrix not positive definite at pivot {0}")]
    CholeskyFailure(usize),
    #[error("invalid channel partition: {0}")]
    InvalidPartition(&'static str),
    #[error("dephasing map produced an invalid state: {0}")]
    MapNumerics(&'static str),
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("trace {0} differs from one")]
    TraceNotOne(f64),
}
