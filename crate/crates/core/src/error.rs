use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a zero quaternion")]
    DivisionByZero,

    #[error("matrix is singular (|det A_C| = {det:e}, threshold {threshold:e})")]
    SingularMatrix { det: f64, threshold: f64 },

    #[error("characteristic polynomial has non-real coefficients (max |Im| = {max_imag:e})")]
    NonRealCoefficients { max_imag: f64 },

    #[error("determinant of the complex embedding is not positive (a0 = {a0:e})")]
    NonPositiveDeterminant { a0: f64 },

    #[error("normal-form reduction degenerated: {0}")]
    DegenerateReduction(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
