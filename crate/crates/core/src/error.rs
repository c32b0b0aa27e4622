use thiserror::Error;

use crate::exact::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `den` does not divide `num`. Either a bug or a falsified closed form.
    #[error("inexact division: {num} / {den}")]
    InexactDivision { num: Int, den: Int },

    #[error("division by zero")]
    DivisionByZero,

    /// The inverse would need a denominator that is not a power of two.
    #[error("matrix is not invertible with a power-of-two scale (det numerator {det})")]
    NotInvertibleExactly { det: Int },

    #[error("matrix does not satisfy T^2 = {trace}*T - ({det})*I")]
    RelationViolated { trace: Int, det: Int },

    #[error("conjugating matrix must be an integer matrix with determinant +1 or -1")]
    NotUnimodular,

    #[error("index {n} outside the supported window 0..={max}")]
    IndexTooLarge { n: i64, max: i64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
