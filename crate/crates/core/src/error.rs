use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of size {0} is beyond the supported range")]
    FieldTooLarge(u64),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("f is not monic in x")]
    NotMonicInX,
    #[error("f has degree 0 in x")]
    ConstantInX,
    #[error("f reducible over F_q(T)")]
    Reducible,
    #[error("f inseparable in x (df/dx = 0); the inseparable branch is out of scope")]
    Inseparable,
    #[error("objects belong to different algebra contexts")]
    ContextMismatch,
    #[error("lattice not contained: generator {witness} lies outside")]
    NotContained { witness: String },
    #[error("{0} is not a monic irreducible polynomial in T")]
    NotPrime(String),
    #[error("lattice is not an order: {0}")]
    NotAnOrder(String),
    #[error("order is not an overorder of the base order: {0}")]
    NotOverorder(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl AlgebraError {
    /// Rejections of the input, as opposed to failures of the computation.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            AlgebraError::Invariant(_)
                | AlgebraError::RankDeficient { .. }
                | AlgebraError::Singular
                | AlgebraError::ContextMismatch
                | AlgebraError::NotContained { .. }
                | AlgebraError::NotAnOrder(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
