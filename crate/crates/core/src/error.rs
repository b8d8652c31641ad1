use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different rings ({left} vs {right} variables)")]
    VariableMismatch { left: usize, right: usize },
    #[error("index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("strand counts differ ({left} vs {right})")]
    StrandMismatch { left: usize, right: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("expected a {expected}-dimensional space for {what}, found {found}")]
    HomDimension { what: String, expected: usize, found: usize },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("not found within lattice: {0}")]
    NotFound(String),
    #[error("permutation bimodule summand has no Hecke class")]
    NoHeckeClass,
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VariableMismatch { .. } => "variable_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::StrandMismatch { .. } => "strand_mismatch",
            Error::Parse { .. } => "parse",
            Error::Shape(_) => "shape",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::HomDimension { .. } => "hom_dimension",
            Error::Verification(_) => "verification",
            Error::NotFound(_) => "not_found",
            Error::NoHeckeClass => "no_hecke_class",
        }
    }
}
