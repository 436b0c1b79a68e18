//! Error type shared by every layer of the crate.

use thiserror::Error;

/// Everything that can go wrong while parsing, sweeping or reporting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input document or polynomial text.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed document describing an impossible complex shape.
    #[error("structure error: {0}")]
    Structure(String),
    /// Structurally valid complex that fails the 2-dimensional characterization.
    #[error("inadmissible input: {0}")]
    Inadmissible(String),
    #[error("division by zero")]
    DivisionByZero,
    /// Divisor is not invertible in Z((t)).
    #[error("division by non-unit {0}")]
    DivisionByNonUnit(String),
    /// A proven invariant failed: always an implementation bug.
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    /// A page differential was requested between modules that are not both free.
    #[error("undefined differential d^{r}_{p}")]
    UndefinedDifferential { r: usize, p: usize },
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("page inconsistency: {0}")]
    PageInconsistency(String),
    #[error("reduced matrix invalid: {0}")]
    ReducedMatrixInvalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 10,
            Error::Structure(_) => 11,
            Error::Inadmissible(_) => 12,
            Error::Io(_) => 14,
            _ => 13,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct_per_category() {
        let codes = [
            Error::Parse(String::new()).exit_code(),
            Error::Structure(String::new()).exit_code(),
            Error::Inadmissible(String::new()).exit_code(),
            Error::InternalInvariantViolation(String::new()).exit_code(),
            Error::Io(String::new()).exit_code(),
        ];
        let mut sorted = codes.to_vec();
        sorted.dedup();
        assert_eq!(sorted.len(), codes.len());
        assert!(codes.iter().all(|&c| c != 0));
    }
}
