use std::fmt;

/// Errors raised by the core matrix and permanent operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// A permanent was requested for a 0×0 matrix.
    EmptyMatrix,
    /// The expansion oracle was asked for a size beyond its configured limit.
    OracleLimit { n: usize, limit: usize },
    /// A matrix or value failed to parse from its text form.
    Parse(String),
    /// An operation received a matrix outside its documented domain.
    Domain(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::EmptyMatrix => write!(f, "empty matrix"),
            CoreError::OracleLimit { n, limit } => {
                write!(f, "oracle limit: n = {n} exceeds expansion limit {limit}")
            }
            CoreError::Parse(msg) => write!(f, "parse error: {msg}"),
            CoreError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for CoreError {}
