use std::fmt;

use permspec_core::CoreError;

/// Errors for the analysis layer.
#[derive(Clone, Debug, PartialEq)]
pub enum LabError {
    /// A formula that must produce an integer produced something else —
    /// treated as a transcription failure, never silently rounded.
    FormulaMismatch(String),
    /// A cycle-type constructor received a cycle length below 3.
    CycleTooShort { length: usize },
    /// A closed form was requested outside the cases where it is defined.
    UndefinedCase(String),
    /// A ranked-magnitudes call violated the `n ≥ 4(3t+j)` hypothesis.
    HypothesisViolated { n: i64, t: i64, j: i64 },
    /// Parity analysis requires a member of Λ_n³.
    NotInLambda3,
    /// The general ranked-magnitudes algorithm needs the indecomposable
    /// spectrum of a size that was not supplied.
    MissingSpectrum { size: usize },
    /// Enumeration was asked to exceed its configured ceiling; carries an
    /// estimate of how large the refused run would have been.
    EnumerationLimit {
        n: usize,
        limit: usize,
        estimated_count: f64,
    },
    /// Precondition violations (out-of-range arguments and the like).
    Domain(String),
    /// Propagated from the exact-arithmetic layer.
    Core(CoreError),
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::FormulaMismatch(detail) => write!(f, "formula mismatch: {detail}"),
            LabError::CycleTooShort { length } => {
                write!(f, "cycle too short: length {length} < 3")
            }
            LabError::UndefinedCase(detail) => write!(f, "undefined case: {detail}"),
            LabError::HypothesisViolated { n, t, j } => {
                write!(f, "hypothesis violated: n = {n} < 4(3t+j) for t = {t}, j = {j}")
            }
            LabError::NotInLambda3 => write!(f, "A not in Λ_n³"),
            LabError::MissingSpectrum { size } => {
                write!(f, "missing indecomposable spectrum for size {size}")
            }
            LabError::EnumerationLimit {
                n,
                limit,
                estimated_count,
            } => write!(
                f,
                "enumeration limit exceeded: n = {n} > {limit} (≈ {estimated_count:.3e} matrices)"
            ),
            LabError::Domain(detail) => write!(f, "domain error: {detail}"),
            LabError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LabError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            LabError::Core(e) => Some(e),
            _ => None,
        }
    }
}

impl From<CoreError> for LabError {
    fn from(e: CoreError) -> Self {
        LabError::Core(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_messages() {
        assert!(LabError::FormulaMismatch("x".into())
            .to_string()
            .starts_with("formula mismatch"));
        assert!(LabError::CycleTooShort { length: 2 }
            .to_string()
            .starts_with("cycle too short"));
        assert!(LabError::UndefinedCase("n".into())
            .to_string()
            .starts_with("undefined case"));
        assert!(LabError::HypothesisViolated { n: 10, t: 1, j: 1 }
            .to_string()
            .starts_with("hypothesis violated"));
        assert_eq!(LabError::NotInLambda3.to_string(), "A not in Λ_n³");
        assert!(LabError::MissingSpectrum { size: 9 }
            .to_string()
            .contains("size 9"));
    }
}
