use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A denominator does not split into rational linear factors.
    #[error("polynomial {0} has irrational or complex roots")]
    IrrationalOrComplexRoots(String),

    #[error("degree bound violated: {0}")]
    DegreeViolation(String),

    #[error(
        "no polynomial eigenfunction of degree {degree}: eigenvalue collides with degree {row} \
         and the back-substitution row is inconsistent"
    )]
    EigenvalueCollisionUnsolvable { degree: usize, row: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("moment recurrence pivot vanishes at k = {k}")]
    PivotVanishes { k: usize },

    #[error("moment table holds {have} ratios, {needed} required")]
    TableTooShort { needed: usize, have: usize },

    #[error("result is not a polynomial: {0}")]
    NonPolynomialResult(String),

    #[error("quadrature budget of {budget} evaluations exhausted (error estimate {estimate:e})")]
    BudgetExceeded { budget: usize, estimate: f64 },

    #[error("classification is not admissible: {0}")]
    NotAdmissible(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IrrationalOrComplexRoots(_) => "IrrationalOrComplexRoots",
            Error::DegreeViolation(_) => "DegreeViolation",
            Error::EigenvalueCollisionUnsolvable { .. } => "EigenvalueCollisionUnsolvable",
            Error::PreconditionViolation(_) => "PreconditionViolation",
            Error::PivotVanishes { .. } => "PivotVanishes",
            Error::TableTooShort { .. } => "TableTooShort",
            Error::NonPolynomialResult(_) => "NonPolynomialResult",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::DivisionByZero => "DivisionByZero",
            Error::Parse { .. } => "Parse",
        }
    }

    pub(crate) fn irrational(p: &impl std::fmt::Display) -> Self {
        Error::IrrationalOrComplexRoots(p.to_string())
    }

    pub(crate) fn parse(pos: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            message: message.into(),
        }
    }
}
