use thiserror::Error;

/// Crate-wide error type; variants carry the data needed for a structured
/// diagnostic report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a factor of {value} exceeds the trial-division bound {bound}")]
    FactorizationTooLarge { value: String, bound: u64 },

    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("{0} is not admissible as a quadratic field parameter (must be squarefree, not 0 or 1)")]
    InvalidDiscriminant(i64),

    #[error("generator {index} has no assigned value")]
    UnboundGenerator { index: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("quiver has no vertices")]
    EmptyQuiver,

    #[error("quaternion parameters must be nonzero")]
    ZeroParameter,

    #[error("relation {index} ({text}) does not evaluate to zero")]
    RelationViolated { index: usize, text: String },

    #[error("structure constants fail associativity at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error("stated unit does not satisfy the unit axioms")]
    BadUnit,

    #[error("not a system of orthogonal idempotents summing to one: {0}")]
    NotOrthogonalIdempotents(String),

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("representation is not fixed by the twisted action at generator {0}")]
    NotFixed(String),

    #[error("representation is not isomorphic to its Galois conjugate")]
    NotGaloisStable,

    #[error("representation is not Schur (commutant dimension {0})")]
    NotSchur(usize),

    #[error("norm of the scaling element does not equal the cocycle scalar")]
    NormMismatch,

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("zero input where a nonzero value is required")]
    ZeroInput,

    #[error("degenerate discriminant: lambda^2 - 4 = 0")]
    DegenerateDiscriminant,

    #[error("quiver representation has total dimension zero")]
    ZeroTotalDimension,

    #[error("not a path-algebra representation: {0}")]
    NotPathAlgebraRep(String),

    #[error("coefficient {coeff} is not representable in F_{p}")]
    CoefficientNotRepresentable { p: u64, coeff: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant, used by the CLI layer.
    pub fn name(&self) -> &'static str {
        match self {
            Error::FactorizationTooLarge { .. } => "FactorizationTooLarge",
            Error::InvalidPrime(_) => "InvalidPrime",
            Error::InvalidDiscriminant(_) => "InvalidDiscriminant",
            Error::UnboundGenerator { .. } => "UnboundGenerator",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::EmptyQuiver => "EmptyQuiver",
            Error::ZeroParameter => "ZeroParameter",
            Error::RelationViolated { .. } => "RelationViolated",
            Error::NotAssociative(..) => "NotAssociative",
            Error::BadUnit => "BadUnit",
            Error::NotOrthogonalIdempotents(_) => "NotOrthogonalIdempotents",
            Error::NotACocycle(_) => "NotACocycle",
            Error::NotFixed(_) => "NotFixed",
            Error::NotGaloisStable => "NotGaloisStable",
            Error::NotSchur(_) => "NotSchur",
            Error::NormMismatch => "NormMismatch",
            Error::BudgetExhausted(_) => "BudgetExhausted",
            Error::ZeroInput => "ZeroInput",
            Error::DegenerateDiscriminant => "DegenerateDiscriminant",
            Error::ZeroTotalDimension => "ZeroTotalDimension",
            Error::NotPathAlgebraRep(_) => "NotPathAlgebraRep",
            Error::CoefficientNotRepresentable { .. } => "CoefficientNotRepresentable",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Internal(_) => "Internal",
        }
    }
}
