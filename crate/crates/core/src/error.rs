use thiserror::Error;

/// Everything that can go wrong while building or analysing algebras, towers
/// and modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 251]")]
    NotPrime(u32),
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("entry {value} out of range for F_{p}")]
    EntryOutOfRange { value: u32, p: u32 },
    #[error("multiplication is not commutative: b{i}*b{j} != b{j}*b{i}")]
    NotCommutative { i: usize, j: usize },
    #[error("multiplication is not associative on basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("unit vector fails one*b{basis} = b{basis}")]
    BadUnit { basis: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree zero")]
    ZeroDegree,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("dimension {dim} exceeds cap {cap}")]
    DimCapExceeded { dim: usize, cap: usize },
    #[error("enumeration of {what} exceeds cap ({size} > {cap})")]
    EnumerationCapExceeded { what: String, size: u128, cap: u128 },
    #[error("homomorphisms have different sources")]
    SourceMismatch,
    #[error("not a unital ring homomorphism: {0}")]
    InvalidHom(String),
    #[error("algebra is not p-Boolean: basis element b{witness} satisfies b^p != b")]
    NotPBoolean { witness: usize },
    #[error("subspace is not closed under multiplication")]
    InternalClosureFailure,
    #[error("idempotent system failed validation: {0}")]
    SystemValidationFailure(String),
    #[error("vector is not idempotent")]
    NotIdempotent,
    #[error("no scalar c with e*x = c*e")]
    ScalarResolutionFailure,
    #[error("no preimage point for primitive idempotent {0}")]
    NoPreimagePoint(usize),
    #[error("input homomorphism is not injective")]
    NotInjectiveInput,
    #[error("invalid set map: {0}")]
    InvalidSetMap(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("level {level} out of range for depth {depth}")]
    LevelOutOfRange { level: usize, depth: usize },
    #[error("invalid subtower: {0}")]
    InvalidSubtower(String),
    #[error("complement does not close up at depth {depth} (level {level})")]
    InvalidAtDepth { level: usize, depth: usize },
    #[error("open family does not stabilize before depth {0}")]
    NotClopenAtThisDepth(usize),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid sheaf: {0}")]
    InvalidSheaf(String),
    #[error("json: {0}")]
    Json(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Domain,
    Cap,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::DimCapExceeded { .. } | Error::EnumerationCapExceeded { .. } => ErrorClass::Cap,
            _ => ErrorClass::Domain,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
