use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NambuError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("subspace is not graded")]
    NonGradedSubspace,
    #[error("subspace is not a Hom-ideal")]
    NotAnIdeal,
    #[error("endomorphism is not a self-morphism: {0}")]
    EndomorphismCheckFailed(String),
    #[error("input is not a cochain: {0}")]
    NotACochain(String),
    #[error("cocycle is not closed")]
    CocycleNotClosed,
    #[error("cocycle is not even")]
    CocycleNotEven,
    #[error("no section τ with π∘τ = id and α∘τ = τ∘β exists")]
    NoCompatibleSection,
    #[error("invalid section: {0}")]
    SectionInvalid(String),
    #[error("coadjoint representation does not exist: {0}")]
    CoadjointMissing(String),
    #[error("θ is not a closed compatible cochain")]
    ThetaNotClosed,
    #[error("θ is not cyclic: {0}")]
    ThetaNotCyclic(String),
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("needs a field extension: discriminant {discriminant} is not a rational square ({context})")]
    NeedsFieldExtension { discriminant: Scalar, context: String },
    #[error("no α-stable isotropic vector: {0}")]
    NoStableIsotropicVector(String),
    #[error("dimension is odd")]
    OddDimension,
    #[error("ideal is not half-dimensional isotropic: {0}")]
    NotHalfDimensional(String),
    #[error("no α-stable isotropic complement: {0}")]
    ComplementNotFound(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{stage}: {source}")]
    Stage { stage: String, source: Box<NambuError> },
}

impl NambuError {
    pub fn at(self, stage: &str) -> NambuError {
        NambuError::Stage { stage: stage.to_string(), source: Box::new(self) }
    }

    /// Innermost error once pipeline stage tags are stripped.
    pub fn root(&self) -> &NambuError {
        match self {
            NambuError::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// 1 verification failure, 2 precondition, 3 field extension, 4 parse.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            NambuError::VerificationFailed(_) => 1,
            NambuError::NeedsFieldExtension { .. } => 3,
            NambuError::Parse(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, NambuError>;
