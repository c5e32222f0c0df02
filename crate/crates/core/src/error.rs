use thiserror::Error;

/// Every failure the library reports. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square")]
    NotSquare,
    #[error("diagonal entry {0} is not 2")]
    DiagonalNotTwo(usize),
    #[error("off-diagonal entry ({0},{1}) is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("entry ({0},{1}) is zero but its transpose is not")]
    AsymmetricZero(usize, usize),
    #[error("matrix is not symmetrizable (cycle {cycle:?})")]
    NotSymmetrizable { cycle: Vec<usize> },
    #[error("rank {0} exceeds the supported maximum")]
    RankTooLarge(usize),
    #[error("empty index set")]
    EmptySet,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("root has zero norm")]
    ZeroNorm,
    #[error("pairing is not an integer")]
    NonIntegralPairing,
    #[error("operation not supported for this kind of diagram")]
    UnsupportedKind,
    #[error("vector is not a real root")]
    NotRealRoot,
    #[error("root {0} is not a real root")]
    NotRealRootAt(usize),
    #[error("roots {0} and {1} coincide")]
    DuplicateRoot(usize, usize),
    #[error("pairing matrix is not a generalized Cartan matrix")]
    NotAGcm,
    #[error("diagram is not of affine type")]
    NotAffine,
    #[error("enumeration exceeds the cap of {0} roots")]
    BoundTooLargeForMemory(usize),
    #[error("vector length {got} does not match rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("roots are not a π-system")]
    NotAPiSystem,
    #[error("a root is supported on both sides of the split")]
    MixedSupport,
    #[error("root is not positive")]
    NotPositive,
    #[error("one part of the split is not a π-system")]
    InnerNotPiSystem,
    #[error("removing the attached vertex does not leave an affine component")]
    NotAffineComplement,
    #[error("the affine component is of type A_2l^(2)")]
    TwistedA2lEven,
    #[error("vertex is not attached by a single edge to a mark-one node")]
    BadAttachment,
    #[error("multiplier at vertex {0} is not divisible by the twist")]
    DivisibilityViolation(usize),
    #[error("vertex set is not a connected affine subdiagram")]
    NotAffineSubdiagram,
    #[error("vertex set is not of finite type")]
    NotFiniteType,
    #[error("vertex set is not connected")]
    NotConnected,
    #[error("cannot delete every vertex")]
    RemovesEverything,
    #[error("edge is not a double, triple or quadruple edge in the required direction")]
    NotApplicableEdge,
    #[error("principle does not apply: {0}")]
    NotApplicable(String),
    #[error("predicted type differs from the computed one")]
    PredictionMismatch,
    #[error("divisibility hypothesis fails for d={d} at ({i},{j})")]
    HypothesisFails { d: i64, i: usize, j: usize },
    #[error("root is not in the Weyl orbit of the subdiagram")]
    NotInOrbitOfY,
    #[error("problem too large for exhaustive search")]
    TooLarge,
    #[error("ambients do not match")]
    AmbientMismatch,
    #[error("composed certificate failed verification")]
    CompositionFailedVerification,
    #[error("rank range {0}..{1} is outside 3..10")]
    RankOutOfRange(usize, usize),
    #[error("unknown canonical key {0}")]
    UnknownCanonicalKey(String),
    #[error("serial {0} assigned twice")]
    DuplicateSerial(u32),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// The variant name, used as a stable error code in JSON output.
    pub fn code(&self) -> String {
        let s = format!("{self:?}");
        s.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
    }
}
