use thiserror::Error;

/// Errors raised by the toolkit's exact-arithmetic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level mismatch: left operand has level {left}, right operand has level {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("coefficient count {got} does not match 2^{level} = {expected}")]
    CoefficientCount {
        level: u32,
        expected: usize,
        got: usize,
    },

    #[error("cannot embed a level-{from} element into level {to}")]
    InvalidEmbedding { from: u32, to: u32 },

    #[error("element is not imaginary (real part {0})")]
    NotImaginary(String),

    #[error("probe level {level} exceeds the cost guard of {max}")]
    CostGuard { level: u32, max: u32 },

    #[error("unsupported sphere dimension {0} (expected 2 or 6)")]
    SphereDimension(u32),

    #[error("expected {expected} parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },

    #[error("point is not on the unit sphere (norm squared {0})")]
    NotUnit(String),

    #[error("vector is not tangent at the base point (inner product {0})")]
    NotTangent(String),

    #[error("tangent vectors are based at different points")]
    BaseMismatch,

    #[error("elementary symmetric index {j} exceeds variable count {m}")]
    SymmetricIndex { m: usize, j: usize },

    #[error("polynomial is not symmetric: swapping variables {0} and {1} changes it")]
    NotSymmetric(usize, usize),

    #[error("generator `{0}` has no assignment")]
    Unassigned(String),

    #[error("generator lists differ")]
    GeneratorMismatch,

    #[error("division by a series whose constant term {0} is not a unit")]
    NonUnitDivisor(String),

    #[error("composition requires an inner series with zero constant term (got {0})")]
    NonzeroInnerConstant(String),

    #[error("series has a nonzero odd coefficient at degree {0}")]
    NotEven(usize),

    #[error("series has nonzero constant term {0}, cannot divide by the variable")]
    NonzeroConstant(String),

    #[error("missing Chern class c_{0}")]
    MissingClass(usize),

    #[error("Chern class c_{index} given for a bundle of rank {rank}")]
    ClassBeyondRank { index: usize, rank: usize },

    #[error("class kind mismatch: {left} vs {right}")]
    KindMismatch { left: String, right: String },

    #[error("class models live on different spheres: S^{left} vs S^{right}")]
    SphereMismatch { left: u32, right: u32 },

    #[error("class of degree {degree} cannot be nonzero in the cohomology of S^{sphere}")]
    DegreeOutOfModel { degree: u32, sphere: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
