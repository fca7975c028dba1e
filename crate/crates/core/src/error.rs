use thiserror::Error;

/// Errors raised across the synthesis and verification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid composition spec: {0}")]
    InvalidSpec(String),

    #[error("empty sector: no ditstrings of {n} digits in 0..={two_s} sum to {k}")]
    EmptySector { n: usize, k: usize, two_s: usize },

    #[error("sector dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: u128, cap: u128 },

    #[error("Hamiltonian path search failed: {0}")]
    SearchFailure(String),

    #[error("invalid Gray code: {0}")]
    InvalidCode(String),

    #[error("ditstring {0} does not belong to the sector")]
    NotInSector(String),

    #[error("no amplitude given for ditstring {0}")]
    MissingAmplitude(String),

    #[error("amplitudes are not normalized (sum of squares = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("amplitude {index} has a nonzero imaginary part")]
    NotReal { index: usize },

    #[error("all amplitudes are zero")]
    ZeroVector,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("level bound violated: {0}")]
    LevelBound(String),

    #[error("qudit index {index} out of range 1..={n}")]
    QuditIndex { index: usize, n: usize },

    #[error("state vector of {len} entries exceeds the cap {cap}")]
    StateTooLarge { len: u128, cap: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("Bethe momenta {0} and {1} coincide")]
    CoincidentMomenta(usize, usize),

    #[error("permutation sum over {k}! terms exceeds the cap k <= {cap}")]
    PermutationCap { k: usize, cap: usize },

    #[error("singular point: {0}")]
    Pole(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
