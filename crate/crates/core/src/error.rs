use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("rational function does not vanish at infinity (deg num = {num_degree}, deg den = {den_degree})")]
    NotVanishingAtInfinity {
        num_degree: isize,
        den_degree: isize,
    },
    #[error("parse error: {0}")]
    Parse(String),

    #[error("measure has no atoms")]
    EmptyMeasure,
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid moment sequence: {0}")]
    InvalidMoments(String),
    #[error("moments through s_{needed} are required; the first missing one is s_{available}")]
    InsufficientMoments { needed: usize, available: usize },
    #[error("not a positive sequence: Δ_{{0,{n}}} = {value} < 0")]
    NotPositive { n: usize, value: String },
    #[error("inconsistent finite rank: Δ_{{0,{rank}}} = 0 but Δ_{{0,{n}}} = {value} != 0")]
    InconsistentRank {
        rank: usize,
        n: usize,
        value: String,
    },
    #[error("depth {requested} exceeds what the finite rank {rank} allows")]
    RankExceeded { requested: usize, rank: usize },
    #[error("not strictly double positive: Δ_{{1,{n}}} = {value}")]
    NotDoublePositive { n: usize, value: String },
    #[error("scale factor must be positive, got {0}")]
    NonpositiveScale(String),

    #[error("spectral parameter must have nonzero imaginary part")]
    RealSpectralParameter,
    #[error("singular system encountered at row {0}")]
    SingularSystem(usize),
    #[error("index {index} out of range (at most {max})")]
    OutOfRange { index: usize, max: usize },
    #[error("depth {depth} too small (need at least {min})")]
    DepthTooSmall { depth: usize, min: usize },

    #[error("not a Herglotz-Nevanlinna function: {0}")]
    NotHerglotz(String),
    #[error("invalid string: {0}")]
    InvalidString(String),
    #[error("invalid Hamiltonian: {0}")]
    InvalidHamiltonian(String),
    #[error("angle sequence leaves its π-window at interval {index}")]
    MalformedAngleWindow { index: usize },
    #[error("mismatched inputs: {0}")]
    MismatchedInputs(String),
    #[error("independent computations disagree: {0}")]
    Inconsistent(String),
}
