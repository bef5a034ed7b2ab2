use thiserror::Error;

use crate::chargeom::Char;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("division by the zero polynomial")]
    ZeroDenominator,
    #[error("wedge variables of the pulled-back form depend on `{0}`, which is not a target chart variable")]
    ForeignChartVariable(String),

    #[error("characteristics must be distinct, got {0} twice")]
    DuplicateCharacteristic(Char),
    #[error("characteristic {0} is odd")]
    OddCharacteristic(Char),
    #[error("expected {expected} characteristics, got {got}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("quadruple is not syzygetic")]
    NotSyzygetic,
    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("matrix is not in {0}")]
    NotInSubgroup(String),
    #[error("no member of {tag} found after {attempts} words of length {word_length}; try a larger word length")]
    SamplingExhausted { tag: String, attempts: usize, word_length: usize },

    #[error("series vanishes up to its truncation bound {0}")]
    ZeroSeries(u32),
    #[error("unimodular substitution requires det = ±1, got {0}")]
    NotUnimodular(i64),
    #[error("malformed series cache: {0}")]
    Cache(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("boundary order mismatch on axis {axis}: formula {formula}, series {series}")]
    BoundaryMismatch { axis: usize, formula: i64, series: i64 },
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("imaginary part is not positive definite")]
    NotPositiveDefinite,
    #[error("lattice sum needs radius {0}, beyond the evaluation budget")]
    RadiusTooLarge(u64),
    #[error("dropped q-expansion terms are only bounded by {bound:e}, above {limit:e}")]
    NotCertifiable { bound: f64, limit: f64 },
    #[error("measured ratio {re}+{im}i is not within {tol:e} of ±1")]
    NotACharacter { re: f64, im: f64, tol: f64 },

    #[error("pullback is not proportional to the original form")]
    NotProportional,
    #[error("group closure exceeded {0} elements")]
    ClosureTooLarge(usize),
    #[error("image curve is not among the known singular curves")]
    UnknownCurve,
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
