//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("distance value {0} is not a finite non-negative real")]
    InvalidGValue(f64),

    #[error("relaxation constant K = {0} must be a finite real >= 1")]
    InvalidRelaxation(f64),

    #[error("unknown point {0:?}")]
    UnknownPoint(String),

    #[error("triple ({0}, {1}, {2}) is out of range for a space of {3} points")]
    TripleOutOfRange(usize, usize, usize, usize),

    #[error("triple ({0}, {1}, {2}) is not in canonical i <= j <= k order")]
    NonCanonicalTriple(usize, usize, usize),

    #[error("duplicate table entry for triple ({0}, {1}, {2})")]
    DuplicateTriple(usize, usize, usize),

    #[error("table is missing an entry for triple ({0}, {1}, {2}); unlisted triples are an error")]
    MissingTriple(usize, usize, usize),

    #[error("operation requires a nonempty space")]
    EmptySpace,

    #[error("operation requires a space of at least {0} points")]
    SpaceTooSmall(usize),

    #[error("invalid interval: lo = {lo} must be strictly below hi = {hi}")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("grid_n = {0} is too small; at least 2 sample points are required")]
    InvalidGrid(usize),

    #[error("a path is defined between distinct points; got {0:?} twice")]
    DegeneratePath(String),

    #[error("self-map is not total: {0}")]
    InvalidMap(String),

    #[error("coefficient sequence invalid: {0}")]
    InvalidCoefficient(String),

    #[error("nonpositive term a_{index} = {value} encountered")]
    NonPositiveTerm { index: usize, value: f64 },

    #[error("coefficient tensor invalid: {0}")]
    InvalidTensor(String),

    #[error("tensor has no entry for index triple ({0}, {1}, {2})")]
    MissingTensorEntry(usize, usize, usize),

    #[error("horizon {got} is below the required minimum {min}")]
    HorizonTooSmall { got: usize, min: usize },

    #[error("no finite Lipschitz constant: G({0}, {1}, {2}) = 0 but the image triple has positive distance")]
    UnboundedLipschitz(String, String, String),

    #[error("phi function invalid: degree s = {s} must lie in (0, 1] and scale c = {c} must be positive")]
    InvalidPhi { s: f64, c: f64 },

    #[error("parameter {name} = {value} is outside its valid range: {expected}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("denominator 1 - theta - lambda = {0} vanishes or is negative at index ({1}, {2}, {3})")]
    DenominatorVanishes(f64, usize, usize, usize),

    #[error("theorem {0} requires parameter {1}")]
    MissingTheoremParam(&'static str, &'static str),

    #[error("unknown theorem identifier {0:?}")]
    UnknownTheorem(String),

    #[error("unknown example space {0:?}")]
    UnknownExample(String),

    #[error("{op} is not supported on this space: {why}")]
    UnsupportedSpace { op: &'static str, why: &'static str },

    #[error("empty map family")]
    EmptyFamily,

    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to parse {path}: {detail}")]
    Parse { path: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
