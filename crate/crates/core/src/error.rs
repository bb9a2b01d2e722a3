use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not an odd prime in the supported range")]
    BadCharacteristic(u32),
    #[error("matrix size must be at least 1 (got {0})")]
    BadRank(usize),
    #[error("generator index out of range: t[{i},{j}]^({r}) with n = {n}")]
    IndexOutOfRange { i: usize, j: usize, r: u32, n: usize },
    #[error("operands live in different algebras: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("no image supplied for generator t[{i},{j}]^({r})")]
    MissingImage { i: usize, j: usize, r: u32 },
    #[error("series truncation orders differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("series constant term is not the identity; cannot invert")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid composition {parts:?} of {n}")]
    BadComposition { parts: Vec<usize>, n: usize },
    #[error("shift matrix is malformed: {0}")]
    BadShiftMatrix(String),
    #[error("shape {mu:?} is not admissible for the shift matrix: s[{i},{j}] = {value} inside a diagonal block")]
    NotAdmissible { mu: Vec<usize>, i: usize, j: usize, value: u32 },
    #[error("superscript {requested} exceeds the available truncation order {available}")]
    Budget { requested: usize, available: usize },
    #[error("superscript {r} is not above the shift bound {bound}")]
    BelowShift { r: usize, bound: usize },
    #[error("invalid index: {0}")]
    BadIndex(String),
    #[error("unknown identifier: {0}")]
    Unknown(String),
    #[error("loop degree {actual} exceeds the requested filtration degree {requested}")]
    DegreeOverflow { actual: usize, requested: usize },
    #[error("map precondition violated: {0}")]
    MapPrecondition(String),
    #[error("configuration error: {0}")]
    Config(String),
}
