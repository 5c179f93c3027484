use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("ground set of {0} vertices exceeds the 64-vertex cap")]
    TooManyVertices(usize),

    #[error("undefined on the void complex")]
    VoidComplex,

    #[error("face {0} is not in the complex")]
    FaceNotInComplex(String),

    #[error("{needle} is not a subface of {haystack}")]
    NotASubface { needle: String, haystack: String },

    #[error("input is not a pseudomanifold")]
    NotAPseudomanifold,

    #[error("vertex supports overlap on {0}; join needs disjoint label sets")]
    OverlappingJoin(String),

    #[error("enumeration refused: n = {n} exceeds the cap {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("face enumeration too large ({0} faces); complex exceeds desk scale")]
    FaceEnumerationTooLarge(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic {0} is at or above the 2^31 cap")]
    PrimeTooLarge(u64),

    #[error("cannot parse field {0:?}; expected `q` or `gf:P` with P prime")]
    BadFieldSpec(String),

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{op} presupposes a Cohen-Macaulay ring here")]
    NotCohenMacaulay { op: &'static str },

    #[error("oracle cap exceeded: {0}")]
    OracleCap(String),

    #[error("nzd search failed: {0}")]
    NzdSearchFailed(String),

    #[error("classification is inconsistent with the supporting theory: {0}")]
    TheoremViolation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown corpus entry {0:?}")]
    UnknownCorpus(String),
}

pub type Result<T> = std::result::Result<T, Error>;
