use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("index {index} is not a valid {what} for shape {shape}")]
    InvalidIndex {
        index: i64,
        what: &'static str,
        shape: String,
    },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("{floor} is not below {top} in the super Bruhat order")]
    NotBelow { floor: String, top: String },
    #[error("interval scan touched its bound at {0}; enlarge the scan range")]
    ScanBoundHit(String),
    #[error("weight {0} is typical; the procedure is undefined")]
    Typical(String),
    #[error("vector is not in the image of the symmetrizer: {0}")]
    NotInWedgeImage(String),
    #[error("straightening exceeded its step bound of {0}")]
    StraightenBound(usize),
    #[error("window is not Bruhat-closed below {anchor}: missing {missing}")]
    WindowNotClosed { anchor: String, missing: String },
    #[error("window of depth {window} is too small for character depth {depth}")]
    WindowTooSmall { window: u32, depth: u32 },
    #[error("invalid Kostant certificate: {0}")]
    InvalidCertificate(String),
    #[error("{0} is not a hook partition for the given box")]
    NotHook(String),
    #[error("weight {0} is not of polynomial type")]
    NotPolynomial(String),
    #[error("{0}")]
    Precondition(String),
    #[error("invariant breach: {0}")]
    Invariant(String),
    #[error("cache is locked by another process: {0}")]
    CacheLocked(String),
    #[error("cache i/o error: {0}")]
    CacheIo(String),
}

pub type Result<T> = std::result::Result<T, Error>;
