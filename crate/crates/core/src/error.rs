use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is too small (need p >= 5 and p > file count)")]
    PrimeTooSmall(u64),

    #[error("shares use different primes")]
    PrimeMismatch,

    #[error("degenerate shares: equal x coordinates")]
    DegenerateShares,

    #[error("no x-intercept: shares lie on a horizontal line")]
    NoXIntercept,

    #[error("authentication failed")]
    AuthenticationFailed,

    #[error("vault is locked by another writer: {0}")]
    VaultLocked(PathBuf),

    #[error("vault file missing: {0}")]
    MissingFile(PathBuf),

    #[error("invalid manifest: {0}")]
    Manifest(String),

    #[error("session is read-only")]
    ReadOnlySession,

    #[error("nothing to fake: document is empty")]
    EmptyDocument,

    #[error("invalid fake spec: {0}")]
    InvalidSpec(String),

    #[error("malformed share string {0:?} (expected decimal x:y:p)")]
    ShareFormat(String),

    #[error("malformed fixture {path}: {msg}")]
    Fixture { path: PathBuf, msg: String },

    #[error("provider request failed: {0}")]
    Provider(String),

    #[error("corpus too small: {0}")]
    CorpusTooSmall(String),
}
