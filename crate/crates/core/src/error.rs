use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: q={left} vs q={right}")]
    AlphabetMismatch { left: u16, right: u16 },

    #[error("symbol {symbol} is out of range for alphabet size {q}")]
    SymbolOutOfRange { symbol: u32, q: u16 },

    #[error("invalid alphabet size {0} (need 2 <= q <= 256)")]
    InvalidAlphabet(u32),

    #[error("cannot delete {deletions} symbols from a word of length {len}")]
    TooManyDeletions { deletions: usize, len: usize },

    #[error("enumeration of about {estimate} items exceeds the cap of {cap}")]
    CapExceeded { estimate: u128, cap: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("code needs at least two codewords")]
    SingletonCode,

    #[error("construction produced no codewords")]
    EmptyCode,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
