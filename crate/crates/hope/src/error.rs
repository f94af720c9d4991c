use thiserror::Error;

/// Unified error type for every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 2")]
    InvalidModulus,
    #[error("{0} is not invertible modulo {1}")]
    NonInvertible(String, String),
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,
    #[error("randomness source failed: {0}")]
    Entropy(String),
    #[error("no unit found below bound after {0} attempts")]
    UnitExhausted(u32),
    #[error("value {0} out of range for modulus {1}; reduce first")]
    OutOfRange(String, String),
    #[error("prime generation needs at least 3 bits, got {0}")]
    PrimeBits(usize),

    #[error("key generation needs an even bit size of at least 8, got {0}")]
    KeygenBits(usize),
    #[error("primes {0} and {1} do not satisfy the key constraints")]
    BadPrimePair(String, String),
    #[error("plaintext {0} outside [0, n)")]
    PlaintextRange(String),
    #[error("randomizer {0} is not a unit of Z*_n")]
    BadRandomness(String),
    #[error("malformed ciphertext: {0}")]
    MalformedCiphertext(String),
    #[error("ciphertext or key does not belong to this key pair")]
    KeyMismatch,

    #[error("plaintext magnitude exceeds the configured bound {0}")]
    PlaintextBound(String),
    #[error("invalid parameters: {0}")]
    Config(String),

    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("empty range: lower bound is greater than upper bound")]
    EmptyRange,
    #[error("comparison key epoch {0} is not newer than current epoch {1}")]
    StaleEpoch(u64, u64),

    #[error("malformed request: {0}")]
    Protocol(String),
    #[error("{0}: {1}")]
    FileFormat(String, String),
    #[error("load error at line {0}: {1}")]
    Load(usize, String),
    #[error("server error {0}: {1}")]
    Server(u16, String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
