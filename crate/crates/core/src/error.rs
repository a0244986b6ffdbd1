use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("action matrix is not invertible over the integers (determinant {determinant})")]
    NonUnimodularAction { determinant: i128 },

    #[error("action matrix does not preserve the lattice")]
    LatticeNotInvariant,

    #[error("action matrix to the power {modulus} is not the identity modulo the lattice")]
    TwistOrderMismatch { modulus: u64 },

    #[error("invalid group morphism: {0}")]
    InvalidMorphism(&'static str),

    #[error("operands live over different group rings")]
    RingMismatch,

    #[error("matrices have different basis key sets")]
    KeyMismatch,

    #[error("duplicate basis key {0}")]
    DuplicateKey(String),

    #[error("basis key {0} is not in the key set")]
    UnknownKey(String),

    #[error("matrix is not triangular under any ordering of its keys")]
    NotTriangularizable,

    #[error("diagonal entry at {0} is not a unit of the form \u{b1}g")]
    NonUnitDiagonal(String),

    #[error("strand count {n} is out of range (need n >= {min})")]
    InvalidStrandCount { n: usize, min: usize },

    #[error("generator index {index} is out of range for {n} strands")]
    GeneratorOutOfRange { index: i64, n: usize },

    #[error("layer index {r} is out of range (need r >= {min})")]
    InvalidLayer { r: usize, min: usize },

    #[error("cannot parse braid word: {0}")]
    ParseWord(String),
}
