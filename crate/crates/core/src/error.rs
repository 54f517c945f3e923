use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a pointed monoid: {0}")]
    NotAMonoid(String),
    #[error("element {0} has no unique additive inverse")]
    NoUniqueInverse(String),
    #[error("unknown band name `{0}`")]
    UnknownName(String),
    #[error("element does not belong to this band")]
    ForeignElement,
    #[error("map is not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("map does not preserve the unit")]
    UnitNotPreserved,
    #[error("hom-set enumeration requires a finite target")]
    InfiniteTarget,
    #[error("closure bound exhausted (level {0})")]
    BoundExhausted(u32),
    #[error("congruence undecided at the bound: {0}")]
    UndecidedCongruence(String),
    #[error("operation not supported for this mix of carriers: {0}")]
    MixedRepresentation(String),
    #[error("carrier is infinite; a search bound is required")]
    InfiniteCarrier,
    #[error("carrier not supported here: {0}")]
    UnsupportedCarrier(String),
    #[error("gluing data violates the cocycle condition: {0}")]
    CocycleFailure(String),
    #[error("chart inclusion is not an open embedding: {0}")]
    NotOpenEmbedding(String),
    #[error("generator is not homogeneous: {0}")]
    NonHomogeneousGenerator(String),
    #[error("operation requires an idyll coefficient band")]
    NotIdyll,
    #[error("presentation rewrite system is not confluent: {0}")]
    NotConfluent(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown base band `{0}`")]
    UnknownBase(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
