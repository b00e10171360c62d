use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("events have spatial dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported event length {0} (expected 1+n with n in 1..=3)")]
    BadDimension(usize),
    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),
    #[error("tolerance must be positive and finite")]
    BadTolerance,
    #[error("matrix is not an orthochronous Lorentz transformation (defect {0:e})")]
    NotLorentz(f64),
    #[error("dilatation must be positive and finite")]
    BadDilatation,
    #[error("partition axis must be a unit spatial vector")]
    BadPartition,
    #[error("{0} requires a partition axis")]
    MissingPartition(&'static str),
    #[error("{0} does not take a partition axis")]
    UnexpectedPartition(&'static str),
    #[error("{0} requires a positive radius")]
    MissingRadius(&'static str),
    #[error("{0} is unbounded and takes no radius")]
    UnexpectedRadius(&'static str),
    #[error("alexandrov tips must satisfy a << b")]
    NotChronological,
    #[error("degenerate direction or curve")]
    Degenerate,
    #[error("schedule set does not contain the limit point")]
    OffCenter,
    #[error("ground set size {0} outside 1..=12")]
    GroundSetSize(usize),
    #[error("family is not a base (mask {0:#b})")]
    NotABase(u32),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
