use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Every failure mode carries enough context to be
/// printed as a diagnostic by the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vectors of different ambient dimension mixed in one computation.
    DimensionMismatch { expected: usize, found: usize },
    /// Elements of Grassmann or W algebras over different n mixed.
    RankMismatch { expected: usize, found: usize },
    /// No such Dynkin diagram in the supported families.
    UnsupportedDiagram { series: char, rank: usize },
    /// Root enumeration requested for an infinite-dimensional algebra.
    InfiniteRootSystem { series: char, rank: usize },
    /// Reflection index outside 1..=r (there is no reflection in a null root).
    BadReflectionIndex { index: usize },
    /// Freudenthal's formula needs a dominant integral highest weight.
    NonDominantWeight { labels: Vec<String> },
    /// Supercommutator of an operator without a definite parity.
    InhomogeneousOperand,
    /// Parameter outside the supported desk-scale range.
    OutOfRange { what: &'static str, value: i64 },
    /// A bracket that does not stay inside the local part of the algebra.
    NonLocalBracket { levels: (i64, i64) },
    /// Evaluation hit a generator symbol with no assigned image.
    MissingSymbol { symbol: String },
    /// A local part failed the super-Jacobi identity on a concrete triple.
    JacobiFailure { triple: String },
    /// Simultaneous eigenspace splitting did not exhaust a level.
    NotDiagonalizable { level: i64 },
    /// Unknown table identifier in table emission.
    UnknownTable { id: String },
    /// Mixed levels added or compared in a graded computation.
    LevelMismatch { left: i64, right: i64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected n={expected}, found n={found}")
            }
            Error::UnsupportedDiagram { series, rank } => {
                write!(f, "unsupported diagram {series}_{rank}")
            }
            Error::InfiniteRootSystem { series, rank } => {
                write!(f, "{series}_{rank} is infinite-dimensional; cannot enumerate its roots")
            }
            Error::BadReflectionIndex { index } => {
                write!(f, "no fundamental reflection with index {index}")
            }
            Error::NonDominantWeight { labels } => {
                write!(f, "highest weight ({}) is not dominant integral", labels.join(","))
            }
            Error::InhomogeneousOperand => write!(f, "operand has no definite parity"),
            Error::OutOfRange { what, value } => write!(f, "{what} out of range: {value}"),
            Error::NonLocalBracket { levels } => {
                write!(f, "bracket of levels {} and {} leaves the local part", levels.0, levels.1)
            }
            Error::MissingSymbol { symbol } => write!(f, "no image assigned to {symbol}"),
            Error::JacobiFailure { triple } => {
                write!(f, "super-Jacobi identity fails on triple {triple}")
            }
            Error::NotDiagonalizable { level } => {
                write!(f, "adjoint action not diagonalizable at level {level}")
            }
            Error::UnknownTable { id } => write!(f, "unknown table id `{id}`"),
            Error::LevelMismatch { left, right } => {
                write!(f, "graded level mismatch: {left} vs {right}")
            }
        }
    }
}

impl std::error::Error for Error {}
