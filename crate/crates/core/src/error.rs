use thiserror::Error;

use crate::lattice::Coord;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error in word at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator index {index} out of range [1, {ell}]")]
    GeneratorOutOfRange { index: usize, ell: usize },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("no generator appears in more than one string (SU_q(2)-type degenerate case)")]
    NoRepeatedGenerator,
    #[error("the 0th segment is not unique: candidate levels {0:?}")]
    NonUniqueI0(Vec<usize>),
    #[error("unknown edge label: string {string}, generator s{generator}")]
    UnknownEdgeLabel { string: usize, generator: usize },
    #[error("moves are equal")]
    MovesEqual,
    #[error("applying the move leaves N-coordinate {coord} negative")]
    NegativeNCoordinate { coord: Coord },
    #[error("invalid truncation window: {0}")]
    InvalidWindow(String),
    #[error("lattice point is not interior to the window")]
    NotInterior,
    #[error("lattice point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown coordinate {0}")]
    UnknownCoord(Coord),
    #[error("J_{0} is empty")]
    EmptyJ(usize),
    #[error("point is not in the free plane through the base point")]
    CosetMismatch,
    #[error("no move with segment ({from}, {to}) in string {string} of the reduced diagram")]
    MoveNotFound { string: usize, from: usize, to: usize },
    #[error("ambiguous move: {0}")]
    AmbiguousMove(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("|P_{{{from},{to}}}| = {count}, expected a single path")]
    MultiplePaths { from: usize, to: usize, count: usize },
    #[error("construction inapplicable: {0}")]
    Inapplicable(String),
    #[error("invalid expression: {0}")]
    Expr(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
