use thiserror::Error;

use crate::partitions::BoxSize;
use crate::symbolic::UnknownSymbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts {0:?} are not weakly decreasing")]
    NotWeaklyDecreasing(Vec<usize>),
    #[error("parts {parts:?} do not fit in a {bx} box")]
    ExceedsBox { parts: Vec<usize>, bx: BoxSize },
    #[error("cannot extend from a {from} box to a smaller {to} box")]
    ShrinkingBox { from: BoxSize, to: BoxSize },
    #[error("box mismatch: {0} vs {1}")]
    BoxMismatch(BoxSize, BoxSize),
    #[error("complementary profile needs k > 0")]
    EmptyBox,
    #[error("{0} cannot be reconstructed inside a {1} box")]
    NotInvertible(String, BoxSize),
    #[error("no expansion table available for {0}")]
    MissingExpansion(String),
    #[error("unresolved symbols: {}", .0.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "))]
    UnresolvedSymbols(Vec<UnknownSymbol>),
    #[error("invalid variety: {0}")]
    InvalidVariety(String),
    #[error("({0}, {1}) does not factor through an amalgamation")]
    NotFactorizable(String, String),
    #[error("{0} is not below {1}")]
    NotBelow(String, String),
    #[error("no known characteristic class for {0}")]
    UnknownClass(String),
    #[error("equation system for {0} has no unique solution")]
    Underdetermined(String),
    #[error("identity check failed: {0}")]
    CheckFailed(String),
    #[error("budget exhausted while expanding {0}")]
    BudgetExceeded(String),
    #[error("syntax error in {input:?}: {message}")]
    Syntax { input: String, message: String },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
