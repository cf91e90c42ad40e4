//! Exact Schubert calculus on Grassmannians and a symbolic engine for the
//! Schubert-basis coefficients of Gysin coherent characteristic classes.
//!
//! * [`partitions`] boxed partitions, amalgamation, complements, profiles
//! * [`lr`] memoized Littlewood-Richardson kernel
//! * [`ring`] homology classes, products, Segre pushforward
//! * [`symbolic`] polynomials over named unknowns and oracle tables
//! * [`expansion`] the normally nonsingular expansion recursion
//! * [`worked_example`] the L-class coefficients of `X_{3,2,1}`
//! * [`io`] text syntax and JSON records
//! * [`verify`] brute-force verification suites

pub mod error;
pub mod expansion;
pub mod io;
pub mod lr;
pub mod partitions;
pub mod ring;
pub mod symbolic;
pub mod verify;
pub mod worked_example;

pub use error::{Error, Result};
pub use partitions::{BoxSize, BoxedPartition};

/// Exact rational scalar used throughout.
pub type Q = num_rational::BigRational;
