//! Additive quaternary codes of dimension k <= 3, realized as multisets of
//! lines in binary projective spaces.
//!
//! An additive quaternary `[n, k, d]` code is a 2k-dimensional F2-subspace of
//! F2^(2n) whose coordinates are grouped in pairs; k may be half-integral.
//! Such a code is equivalent to a multiset of n lines in PG(2k-1, 2) in which
//! every hyperplane contains at most s = n - d of the lines (with
//! multiplicity). This crate builds the optimal codes of every dimension
//! k in {1, 1.5, 2, 2.5, 3}, verifies them against independent generator
//! matrix enumeration, and certifies infeasible parameter sets through
//! concatenation with the binary [3,2,2] code and the Griesmer bound.

pub mod bounds;
pub mod code;
pub mod constructions;
pub mod geometry;
pub mod gf4;
pub mod io;
pub mod search;

use bounds::Certificate;

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("projective dimension {0} out of supported range 1..=6")]
    DimensionOutOfRange(usize),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("some hyperplane contains every code line: the code is not genuinely {0}-dimensional over F2")]
    DimensionDeficient(usize),
    #[error("line {0} is not present in the multiset")]
    LineAbsent(usize),
    #[error("generator rows are linearly dependent")]
    RankDeficient,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("search budget of {budget} nodes exhausted after {nodes} nodes")]
    BudgetExhausted { budget: u64, nodes: u64 },
    #[error("no solution found: {0}")]
    NotFound(String),
    #[error("species {0} out of range (must be >= {1})")]
    SpeciesOutOfRange(u32, u32),
    #[error("infeasible parameters: {0}")]
    Infeasible(Certificate),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
