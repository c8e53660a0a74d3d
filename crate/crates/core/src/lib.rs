//! Coset-leader structure of linear codes over GF(p^m).
//!
//! The crate computes, for a linear code `C` of length `n` over a finite
//! field with `q = p^m` elements:
//!
//! * the weak order ideal of the coset leaders, built incrementally from
//!   the zero word by best-first expansion along canonical generators
//!   ([`ideal::build_ideal`]),
//! * the complete coset-leader table, both incrementally and by exhaustive
//!   enumeration of the word space ([`code::brute_force_coset_table`], the
//!   independent oracle),
//! * the leader codewords and their test-set / zero-neighbour geometry
//!   ([`leaders`]),
//! * the correctable/uncorrectable error taxonomy, larger halves and trial
//!   sets ([`errors`]),
//! * a verification suite that checks every claimed structural property
//!   exhaustively on a given code ([`verify`]).
//!
//! All word spaces handled here are small by design; every expensive scan is
//! gated by an explicit enumeration cap ([`scan::Caps`]) and runs either
//! sequentially or data-parallel via rayon (feature `parallel`, enabled by
//! default).

pub mod code;
pub mod corpus;
pub mod errors;
pub mod field;
pub mod ideal;
pub mod leaders;
pub mod order;
pub mod scan;
pub mod verify;

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("polynomial {0:?} is not irreducible over Z_{1}")]
    NotIrreducible(Vec<u32>, u32),
    #[error("polynomial degree mismatch: expected {expected} coefficients, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("tuple length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operands belong to different field specs or lengths")]
    SpecMismatch,
    #[error("generator matrix is rank deficient")]
    RankDeficient,
    #[error("enumeration of {size} items exceeds the cap {cap}{hint}")]
    TooLarge {
        size: u128,
        cap: u64,
        /// Largest admissible sub-check, when one exists.
        hint: String,
    },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("larger halves are undefined for the zero codeword")]
    ZeroCodeword,
    #[error("descent stalled outside the leader region on word {witness:?}")]
    NotReducible { witness: Vec<u32> },
    #[error("filtered leader set failed the trial-set definition")]
    NotTrialSet,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("field with q = p^m > 65536 is unsupported (q = {0})")]
    FieldTooLarge(u128),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use code::{brute_force_coset_table, covering_radius, CosetRecord, CosetTable, LinearCode};
pub use errors::{
    classify_errors, larger_halves, reducing_codewords, trial_set_from_leaders, ErrorClassification,
    TrialSetCheck,
};
pub use field::{canonical_generators, FieldSpec, Word};
pub use ideal::{build_ideal, IdealRegistry};
pub use leaders::{
    boundary, decode_gradient, descent_step, is_test_set, leader_codewords, shell,
    test_set_counterexample, voronoi_contains, zero_neighbours, LeaderSet,
};
pub use order::{cmp_tuples, cmp_words, covered_by, digit_le, OrderSpec};
pub use scan::{Caps, Exec};
