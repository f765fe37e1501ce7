//! Exact-arithmetic foundations for permanent-spectrum computations.
//!
//! This crate provides the matrix representations, the permanent kernels, and
//! the structural class predicates that the higher-level analysis crates build
//! on:
//!
//! * [`BinaryMatrix`] — a square (0,1) pattern with bit-packed rows, used for
//!   the 3-regular classes, cyclic-shift powers, and circulants.
//! * [`WeightedMatrix`] — a square matrix of exact rationals, used for the
//!   weighted classes with entries α, β, γ.
//! * [`permanent_ryser`] / [`permanent_int`] — inclusion–exclusion permanent
//!   kernels iterating column subsets in Gray-code order, so successive
//!   row-sum vectors differ by a single column update.
//! * [`permanent_expansion`] — an independent memoized expansion oracle used
//!   to cross-check the Ryser kernels at small sizes.
//! * [`ClassSpec`] / [`is_class_member`] / [`decompose_components`] — the
//!   membership predicates for the 3-regular and weighted classes and the
//!   direct-sum decomposition used to detect complete indecomposability.
//!
//! All permanent and sequence arithmetic is exact; no floating point is used
//! anywhere in this crate.

mod class;
mod error;
mod matrix;
mod permanent;
pub mod rng;
mod value;

pub use class::{
    decompose_components, is_class_member, support_components, ClassKind, ClassSpec, Component,
};
pub use error::CoreError;
pub use matrix::{menage_board, power_matrix, BinaryMatrix, WeightedMatrix, MAX_BINARY_DIM};
pub use permanent::{permanent_expansion, permanent_int, permanent_ryser, EXPANSION_ORACLE_LIMIT};
pub use value::{format_exact, from_i64, from_ratio, parse_exact, to_f64_lossy, ExactValue};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CoreError>;
