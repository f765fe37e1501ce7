//! Spectra, counts, extremal values, and parity analysis of matrix
//! permanents over six structured classes: (0,1) matrices with all line
//! sums 3 (optionally with full diagonal, optionally symmetric) and their
//! three-weight generalizations `αP₁ + βP₂ + γP₃`.
//!
//! The crate is organized around independent computation routes that
//! cross-check each other:
//!
//! - [`sequences`] — the counting sequences (derangements, ménage numbers,
//!   reduced Latin rectangles, class cardinalities) and the `a`-sequence of
//!   single-cycle permanents, each with recursion and closed forms.
//! - [`spectrum`] — partition enumeration and the partition-product
//!   description of the symmetric-class spectra, with the cycle-type matrix
//!   constructor that ties products back to actual permanents.
//! - [`extremal`] — closed-form maxima and second maxima, the weighted
//!   maximum with its precondition checks, and exact cube-root/θ-boundary
//!   comparisons.
//! - [`upper`] — the two ranked upper-magnitude algorithms (symmetric and
//!   general class) with certification bookkeeping, plus the published
//!   coefficient tables as fixtures.
//! - [`circulant`] — three-offset circulants: dihedral canonicalization,
//!   the orbit-counting formula, spectra, and the spectrum-size bound.
//! - [`parity`] — the row-sum-parity functional, the testing-sequence
//!   algorithm for permanent parity, and a GF(2) determinant oracle.
//! - [`enumerate`] — exhaustive class enumeration with deterministic
//!   sharding, brute-force spectra/counts, indecomposable spectra, and the
//!   empirical submultiplicativity check.

pub mod circulant;
mod error;
pub mod enumerate;
pub mod extremal;
pub mod parity;
pub mod sequences;
pub mod spectrum;
pub mod upper;

pub use error::LabError;

pub type Result<T> = std::result::Result<T, LabError>;
