//! Integer partitions with a minimum-part constraint, the partition-product
//! description of the symmetric-class permanent spectra, and the cycle-type
//! matrix constructor that ties the products back to actual permanents.
//!
//! The structural fact behind this module: a symmetric-position class
//! member is `αS⁻¹ + βI + γS` for a permutation `S` whose cycles all have
//! length ≥ 3, it splits (up to simultaneous row/column permutation) into a
//! direct sum of single-cycle blocks, and the permanent of a length-k block
//! is the weighted sequence value a(k). The spectrum is therefore exactly
//! the set of products Π a(nᵢ) over partitions of n into parts ≥ 3.

use std::collections::BTreeMap;

use num::{One, Zero};

use permspec_core::{power_matrix, BinaryMatrix, ExactValue, WeightedMatrix};

use crate::sequences::a_general;
use crate::{LabError, Result};

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// An integer partition with all parts at least `min_part`, parts stored in
/// decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<i64>,
    min_part: i64,
}

impl Partition {
    /// Builds a partition from parts in any order; validates the minimum.
    pub fn new(mut parts: Vec<i64>, min_part: i64) -> Result<Self> {
        if min_part < 1 {
            return Err(LabError::Domain("minimum part must be at least 1".into()));
        }
        if parts.iter().any(|&p| p < min_part) {
            return Err(LabError::Domain(format!(
                "all parts must be ≥ {min_part}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts, min_part })
    }

    /// Parts in decreasing order.
    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn min_part(&self) -> i64 {
        self.min_part
    }

    /// The partitioned integer (sum of parts).
    pub fn total(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Compact display like `8+3`.
    pub fn display(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// All partitions of `n` with every part ≥ `min_part`, in
/// decreasing-lexicographic order of the part lists. Returns an empty list
/// when no partition exists (and the single empty partition for n = 0).
pub fn partitions(n: i64, min_part: i64) -> Vec<Partition> {
    assert!(n >= 0, "n must be nonnegative");
    assert!(min_part >= 1, "minimum part must be at least 1");
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    descend(n, n, min_part, &mut prefix, &mut out);
    out
}

fn descend(
    remaining: i64,
    max_part: i64,
    min_part: i64,
    prefix: &mut Vec<i64>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
            min_part,
        });
        return;
    }
    let mut p = remaining.min(max_part);
    while p >= min_part {
        let rest = remaining - p;
        if rest == 0 || rest >= min_part {
            prefix.push(p);
            descend(rest, p, min_part, prefix, out);
            prefix.pop();
        }
        p -= 1;
    }
}

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

/// A permanent spectrum: the set of values the permanent takes over a
/// class, stored strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    values: Vec<ExactValue>,
}

impl Spectrum {
    /// Builds a spectrum from values in any order, deduplicating.
    pub fn from_values(mut values: Vec<ExactValue>) -> Self {
        values.sort();
        values.dedup();
        Spectrum { values }
    }

    /// Values in strictly increasing order.
    pub fn values(&self) -> &[ExactValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, value: &ExactValue) -> bool {
        self.values.binary_search(value).is_ok()
    }

    pub fn min(&self) -> Option<&ExactValue> {
        self.values.first()
    }

    pub fn max(&self) -> Option<&ExactValue> {
        self.values.last()
    }
}

/// Permanent spectrum of the symmetric full-diagonal binary class:
/// `{ Π a(nᵢ) : partitions of n into parts ≥ 3 }` with `a` from
/// [`a_seq`].
pub fn spectrum_symmetric(n: i64) -> Result<Spectrum> {
    let one = ExactValue::one();
    spectrum_weighted(n, &one, &one, &one)
}

/// Permanent spectrum of the symmetric weighted class with weights
/// (α, β, γ): partition products of [`a_general`] values.
pub fn spectrum_weighted(
    n: i64,
    alpha: &ExactValue,
    beta: &ExactValue,
    gamma: &ExactValue,
) -> Result<Spectrum> {
    let detailed = spectrum_weighted_attaining(n, alpha, beta, gamma)?;
    Ok(Spectrum {
        values: detailed.into_iter().map(|(v, _)| v).collect(),
    })
}

/// Like [`spectrum_weighted`], but reports for every spectrum value the
/// partitions that attain it. Values ascend; the partition lists preserve
/// enumeration order.
pub fn spectrum_weighted_attaining(
    n: i64,
    alpha: &ExactValue,
    beta: &ExactValue,
    gamma: &ExactValue,
) -> Result<Vec<(ExactValue, Vec<Partition>)>> {
    if n < 3 {
        return Err(LabError::Domain(format!(
            "spectrum requires n ≥ 3, got {n}"
        )));
    }
    if alpha.is_zero() || beta.is_zero() || gamma.is_zero() {
        return Err(LabError::Domain("spectrum weights must be nonzero".into()));
    }
    let mut by_value: BTreeMap<ExactValue, Vec<Partition>> = BTreeMap::new();
    for partition in partitions(n, 3) {
        let mut product = ExactValue::one();
        for &part in partition.parts() {
            product *= a_general(alpha, beta, gamma, part)?;
        }
        by_value.entry(product).or_default().push(partition);
    }
    Ok(by_value.into_iter().collect())
}

// ---------------------------------------------------------------------------
// Cycle-type matrices
// ---------------------------------------------------------------------------

/// Builds `αS⁻¹ + βI + γS` where `S` is a permutation with the given cycle
/// type: the canonical class member attaining the partition product.
///
/// The result is block-diagonal with one single-cycle block per part, so
/// its permanent is exactly `Π a_general(α,β,γ,nᵢ)`.
pub fn build_cycle_type_matrix(
    cycle_lengths: &Partition,
    alpha: &ExactValue,
    beta: &ExactValue,
    gamma: &ExactValue,
) -> Result<WeightedMatrix> {
    for &len in cycle_lengths.parts() {
        if len < 3 {
            return Err(LabError::CycleTooShort {
                length: len as usize,
            });
        }
    }
    if cycle_lengths.parts().is_empty() {
        return Err(LabError::Domain("cycle type must be nonempty".into()));
    }
    let mut blocks = cycle_lengths.parts().iter().map(|&len| {
        let k = len as usize;
        let back = power_matrix(k, -1).to_weighted().scale(alpha);
        let diag = BinaryMatrix::identity(k).to_weighted().scale(beta);
        let fwd = power_matrix(k, 1).to_weighted().scale(gamma);
        back.add(&diag).add(&fwd)
    });
    let first = blocks.next().expect("nonempty checked above");
    Ok(blocks.fold(first, |acc, b| acc.direct_sum(&b)))
}
