//! Parity of permanents over the 3-regular binary class without computing
//! them: an inclusion–exclusion identity reduces the parity to counting
//! column subsets whose removal leaves every row sum odd, and the subset
//! sizes that can contribute form the short testing sequence
//! `{4, 6, …, 2⌊n/3⌋}`. A GF(2) determinant provides an independent
//! oracle, since permanent and determinant agree mod 2.

use std::fmt;

use permspec_core::{is_class_member, BinaryMatrix, ClassKind, ClassSpec};

use crate::{LabError, Result};

/// Parity of an integer permanent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    fn from_count(total: u64) -> Self {
        if total % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// The all-rows-odd indicator: true iff every row sum of the matrix is odd
/// after zeroing the columns in `removed_columns` (bit j = column j).
pub fn upsilon(a: &BinaryMatrix, removed_columns: u64) -> bool {
    (0..a.dim()).all(|i| (a.row_bits(i) & !removed_columns).count_ones() % 2 == 1)
}

/// Parity of the permanent via the GF(2) determinant (permanent and
/// determinant coincide mod 2). Rows are eliminated as packed bit vectors.
pub fn parity_det_oracle(a: &BinaryMatrix) -> Parity {
    let n = a.dim();
    let mut rows: Vec<u64> = (0..n).map(|i| a.row_bits(i)).collect();
    let mut rank = 0;
    for col in 0..n {
        let bit = 1u64 << col;
        let Some(pivot) = (rank..n).find(|&r| rows[r] & bit != 0) else {
            return Parity::Even;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..n {
            if rows[r] & bit != 0 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
    }
    Parity::Odd
}

/// Subset sizes that can contribute to the parity count for a 3-regular
/// matrix beyond the empty set: `{4, 6, …, 2⌊n/3⌋}`, empty when
/// `2⌊n/3⌋ < 4`. Removing r columns leaves all row sums odd only when the
/// sum pattern is p rows of 3 and n−p of 1 with `3r = 2(n−p)`, and r = 2
/// is impossible for distinct columns.
pub fn testing_sequence(n: i64) -> Result<Vec<usize>> {
    if n < 3 {
        return Err(LabError::Domain(format!(
            "testing_sequence requires n ≥ 3, got {n}"
        )));
    }
    let top = 2 * (n / 3) as usize;
    Ok((4..=top).step_by(2).collect())
}

/// Parity verdict for one matrix, with the evidence that produced it.
#[derive(Clone, Debug)]
pub struct ParityReport {
    /// Row bitmasks in hex, least-significant bit = column 0.
    pub matrix_id: String,
    pub n: usize,
    /// True when two columns coincide; the permanent is then even (it is
    /// congruent to a determinant with repeated columns) and
    /// `contributions` is left empty.
    pub duplicate_columns: bool,
    /// `(r, number of r-column subsets whose removal leaves all row sums
    /// odd)`, starting with the always-contributing empty set (0, 1).
    pub contributions: Vec<(usize, u64)>,
    pub testing_sequence: Vec<usize>,
    /// Sum of the contribution counts mod 2 (even directly when columns
    /// repeat).
    pub parity: Parity,
}

/// Decides the parity of the permanent of a 3-regular binary matrix by
/// counting all-rows-odd column subsets along the testing sequence.
pub fn parity_ryser(a: &BinaryMatrix) -> Result<ParityReport> {
    let n = a.dim();
    let spec = ClassSpec::binary(ClassKind::Lambda3).expect("plain 3-regular class is binary");
    if !is_class_member(&a.to_weighted(), &spec) {
        return Err(LabError::NotInLambda3);
    }
    let matrix_id = (0..n)
        .map(|i| format!("{:x}", a.row_bits(i)))
        .collect::<Vec<_>>()
        .join("-");
    let sequence = testing_sequence(n as i64)?;

    let transpose = a.transpose();
    let column_masks: Vec<u64> = (0..n).map(|j| transpose.row_bits(j)).collect();
    if has_duplicates(&column_masks) {
        return Ok(ParityReport {
            matrix_id,
            n,
            duplicate_columns: true,
            contributions: Vec::new(),
            testing_sequence: sequence,
            parity: Parity::Even,
        });
    }

    // The empty subset always contributes: every row sum is 3.
    let mut contributions = vec![(0usize, 1u64)];
    let mut total = 1u64;
    for &r in &sequence {
        let mut row_sums = vec![3u8; n];
        let count = count_odd_subsets(&column_masks, r, 0, &mut row_sums);
        contributions.push((r, count));
        total += count;
    }

    Ok(ParityReport {
        matrix_id,
        n,
        duplicate_columns: false,
        contributions,
        testing_sequence: sequence,
        parity: Parity::from_count(total),
    })
}

fn has_duplicates(masks: &[u64]) -> bool {
    let mut sorted = masks.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).any(|w| w[0] == w[1])
}

/// Counts the ways to remove `remaining` columns with index ≥ `next` so
/// that every row sum ends odd. Prunes branches where a row has been
/// emptied (it can never turn odd again) and where the rows currently at
/// an even sum outnumber what the remaining removals can repair.
fn count_odd_subsets(
    column_masks: &[u64],
    remaining: usize,
    next: usize,
    row_sums: &mut [u8],
) -> u64 {
    if remaining == 0 {
        return u64::from(row_sums.iter().all(|&s| s % 2 == 1));
    }
    if column_masks.len() - next < remaining {
        return 0;
    }
    let even_rows = row_sums.iter().filter(|&&s| s % 2 == 0).count();
    if row_sums.contains(&0) || even_rows > 3 * remaining {
        return 0;
    }
    let mut count = 0;
    for j in next..column_masks.len() {
        let mut mask = column_masks[j];
        while mask != 0 {
            let row = mask.trailing_zeros() as usize;
            row_sums[row] -= 1;
            mask &= mask - 1;
        }
        count += count_odd_subsets(column_masks, remaining - 1, j + 1, row_sums);
        let mut mask = column_masks[j];
        while mask != 0 {
            let row = mask.trailing_zeros() as usize;
            row_sums[row] += 1;
            mask &= mask - 1;
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Circulant census
// ---------------------------------------------------------------------------

/// Parity of every circulant `P^i + P^j + P^k` in the 3-regular class of
/// dimension n, over all C(n,3) offset triples.
#[derive(Clone, Debug)]
pub struct ParityCensus {
    pub n: usize,
    pub odd: usize,
    pub even: usize,
    /// `([i, j, k], parity)` in lexicographic triple order.
    pub entries: Vec<([usize; 3], Parity)>,
}

/// Runs [`parity_ryser`] over all offset triples `0 ≤ i < j < k < n`.
pub fn circulant_parity_census(n: usize) -> Result<ParityCensus> {
    if n < 3 {
        return Err(LabError::Domain(format!(
            "circulant parity census requires n ≥ 3, got {n}"
        )));
    }
    let mut entries = Vec::new();
    let (mut odd, mut even) = (0, 0);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let matrix = crate::circulant::circulant_matrix(n, &[i, j, k])?;
                let parity = parity_ryser(&matrix)?.parity;
                match parity {
                    Parity::Odd => odd += 1,
                    Parity::Even => even += 1,
                }
                entries.push(([i, j, k], parity));
            }
        }
    }
    Ok(ParityCensus {
        n,
        odd,
        even,
        entries,
    })
}
