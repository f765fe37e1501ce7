use std::fmt;

use num::{One, Zero};

use crate::error::CoreError;
use crate::value::{format_exact, parse_exact, ExactValue};

/// Largest supported dimension for the bit-packed binary representation.
pub const MAX_BINARY_DIM: usize = 64;

/// Square (0,1) matrix with each row packed into a `u64`.
///
/// Bit `j` of `rows[i]` (counting from the least significant bit) is the
/// entry in row `i`, column `j`; rows are stored top to bottom, so the
/// serialized form is row-major with little-endian bit order inside a row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    /// Zero matrix of dimension `n` (n ≤ 64; n = 0 is the empty matrix).
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_BINARY_DIM, "dimension {n} out of range");
        BinaryMatrix { n, rows: vec![0; n] }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    /// All-ones matrix.
    pub fn ones(n: usize) -> Self {
        let mut m = Self::zero(n);
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for row in &mut m.rows {
            *row = full;
        }
        m
    }

    /// Builds a matrix from raw row bit-masks.
    pub fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        assert!(n <= MAX_BINARY_DIM, "dimension {n} out of range");
        assert_eq!(rows.len(), n, "row count must equal dimension");
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for (i, row) in rows.iter().enumerate() {
            assert!(row & !full == 0, "row {i} has bits beyond column {n}");
        }
        BinaryMatrix { n, rows }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Raw bit-mask of row `i`.
    pub fn row_bits(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.n && j < self.n);
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn row_sum(&self, i: usize) -> u32 {
        self.rows[i].count_ones()
    }

    pub fn col_sum(&self, j: usize) -> u32 {
        self.rows.iter().map(|row| (row >> j & 1) as u32).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            let mut bits = self.rows[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                t.rows[j] |= 1 << i;
                bits &= bits - 1;
            }
        }
        t
    }

    /// Entrywise sum, requiring the supports to be disjoint (entries stay 0/1).
    pub fn disjoint_add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                assert!(a & b == 0, "overlapping supports");
                a | b
            })
            .collect();
        BinaryMatrix { n: self.n, rows }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        assert!(n <= MAX_BINARY_DIM, "direct sum exceeds bit-packed capacity");
        let mut rows = Vec::with_capacity(n);
        rows.extend_from_slice(&self.rows);
        rows.extend(other.rows.iter().map(|r| r << self.n));
        BinaryMatrix { n, rows }
    }

    /// Left-multiplies by a permutation given as `perm[i] = image of i`,
    /// i.e. row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let rows = perm.iter().map(|&src| self.rows[src]).collect();
        BinaryMatrix { n: self.n, rows }
    }

    /// Exact-rational view of the same matrix.
    pub fn to_weighted(&self) -> WeightedMatrix {
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                entries.push(if self.get(i, j) {
                    ExactValue::one()
                } else {
                    ExactValue::zero()
                });
            }
        }
        WeightedMatrix { n: self.n, entries }
    }

    /// Parses the text format: first line `n`, then `n` lines of `n`
    /// whitespace-separated `0`/`1` entries.
    pub fn parse(text: &str) -> Result<Self, CoreError> {
        let w = WeightedMatrix::parse(text)?;
        w.to_binary()
            .ok_or_else(|| CoreError::Parse("matrix entries must be 0 or 1".into()))
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix(n={})", self.n)?;
        for i in 0..self.n {
            write!(f, "\n  ")?;
            for j in 0..self.n {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
        }
        Ok(())
    }
}

/// Square matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedMatrix {
    n: usize,
    entries: Vec<ExactValue>,
}

impl WeightedMatrix {
    pub fn zero(n: usize) -> Self {
        WeightedMatrix {
            n,
            entries: vec![ExactValue::zero(); n * n],
        }
    }

    pub fn from_entries(n: usize, entries: Vec<ExactValue>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count must be n²");
        WeightedMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactValue {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ExactValue) {
        self.entries[i * self.n + j] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Block-diagonal direct sum; the permanent of the result is the product
    /// of the permanents of the blocks.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut m = Self::zero(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.set(self.n + i, self.n + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut entries = Vec::with_capacity(self.n * self.n);
        for &src in perm {
            entries.extend_from_slice(&self.entries[src * self.n..(src + 1) * self.n]);
        }
        WeightedMatrix { n: self.n, entries }
    }

    /// Returns the (0,1) view when every entry is 0 or 1 and n ≤ 64.
    pub fn to_binary(&self) -> Option<BinaryMatrix> {
        if self.n > MAX_BINARY_DIM {
            return None;
        }
        let mut rows = vec![0u64; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.get(i, j);
                if e.is_one() {
                    rows[i] |= 1 << j;
                } else if !e.is_zero() {
                    return None;
                }
            }
        }
        Some(BinaryMatrix { n: self.n, rows })
    }

    /// Scales every entry by `factor`.
    pub fn scale(&self, factor: &ExactValue) -> Self {
        WeightedMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        WeightedMatrix { n: self.n, entries }
    }

    /// Parses the text format: first line `n`, then `n` lines of `n`
    /// whitespace-separated rational literals (`p` or `p/q`).
    pub fn parse(text: &str) -> Result<Self, CoreError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| CoreError::Parse("missing dimension line".into()))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| CoreError::Parse(format!("invalid dimension {header:?}")))?;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| CoreError::Parse(format!("missing row {}", i + 1)))?;
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != n {
                return Err(CoreError::Parse(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for token in row {
                entries.push(parse_exact(token)?);
            }
        }
        if lines.next().is_some() {
            return Err(CoreError::Parse("trailing content after matrix rows".into()));
        }
        Ok(WeightedMatrix { n, entries })
    }

    /// Renders the text format accepted by [`WeightedMatrix::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format_exact(self.get(i, j))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for WeightedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedMatrix(n={})", self.n)?;
        for i in 0..self.n {
            write!(f, "\n  ")?;
            for j in 0..self.n {
                write!(f, "{} ", format_exact(self.get(i, j)))?;
            }
        }
        Ok(())
    }
}

/// `k`-th power of the cyclic shift matrix `P` of dimension `n`, with `k`
/// reduced modulo `n`.
///
/// `P` itself has 1's exactly at positions `(i, i+1 mod n)`; `P⁰` is the
/// identity and `P⁻¹` is the transpose of `P`.
pub fn power_matrix(n: usize, k: i64) -> BinaryMatrix {
    assert!(n >= 1, "dimension must be at least 1");
    let shift = k.rem_euclid(n as i64) as usize;
    let mut m = BinaryMatrix::zero(n);
    for i in 0..n {
        m.rows[i] = 1 << ((i + shift) % n);
    }
    m
}

/// `J_n − I_n − P_n`: the complement pattern used by the ménage-number
/// permanent oracle.
pub fn menage_board(n: usize) -> BinaryMatrix {
    let mut m = BinaryMatrix::ones(n);
    for i in 0..n {
        m.set(i, i, false);
        m.set(i, (i + 1) % n, false);
    }
    m
}
