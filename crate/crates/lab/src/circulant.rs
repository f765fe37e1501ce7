//! Circulant members of the 3-regular class: dihedral equivalence classes
//! of offset sets, the Reis–Gupta count of incongruent k-gons, the
//! permanent spectrum over circulants, and its cardinality bounds.
//!
//! A circulant `P^i + P^j + P^k` is determined by its offset set
//! `{i, j, k} ⊂ Z_n`; rotating all offsets multiplies the matrix by a
//! power of `P` and reflecting them transposes it up to relabeling, so
//! permanents are constant on orbits of the dihedral action.

use std::collections::BTreeSet;

use num::integer::binomial;
use num::{BigInt, Zero};

use permspec_core::{from_i64, from_ratio, power_matrix, BinaryMatrix, ExactValue};

use crate::sequences::expect_integer;
use crate::spectrum::Spectrum;
use crate::{LabError, Result};

// ---------------------------------------------------------------------------
// Offset sets
// ---------------------------------------------------------------------------

/// A set of distinct power offsets defining the circulant `Σ P^o` of
/// dimension `n`. Offsets are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CirculantOffsets {
    n: usize,
    offsets: Vec<usize>,
}

impl CirculantOffsets {
    pub fn new(n: usize, mut offsets: Vec<usize>) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(LabError::Domain(format!(
                "circulant dimension must be in 1..=64, got {n}"
            )));
        }
        offsets.sort_unstable();
        if offsets.windows(2).any(|w| w[0] == w[1]) {
            return Err(LabError::Domain("offsets must be distinct".into()));
        }
        if offsets.iter().any(|&o| o >= n) {
            return Err(LabError::Domain(format!("offsets must be < n = {n}")));
        }
        Ok(CirculantOffsets { n, offsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// The circulant matrix `Σ P^o` (distinct offsets give disjoint
    /// supports, so the sum is a 0/1 matrix).
    pub fn matrix(&self) -> BinaryMatrix {
        let mut acc = BinaryMatrix::zero(self.n);
        for &o in &self.offsets {
            acc = acc.disjoint_add(&power_matrix(self.n, o as i64));
        }
        acc
    }

    /// Rotates the offsets so the smallest becomes 0, i.e. divides the
    /// matrix by a power of `P`; the permanent is unchanged and the result
    /// has the normal form `I + P^r + …`.
    pub fn normalized(&self) -> Self {
        let shift = self.offsets[0];
        let mut offsets: Vec<usize> = self
            .offsets
            .iter()
            .map(|&o| (o + self.n - shift) % self.n)
            .collect();
        offsets.sort_unstable();
        CirculantOffsets { n: self.n, offsets }
    }
}

/// Convenience constructor: the circulant of dimension `n` with the given
/// offsets.
pub fn circulant_matrix(n: usize, offsets: &[usize]) -> Result<BinaryMatrix> {
    Ok(CirculantOffsets::new(n, offsets.to_vec())?.matrix())
}

// ---------------------------------------------------------------------------
// Dihedral equivalence classes
// ---------------------------------------------------------------------------

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for v in start..=(n - needed) {
            current.push(v);
            rec(v + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

fn canonical_form(n: usize, offsets: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for reflect in [false, true] {
        for shift in 0..n {
            let mut image: Vec<usize> = offsets
                .iter()
                .map(|&o| {
                    let o = if reflect { (n - o) % n } else { o };
                    (o + shift) % n
                })
                .collect();
            image.sort_unstable();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
    }
    best.expect("offset set is nonempty")
}

/// Representatives of the dihedral equivalence classes of k-element offset
/// sets in `Z_n`: each class is reported by its lexicographically smallest
/// member over all 2n rotations/reflections (which always contains offset
/// 0), and representatives come out sorted.
pub fn canonical_classes(n: usize, k: usize) -> Result<Vec<CirculantOffsets>> {
    if n == 0 || n > 64 {
        return Err(LabError::Domain(format!(
            "circulant dimension must be in 1..=64, got {n}"
        )));
    }
    if k == 0 || k > n {
        return Err(LabError::Domain(format!(
            "subset size must be in 1..={n}, got {k}"
        )));
    }
    let mut reps = BTreeSet::new();
    for subset in subsets_of_size(n, k) {
        reps.insert(canonical_form(n, &subset));
    }
    Ok(reps
        .into_iter()
        .map(|offsets| CirculantOffsets { n, offsets })
        .collect())
}

// ---------------------------------------------------------------------------
// Counting formulas
// ---------------------------------------------------------------------------

fn euler_phi(mut v: u64) -> u64 {
    let mut result = v;
    let mut p = 2;
    while p * p <= v {
        if v % p == 0 {
            while v % p == 0 {
                v /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if v > 1 {
        result -= result / v;
    }
    result
}

/// Number of incongruent convex k-gons on n equally spaced circle points
/// (congruence up to rotation and reflection):
/// `½·(C(⌊(n−h)/2⌋, ⌊k/2⌋) + (1/k)·Σ_{d | gcd(k,n)} φ(d)·C(n/d−1, k/d−1))`
/// with `h = k mod 2`. Equals the number of dihedral offset classes.
pub fn reis_count(n: i64, k: i64) -> Result<ExactValue> {
    if n < 1 || k < 1 || k > n {
        return Err(LabError::Domain(format!(
            "reis_count requires 1 ≤ k ≤ n, got n = {n}, k = {k}"
        )));
    }
    let h = k % 2;
    let first = binomial(BigInt::from((n - h) / 2), BigInt::from(k / 2));
    let mut cyclic = ExactValue::zero();
    let g = num::integer::gcd(n, k);
    for d in 1..=g {
        if g % d == 0 {
            let phi = from_i64(euler_phi(d as u64) as i64);
            let choose = binomial(BigInt::from(n / d - 1), BigInt::from(k / d - 1));
            cyclic += phi * ExactValue::from(choose);
        }
    }
    let value = from_ratio(1, 2) * (ExactValue::from(first) + cyclic / from_i64(k));
    expect_integer(&format!("reis_count({n}, {k})"), value)
}

/// The triangle case `reis_count(n, 3)` in closed form by residue of n
/// mod 6: `n²/12`, `(n²−1)/12`, `(n²−4)/12`, or `(n²+3)/12`.
pub fn triangle_class_count(n: i64) -> Result<ExactValue> {
    if n < 3 {
        return Err(LabError::Domain(format!(
            "triangle_class_count requires n ≥ 3, got {n}"
        )));
    }
    let correction = match n % 6 {
        0 => 0,
        1 | 5 => -1,
        2 | 4 => -4,
        _ => 3, // n ≡ 3 (mod 6)
    };
    expect_integer(
        &format!("triangle_class_count({n})"),
        from_ratio(n * n + correction, 12),
    )
}

/// Upper bound on the number of distinct circulant permanents in the
/// 3-regular class: `⌊(n²+3)/12⌋`.
pub fn spectrum_bound(n: i64) -> i64 {
    (n * n + 3) / 12
}

/// Upper bound on the number of weighted circulant classes when all three
/// weights are distinct (ordered offset triples instead of sets):
/// `⌊(n²+3)/2⌋`.
pub fn weighted_class_bound(n: i64) -> i64 {
    (n * n + 3) / 2
}

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

/// Permanent spectrum over the circulants of the 3-regular class:
/// permanents of `I + P^r + P^s` over the dihedral classes of offset
/// triples.
pub fn circulant_spectrum(n: usize) -> Result<Spectrum> {
    if n < 3 {
        return Err(LabError::Domain(format!(
            "circulant_spectrum requires n ≥ 3, got {n}"
        )));
    }
    let mut values = Vec::new();
    for class in canonical_classes(n, 3)? {
        let matrix = class.normalized().matrix();
        let per = permspec_core::permanent_int(&matrix)?;
        values.push(ExactValue::from(per));
    }
    Ok(Spectrum::from_values(values))
}

/// Canonical representatives of ordered offset triples with distinct
/// entries under the dihedral action — the classes relevant when the
/// three circulant layers carry distinct weights.
pub fn weighted_circulant_classes(n: usize) -> Result<Vec<[usize; 3]>> {
    if n < 3 || n > 64 {
        return Err(LabError::Domain(format!(
            "weighted circulant classes require 3 ≤ n ≤ 64, got {n}"
        )));
    }
    let mut reps: BTreeSet<[usize; 3]> = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                let mut best: Option<[usize; 3]> = None;
                for reflect in [false, true] {
                    for shift in 0..n {
                        let map = |o: usize| {
                            let o = if reflect { (n - o) % n } else { o };
                            (o + shift) % n
                        };
                        let image = [map(a), map(b), map(c)];
                        if best.is_none_or(|best| image < best) {
                            best = Some(image);
                        }
                    }
                }
                reps.insert(best.expect("at least one image exists"));
            }
        }
    }
    Ok(reps.into_iter().collect())
}
