//! Exhaustive generation of class members: row-by-row backtracking for the
//! binary 3-regular classes, permutation-based generation for the
//! symmetric subclass, disjoint permutation layering for the weighted
//! classes, and the derived brute-force spectra, counts, and the
//! submultiplicativity report for indecomposable maxima.
//!
//! Generation order is deterministic: rows are completed top to bottom and
//! candidate rows are tried in increasing numeric value of their packed
//! bit pattern, so two runs (and the documented shard split) always
//! produce the same stream.

use std::collections::HashSet;

use num::BigInt;

use permspec_core::{
    permanent_int, permanent_ryser, BinaryMatrix, ClassKind, ClassSpec, ExactValue,
    WeightedMatrix,
};

use crate::sequences::{asymptotic_estimate, CountFamily};
use crate::spectrum::Spectrum;
use crate::{LabError, Result};

// ---------------------------------------------------------------------------
// Tasks
// ---------------------------------------------------------------------------

/// A description of one enumeration run over a class of dimension `n`,
/// with optional member filters and an optional shard assignment for
/// splitting the search across workers.
#[derive(Clone, Debug)]
pub struct EnumerationTask {
    class: ClassSpec,
    n: usize,
    symmetric_only: bool,
    indecomposable_only: bool,
    shard: Option<(usize, usize)>,
    limit_override: Option<usize>,
}

impl EnumerationTask {
    pub fn new(class: ClassSpec, n: usize) -> Self {
        EnumerationTask {
            class,
            n,
            symmetric_only: false,
            indecomposable_only: false,
            shard: None,
            limit_override: None,
        }
    }

    /// Keep only matrices equal to their transpose.
    pub fn symmetric_only(mut self) -> Self {
        self.symmetric_only = true;
        self
    }

    /// Keep only matrices whose support is connected (one component).
    pub fn indecomposable_only(mut self) -> Self {
        self.indecomposable_only = true;
        self
    }

    /// Restrict the run to shard `index` of `count` equal-by-prefix parts.
    /// The split is by the first two placement choices, so the union of
    /// all shards is exactly the unsharded stream.
    pub fn shard(mut self, index: usize, count: usize) -> Self {
        self.shard = Some((index, count));
        self
    }

    /// Raise or lower the dimension guard for this run. The default guards
    /// keep accidental full sweeps of astronomically large classes from
    /// hanging a session.
    pub fn dimension_limit(mut self, limit: usize) -> Self {
        self.limit_override = Some(limit);
        self
    }

    pub fn class(&self) -> &ClassSpec {
        &self.class
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn default_limit(kind: ClassKind) -> usize {
        match kind {
            ClassKind::Lambda3 => 7,
            ClassKind::Lambda3Diag => 9,
            ClassKind::Lambda3Sym => 10,
            ClassKind::LambdaABG => 5,
            ClassKind::LambdaABGDiag => 6,
            ClassKind::LambdaABGSym => 7,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 3 || self.n > 64 {
            return Err(LabError::Domain(format!(
                "enumeration requires 3 ≤ n ≤ 64, got {}",
                self.n
            )));
        }
        if let Some((index, count)) = self.shard {
            if count == 0 || index >= count {
                return Err(LabError::Domain(format!(
                    "shard index {index} out of range for {count} shards"
                )));
            }
        }
        let limit = self
            .limit_override
            .unwrap_or(Self::default_limit(self.class.kind()));
        if self.n > limit {
            // Order-of-magnitude size of the search space, from the closed
            // asymptotic for the corresponding binary pattern family.
            let family = match self.class.kind() {
                ClassKind::Lambda3 | ClassKind::LambdaABG => CountFamily::Lambda3,
                _ => CountFamily::Lambda3Diag,
            };
            let estimated_count = asymptotic_estimate(family, self.n as i64)?;
            return Err(LabError::EnumerationLimit {
                n: self.n,
                limit,
                estimated_count,
            });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Binary enumeration
// ---------------------------------------------------------------------------

/// All n-bit masks with exactly three bits set, ascending.
fn three_bit_masks(n: usize) -> Vec<u64> {
    let mut masks = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                masks.push(1u64 << a | 1u64 << b | 1u64 << c);
            }
        }
    }
    masks.sort_unstable();
    masks
}

struct RowSearch<'a, F: FnMut(&BinaryMatrix)> {
    n: usize,
    forced_diagonal: bool,
    candidates: Vec<u64>,
    shard: Option<(usize, usize)>,
    prefix_counter: usize,
    rows: Vec<u64>,
    col_counts: Vec<u8>,
    visit: &'a mut F,
}

impl<F: FnMut(&BinaryMatrix)> RowSearch<'_, F> {
    fn place(&mut self, depth: usize) {
        if depth == self.n {
            let matrix = BinaryMatrix::from_rows(self.n, self.rows.clone());
            (self.visit)(&matrix);
            return;
        }
        if depth == 2 {
            if let Some((index, count)) = self.shard {
                let assigned = self.prefix_counter % count == index;
                self.prefix_counter += 1;
                if !assigned {
                    return;
                }
            }
        }
        let remaining = (self.n - depth - 1) as u8;
        'candidates: for idx in 0..self.candidates.len() {
            let mask = self.candidates[idx];
            if self.forced_diagonal && mask & (1 << depth) == 0 {
                continue;
            }
            let mut bits = mask;
            let mut cols = [0usize; 3];
            for slot in &mut cols {
                *slot = bits.trailing_zeros() as usize;
                bits &= bits - 1;
            }
            if cols.iter().any(|&c| self.col_counts[c] == 3) {
                continue;
            }
            for &c in &cols {
                self.col_counts[c] += 1;
            }
            // Every column must still be completable by the rows below.
            for c in 0..self.n {
                if 3 - self.col_counts[c] > remaining {
                    for &c in &cols {
                        self.col_counts[c] -= 1;
                    }
                    continue 'candidates;
                }
            }
            self.rows.push(mask);
            self.place(depth + 1);
            self.rows.pop();
            for &c in &cols {
                self.col_counts[c] -= 1;
            }
        }
    }
}

fn backtrack_rows(
    n: usize,
    forced_diagonal: bool,
    shard: Option<(usize, usize)>,
    visit: &mut impl FnMut(&BinaryMatrix),
) {
    let mut search = RowSearch {
        n,
        forced_diagonal,
        candidates: three_bit_masks(n),
        shard,
        prefix_counter: 0,
        rows: Vec::with_capacity(n),
        col_counts: vec![0; n],
        visit,
    };
    search.place(0);
}

// ---------------------------------------------------------------------------
// Symmetric enumeration via permutations
// ---------------------------------------------------------------------------

/// Calls `visit` once per permutation of n points with all cycles of
/// length ≥ 3, assigning images in increasing position order.
fn cycle_free_permutations(
    n: usize,
    shard: Option<(usize, usize)>,
    visit: &mut impl FnMut(&[usize]),
) {
    fn rec(
        i: usize,
        n: usize,
        s: &mut Vec<usize>,
        used: &mut u64,
        shard: Option<(usize, usize)>,
        prefix_counter: &mut usize,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if i == n {
            visit(s);
            return;
        }
        if i == 2 {
            if let Some((index, count)) = shard {
                let assigned = *prefix_counter % count == index;
                *prefix_counter += 1;
                if !assigned {
                    return;
                }
            }
        }
        for j in 0..n {
            // No fixed points, no closing a 2-cycle.
            if j == i || *used & (1 << j) != 0 || (j < i && s[j] == i) {
                continue;
            }
            s.push(j);
            *used |= 1 << j;
            rec(i + 1, n, s, used, shard, prefix_counter, visit);
            *used &= !(1 << j);
            s.pop();
        }
    }
    let mut s = Vec::with_capacity(n);
    let mut used = 0u64;
    let mut prefix_counter = 0;
    rec(0, n, &mut s, &mut used, shard, &mut prefix_counter, visit);
}

fn inverse_permutation(s: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; s.len()];
    for (i, &j) in s.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// True when every cycle, read from its smallest element, steps to the
/// smaller of that element's two neighbors. Exactly one orientation
/// assignment per undirected cycle structure passes, so the surviving
/// permutations are in bijection with the symmetric binary members.
fn canonically_oriented(s: &[usize], inv: &[usize]) -> bool {
    let mut seen = vec![false; s.len()];
    for start in 0..s.len() {
        if seen[start] {
            continue;
        }
        let mut v = start;
        loop {
            seen[v] = true;
            v = s[v];
            if v == start {
                break;
            }
        }
        // `start` is the smallest element of its cycle: smaller elements
        // were all seen earlier.
        if s[start] > inv[start] {
            return false;
        }
    }
    true
}

fn symmetric_matrix_of(s: &[usize], inv: &[usize]) -> BinaryMatrix {
    let rows = (0..s.len())
        .map(|i| 1u64 << i | 1u64 << s[i] | 1u64 << inv[i])
        .collect();
    BinaryMatrix::from_rows(s.len(), rows)
}

// ---------------------------------------------------------------------------
// Support connectivity (bitmask BFS, cheap enough for full sweeps)
// ---------------------------------------------------------------------------

fn is_indecomposable(m: &BinaryMatrix) -> bool {
    let n = m.dim();
    let transpose = m.transpose();
    let mut row_seen = 1u64;
    let mut col_seen = 0u64;
    loop {
        let mut grew = false;
        for i in 0..n {
            if row_seen & (1 << i) != 0 {
                let new_cols = m.row_bits(i) & !col_seen;
                if new_cols != 0 {
                    col_seen |= new_cols;
                    grew = true;
                }
            }
        }
        for j in 0..n {
            if col_seen & (1 << j) != 0 {
                let new_rows = transpose.row_bits(j) & !row_seen;
                if new_rows != 0 {
                    row_seen |= new_rows;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    row_seen == all && col_seen == all
}

// ---------------------------------------------------------------------------
// Streaming interface for the binary classes
// ---------------------------------------------------------------------------

/// Streams every member of a binary class to `visit`, honoring the task's
/// filters and shard. Weighted classes are not streamed as binary
/// patterns; use [`brute_count`] / [`brute_spectrum`] for them.
pub fn enumerate_with(task: &EnumerationTask, mut visit: impl FnMut(&BinaryMatrix)) -> Result<()> {
    task.validate()?;
    if task.class.kind().is_weighted() {
        return Err(LabError::Domain(
            "enumerate streams binary classes; weighted classes are covered by brute_count and brute_spectrum".into(),
        ));
    }
    let symmetric_filter = task.symmetric_only;
    let indecomposable_filter = task.indecomposable_only;
    let mut filtered = |m: &BinaryMatrix| {
        if symmetric_filter && *m != m.transpose() {
            return;
        }
        if indecomposable_filter && !is_indecomposable(m) {
            return;
        }
        visit(m);
    };
    match task.class.kind() {
        ClassKind::Lambda3 => backtrack_rows(task.n, false, task.shard, &mut filtered),
        ClassKind::Lambda3Diag => backtrack_rows(task.n, true, task.shard, &mut filtered),
        ClassKind::Lambda3Sym => {
            let mut emit = |s: &[usize]| {
                let inv = inverse_permutation(s);
                if canonically_oriented(s, &inv) {
                    filtered(&symmetric_matrix_of(s, &inv));
                }
            };
            cycle_free_permutations(task.n, task.shard, &mut emit);
        }
        _ => unreachable!("weighted kinds rejected above"),
    }
    Ok(())
}

/// Collects a (small) enumeration into a vector.
pub fn collect(task: &EnumerationTask) -> Result<Vec<BinaryMatrix>> {
    let mut out = Vec::new();
    enumerate_with(task, |m| out.push(m.clone()))?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Weighted members
// ---------------------------------------------------------------------------

/// Generates every permutation avoiding `forbidden[i]` (bitmask of banned
/// columns per row), in lexicographic image order.
fn permutations_avoiding(
    n: usize,
    forbidden: &[u64],
    visit: &mut impl FnMut(&[usize]),
) {
    fn rec(
        i: usize,
        n: usize,
        forbidden: &[u64],
        s: &mut Vec<usize>,
        used: &mut u64,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if i == n {
            visit(s);
            return;
        }
        for j in 0..n {
            let bit = 1u64 << j;
            if *used & bit != 0 || forbidden[i] & bit != 0 {
                continue;
            }
            s.push(j);
            *used |= bit;
            rec(i + 1, n, forbidden, s, used, visit);
            *used &= !bit;
            s.pop();
        }
    }
    let mut s = Vec::with_capacity(n);
    let mut used = 0u64;
    rec(0, n, forbidden, &mut s, &mut used, visit);
}

fn add_layer(matrix: &mut WeightedMatrix, perm: &[usize], weight: &ExactValue) {
    for (i, &j) in perm.iter().enumerate() {
        matrix.set(i, j, weight.clone());
    }
}

/// Calls `visit` once per distinct weighted member. Duplicates arising
/// from coincident weights are removed through a set of seen matrices.
fn weighted_members(
    class: &ClassSpec,
    n: usize,
    mut visit: &mut impl FnMut(&WeightedMatrix),
) -> Result<()> {
    let (alpha, beta, gamma) = class
        .weights()
        .expect("caller dispatches weighted kinds only");
    let mut seen: HashSet<WeightedMatrix> = HashSet::new();
    let mut emit = |m: WeightedMatrix, visit: &mut dyn FnMut(&WeightedMatrix)| {
        if seen.insert(m.clone()) {
            visit(&m);
        }
    };
    match class.kind() {
        ClassKind::LambdaABG => {
            // Three pairwise disjoint permutation layers.
            let no_bans = vec![0u64; n];
            let mut first = Vec::new();
            permutations_avoiding(n, &no_bans, &mut |p| first.push(p.to_vec()));
            for p1 in &first {
                let ban1: Vec<u64> = p1.iter().map(|&j| 1u64 << j).collect();
                let mut seconds = Vec::new();
                permutations_avoiding(n, &ban1, &mut |p| seconds.push(p.to_vec()));
                for p2 in &seconds {
                    let ban2: Vec<u64> = p1
                        .iter()
                        .zip(p2)
                        .map(|(&a, &b)| 1u64 << a | 1u64 << b)
                        .collect();
                    permutations_avoiding(n, &ban2, &mut |p3| {
                        let mut m = WeightedMatrix::zero(n);
                        add_layer(&mut m, p1, alpha);
                        add_layer(&mut m, p2, beta);
                        add_layer(&mut m, p3, gamma);
                        emit(m, &mut visit);
                    });
                }
            }
        }
        ClassKind::LambdaABGDiag => {
            // β on the diagonal; two disjoint diagonal-avoiding layers.
            // Every member has this shape: stripping the diagonal leaves
            // one α-valued and one γ-valued entry in each row and column.
            let diag_ban: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
            let mut firsts = Vec::new();
            permutations_avoiding(n, &diag_ban, &mut |p| firsts.push(p.to_vec()));
            for p1 in &firsts {
                let ban: Vec<u64> = p1
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| 1u64 << i | 1u64 << j)
                    .collect();
                permutations_avoiding(n, &ban, &mut |p3| {
                    let mut m = WeightedMatrix::zero(n);
                    for i in 0..n {
                        m.set(i, i, beta.clone());
                    }
                    add_layer(&mut m, p1, alpha);
                    add_layer(&mut m, p3, gamma);
                    emit(m, &mut visit);
                });
            }
        }
        ClassKind::LambdaABGSym => {
            // β on the diagonal, α along the inverse of a cycle-≥3
            // permutation, γ along the permutation itself.
            cycle_free_permutations(n, None, &mut |s| {
                let inv = inverse_permutation(s);
                let mut m = WeightedMatrix::zero(n);
                for i in 0..n {
                    m.set(i, i, beta.clone());
                }
                add_layer(&mut m, &inv, alpha);
                add_layer(&mut m, s, gamma);
                emit(m, &mut visit);
            });
        }
        _ => unreachable!("caller dispatches weighted kinds only"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Brute-force counts and spectra
// ---------------------------------------------------------------------------

/// Exact member count of a class by exhaustive generation.
pub fn brute_count(class: &ClassSpec, n: usize) -> Result<ExactValue> {
    let task = EnumerationTask::new(class.clone(), n);
    task.validate()?;
    let mut count: u64 = 0;
    if class.kind().is_weighted() {
        weighted_members(class, n, &mut |_| count += 1)?;
    } else {
        enumerate_with(&task, |_| count += 1)?;
    }
    Ok(ExactValue::from(BigInt::from(count)))
}

/// Permanent spectrum of a class by exhaustive generation.
///
/// For the full binary class the sweep runs over the positive-diagonal
/// subclass: every member is a row permutation of a positive-diagonal
/// member (a system of distinct representatives reorders the rows), and
/// row permutations preserve the permanent, so the spectra coincide.
pub fn brute_spectrum(class: &ClassSpec, n: usize) -> Result<Spectrum> {
    brute_spectrum_sharded(class, n, None)
}

fn brute_spectrum_sharded(
    class: &ClassSpec,
    n: usize,
    shard: Option<(usize, usize)>,
) -> Result<Spectrum> {
    let mut values: Vec<ExactValue> = Vec::new();
    if class.kind().is_weighted() {
        let task = EnumerationTask::new(class.clone(), n);
        task.validate()?;
        weighted_members(class, n, &mut |m| {
            values.push(permanent_ryser(m).expect("member matrices are nonempty"));
        })?;
    } else {
        let sweep_kind = match class.kind() {
            ClassKind::Lambda3 => ClassKind::Lambda3Diag,
            kind => kind,
        };
        let sweep_class = ClassSpec::binary(sweep_kind).expect("sweep kind is binary");
        let mut task = EnumerationTask::new(sweep_class, n);
        if let Some((index, count)) = shard {
            task = task.shard(index, count);
        }
        enumerate_with(&task, |m| {
            let per = permanent_int(m).expect("member matrices are nonempty");
            values.push(ExactValue::from(per));
        })?;
    }
    Ok(Spectrum::from_values(values))
}

/// [`brute_spectrum`] split across `workers` threads by search prefix.
/// The merged result is identical to the single-threaded sweep.
pub fn brute_spectrum_parallel(class: &ClassSpec, n: usize, workers: usize) -> Result<Spectrum> {
    let workers = workers.max(1);
    if workers == 1 || class.kind().is_weighted() {
        return brute_spectrum(class, n);
    }
    let results: Vec<Result<Spectrum>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|index| {
                let class = class.clone();
                scope.spawn(move || brute_spectrum_sharded(&class, n, Some((index, workers))))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut values = Vec::new();
    for result in results {
        values.extend_from_slice(result?.values());
    }
    Ok(Spectrum::from_values(values))
}

/// Spectrum over the completely indecomposable members (connected
/// support) of the binary 3-regular class, together with its maximum μ₁.
/// The sweep uses the positive-diagonal subclass, which reaches every
/// permanent value of an indecomposable member (row permutations preserve
/// both the permanent and connectivity).
pub fn indecomposable_spectrum(n: usize) -> Result<(Spectrum, ExactValue)> {
    let diag = ClassSpec::binary(ClassKind::Lambda3Diag).expect("binary kind");
    let task = EnumerationTask::new(diag, n).indecomposable_only();
    let mut values = Vec::new();
    enumerate_with(&task, |m| {
        let per = permanent_int(m).expect("member matrices are nonempty");
        values.push(ExactValue::from(per));
    })?;
    let spectrum = Spectrum::from_values(values);
    let max = spectrum
        .max()
        .cloned()
        .ok_or_else(|| LabError::Domain(format!("no indecomposable members at n = {n}")))?;
    Ok((spectrum, max))
}

// ---------------------------------------------------------------------------
// Submultiplicativity of indecomposable maxima
// ---------------------------------------------------------------------------

/// Brute-force evidence for the conjectured submultiplicativity of the
/// indecomposable maxima μ₁, plus the proven square-root bound.
#[derive(Clone, Debug)]
pub struct MciReport {
    pub n_max: i64,
    /// μ₁(n) for n = 3..=n_max.
    pub mu: Vec<(i64, ExactValue)>,
    /// (n₁, n₂, μ₁(n₁+n₂) ≤ μ₁(n₁)·μ₁(n₂)) for all pairs in range.
    pub pair_checks: Vec<(i64, i64, bool)>,
    /// Pairs that violate the inequality (expected empty).
    pub violations: Vec<(i64, i64)>,
    /// (n, μ₁(n) ≤ 3^(n/2)) for n = 4..=n_max, compared exactly as
    /// μ₁(n)² ≤ 3ⁿ.
    pub sqrt_bound_checks: Vec<(i64, bool)>,
}

/// Computes μ₁ by brute force up to `n_max` and checks
/// `μ₁(n₁+n₂) ≤ μ₁(n₁)·μ₁(n₂)` for every 3 ≤ n₁ ≤ n₂ with n₁+n₂ ≤ n_max,
/// alongside the bound `μ₁(n) ≤ 3^(n/2)` for n ≥ 4.
pub fn mci_check(n_max: i64) -> Result<MciReport> {
    if n_max < 6 {
        return Err(LabError::Domain(format!(
            "mci_check needs n_max ≥ 6 to form at least one pair, got {n_max}"
        )));
    }
    let mut mu = Vec::new();
    for n in 3..=n_max {
        let (_, max) = indecomposable_spectrum(n as usize)?;
        mu.push((n, max));
    }
    let mu_of = |n: i64| -> &ExactValue { &mu[(n - 3) as usize].1 };

    let mut pair_checks = Vec::new();
    let mut violations = Vec::new();
    for n1 in 3..=n_max {
        for n2 in n1..=n_max {
            if n1 + n2 > n_max {
                break;
            }
            let ok = *mu_of(n1 + n2) <= mu_of(n1) * mu_of(n2);
            pair_checks.push((n1, n2, ok));
            if !ok {
                violations.push((n1, n2));
            }
        }
    }

    let mut sqrt_bound_checks = Vec::new();
    for n in 4..=n_max {
        let mu_int = mu_of(n).to_integer();
        let ok = &mu_int * &mu_int <= BigInt::from(3).pow(n as u32);
        sqrt_bound_checks.push((n, ok));
    }

    Ok(MciReport {
        n_max,
        mu,
        pair_checks,
        violations,
        sqrt_bound_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use permspec_core::{from_i64, is_class_member, support_components};

    fn binary_task(kind: ClassKind, n: usize) -> EnumerationTask {
        EnumerationTask::new(ClassSpec::binary(kind).unwrap(), n)
    }

    #[test]
    fn diagonal_class_counts_match_known_values() {
        // |Λ̄_n³| = 1, 9, 216, 7570 for n = 3..6.
        let expected = [(3, 1u64), (4, 9), (5, 216), (6, 7570)];
        for (n, count) in expected {
            assert_eq!(
                brute_count(&ClassSpec::binary(ClassKind::Lambda3Diag).unwrap(), n).unwrap(),
                from_i64(count as i64),
                "n = {n}"
            );
        }
    }

    #[test]
    fn full_class_count_at_n3() {
        // |Λ₃³| = 1 (only the all-ones matrix) … and 3!·1 distinct
        // patterns? No: J₃ is the unique 3-regular 3×3 matrix.
        assert_eq!(
            brute_count(&ClassSpec::binary(ClassKind::Lambda3).unwrap(), 3).unwrap(),
            from_i64(1)
        );
        // |Λ₄³| = 24: complements of permutation matrices.
        assert_eq!(
            brute_count(&ClassSpec::binary(ClassKind::Lambda3).unwrap(), 4).unwrap(),
            from_i64(24)
        );
    }

    #[test]
    fn every_emitted_matrix_is_a_member() {
        for kind in [ClassKind::Lambda3, ClassKind::Lambda3Diag, ClassKind::Lambda3Sym] {
            let spec = ClassSpec::binary(kind).unwrap();
            let members = collect(&binary_task(kind, 5)).unwrap();
            assert!(!members.is_empty());
            for m in &members {
                assert!(is_class_member(&m.to_weighted(), &spec), "kind {kind:?}");
            }
        }
    }

    #[test]
    fn symmetric_enumeration_matches_filtered_diagonal_enumeration() {
        for n in 3..=7 {
            let via_perms: HashSet<BinaryMatrix> =
                collect(&binary_task(ClassKind::Lambda3Sym, n))
                    .unwrap()
                    .into_iter()
                    .collect();
            let via_filter: HashSet<BinaryMatrix> =
                collect(&binary_task(ClassKind::Lambda3Diag, n).symmetric_only())
                    .unwrap()
                    .into_iter()
                    .collect();
            assert_eq!(via_perms, via_filter, "n = {n}");
        }
    }

    #[test]
    fn connectivity_filter_matches_component_decomposition() {
        let mut checked = 0;
        enumerate_with(&binary_task(ClassKind::Lambda3Diag, 6), |m| {
            let fast = is_indecomposable(m);
            let components = support_components(&m.to_weighted()).len();
            assert_eq!(fast, components == 1);
            checked += 1;
        })
        .unwrap();
        assert_eq!(checked, 7570);
    }

    #[test]
    fn sharding_is_a_partition() {
        let whole: Vec<BinaryMatrix> = collect(&binary_task(ClassKind::Lambda3Diag, 6)).unwrap();
        let mut merged = Vec::new();
        for index in 0..3 {
            merged.extend(collect(&binary_task(ClassKind::Lambda3Diag, 6).shard(index, 3)).unwrap());
        }
        assert_eq!(whole.len(), merged.len());
        let whole: HashSet<_> = whole.into_iter().collect();
        let merged: HashSet<_> = merged.into_iter().collect();
        assert_eq!(whole, merged);
    }

    #[test]
    fn dimension_guards_fire_with_estimates() {
        let err = collect(&binary_task(ClassKind::Lambda3, 8)).unwrap_err();
        match err {
            LabError::EnumerationLimit {
                n,
                limit,
                estimated_count,
            } => {
                assert_eq!((n, limit), (8, 7));
                assert!(estimated_count > 1e6);
            }
            other => panic!("unexpected error {other}"),
        }
        // An explicit override unlocks the run.
        let task = binary_task(ClassKind::Lambda3, 8).dimension_limit(8);
        assert!(task.validate().is_ok());
    }

    #[test]
    fn weighted_counts_match_closed_forms() {
        // |Λ₃(α,β,γ)| = 3!·K₃ = 12 and |Λ̄₄(α,β,γ)| = K₄ = 24 for
        // distinct weights.
        let abg = ClassSpec::weighted(
            ClassKind::LambdaABG,
            from_i64(2),
            from_i64(3),
            from_i64(7),
        )
        .unwrap();
        assert_eq!(brute_count(&abg, 3).unwrap(), from_i64(12));
        let diag = ClassSpec::weighted(
            ClassKind::LambdaABGDiag,
            from_i64(2),
            from_i64(3),
            from_i64(7),
        )
        .unwrap();
        assert_eq!(brute_count(&diag, 4).unwrap(), from_i64(24));
        // Coincident weights collapse members: Λ₃(1,1,1) is just {J₃}.
        let ones = ClassSpec::weighted(
            ClassKind::LambdaABG,
            from_i64(1),
            from_i64(1),
            from_i64(1),
        )
        .unwrap();
        assert_eq!(brute_count(&ones, 3).unwrap(), from_i64(1));
    }

    #[test]
    fn small_spectra_match_partition_products() {
        // ps over the symmetric class at n = 6: {20, 36}.
        let spectrum =
            brute_spectrum(&ClassSpec::binary(ClassKind::Lambda3Sym).unwrap(), 6).unwrap();
        assert_eq!(spectrum.values(), &[from_i64(20), from_i64(36)]);
        // Full class at n = 5 (runs over the diagonal subclass): {12, 13}.
        let spectrum = brute_spectrum(&ClassSpec::binary(ClassKind::Lambda3).unwrap(), 5).unwrap();
        assert_eq!(spectrum.values(), &[from_i64(12), from_i64(13)]);
    }

    #[test]
    fn parallel_spectrum_equals_sequential() {
        let class = ClassSpec::binary(ClassKind::Lambda3Diag).unwrap();
        let sequential = brute_spectrum(&class, 6).unwrap();
        let parallel = brute_spectrum_parallel(&class, 6, 4).unwrap();
        assert_eq!(sequential, parallel);
    }

    #[test]
    fn indecomposable_maxima_small() {
        // μ₁(3) = 6, μ₁(4) = 9, μ₁(5) = 13, μ₁(6) = 20.
        let expected = [(3usize, 6i64), (4, 9), (5, 13), (6, 20)];
        for (n, mu) in expected {
            let (_, max) = indecomposable_spectrum(n).unwrap();
            assert_eq!(max, from_i64(mu), "n = {n}");
        }
    }

    #[test]
    fn mci_report_holds_up_to_seven() {
        let report = mci_check(7).unwrap();
        assert!(report.violations.is_empty());
        assert!(report.pair_checks.iter().all(|&(_, _, ok)| ok));
        assert!(report.sqrt_bound_checks.iter().all(|&(_, ok)| ok));
        assert!(mci_check(5).is_err());
    }
}
