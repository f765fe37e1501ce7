use std::collections::VecDeque;

use num::{One, Zero};

use crate::error::CoreError;
use crate::matrix::WeightedMatrix;
use crate::value::ExactValue;
use crate::Result;

/// The six matrix classes whose permanent spectra this workspace studies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    /// (0,1) matrices that split into three pairwise disjoint permutation
    /// matrices — equivalently, all row and column sums equal 3.
    Lambda3,
    /// Members of [`ClassKind::Lambda3`] whose main diagonal is all ones.
    Lambda3Diag,
    /// Symmetric members of [`ClassKind::Lambda3Diag`]; these are exactly
    /// the matrices `I + S + Sᵀ` for a permutation `S` with every cycle of
    /// length at least three.
    Lambda3Sym,
    /// Weighted sums `αP₁ + βP₂ + γP₃` of three pairwise disjoint
    /// permutation matrices, with all three weights nonzero.
    LambdaABG,
    /// Members of [`ClassKind::LambdaABG`] with `P₂ = I`, so the main
    /// diagonal is constantly β.
    LambdaABGDiag,
    /// Matrices `βI + αSᵀ + γS` for a permutation `S` with every cycle of
    /// length at least three; off the diagonal, an α entry at (i,j) always
    /// faces a γ entry at (j,i).
    LambdaABGSym,
}

impl ClassKind {
    /// True for the kinds parameterized by weights (α, β, γ).
    pub fn is_weighted(self) -> bool {
        matches!(
            self,
            ClassKind::LambdaABG | ClassKind::LambdaABGDiag | ClassKind::LambdaABGSym
        )
    }
}

/// A fully specified class: a kind plus, for the weighted kinds, the
/// weight triple (α, β, γ).
///
/// Construction enforces that weights are present exactly for the weighted
/// kinds and that all weights are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    kind: ClassKind,
    weights: Option<[ExactValue; 3]>,
}

impl ClassSpec {
    /// Specification of one of the binary (unweighted) classes.
    pub fn binary(kind: ClassKind) -> Result<Self> {
        if kind.is_weighted() {
            return Err(CoreError::Domain(format!(
                "{kind:?} requires a weight triple"
            )));
        }
        Ok(ClassSpec { kind, weights: None })
    }

    /// Specification of one of the weighted classes.
    pub fn weighted(
        kind: ClassKind,
        alpha: ExactValue,
        beta: ExactValue,
        gamma: ExactValue,
    ) -> Result<Self> {
        if !kind.is_weighted() {
            return Err(CoreError::Domain(format!(
                "{kind:?} does not take weights"
            )));
        }
        if alpha.is_zero() || beta.is_zero() || gamma.is_zero() {
            return Err(CoreError::Domain("class weights must be nonzero".into()));
        }
        Ok(ClassSpec {
            kind,
            weights: Some([alpha, beta, gamma]),
        })
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    /// The weight triple (α, β, γ) for weighted kinds.
    pub fn weights(&self) -> Option<(&ExactValue, &ExactValue, &ExactValue)> {
        self.weights.as_ref().map(|w| (&w[0], &w[1], &w[2]))
    }
}

/// Decides membership of `a` in the class described by `spec`.
///
/// For the regular patterns this relies on the classical bipartite-graph
/// fact that a k-regular (0,1) pattern always splits into k disjoint
/// permutation matrices, so regularity of each weight's support is both
/// necessary and sufficient. The symmetric weighted kind searches for an
/// explicit witness permutation, which keeps coincident weights (α = γ,
/// β = α, …) correct.
pub fn is_class_member(a: &WeightedMatrix, spec: &ClassSpec) -> bool {
    if a.dim() == 0 {
        return false;
    }
    match spec.kind {
        ClassKind::Lambda3 => binary_regular_member(a, false, false),
        ClassKind::Lambda3Diag => binary_regular_member(a, true, false),
        ClassKind::Lambda3Sym => binary_regular_member(a, true, true),
        ClassKind::LambdaABG => {
            let w = spec.weights.as_ref().expect("validated at construction");
            regular_support_member(a, &[&w[0], &w[1], &w[2]], false)
        }
        ClassKind::LambdaABGDiag => {
            let w = spec.weights.as_ref().expect("validated at construction");
            diag_member(a, w)
        }
        ClassKind::LambdaABGSym => {
            let w = spec.weights.as_ref().expect("validated at construction");
            sym_member(a, w)
        }
    }
}

fn binary_regular_member(a: &WeightedMatrix, need_diag: bool, need_sym: bool) -> bool {
    let n = a.dim();
    let mut col_counts = vec![0u32; n];
    for i in 0..n {
        let mut row_count = 0;
        for j in 0..n {
            let e = a.get(i, j);
            if e.is_one() {
                row_count += 1;
                col_counts[j] += 1;
            } else if !e.is_zero() {
                return false;
            }
        }
        if row_count != 3 {
            return false;
        }
        if need_diag && !a.get(i, i).is_one() {
            return false;
        }
    }
    if col_counts.iter().any(|&c| c != 3) {
        return false;
    }
    if need_sym {
        for i in 0..n {
            for j in 0..i {
                if a.get(i, j) != a.get(j, i) {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks that every nonzero entry of `a` (off the diagonal when
/// `off_diagonal_only`) equals one of `values`, and that each distinct
/// value's support is m-regular, m being the value's multiplicity.
fn regular_support_member(
    a: &WeightedMatrix,
    values: &[&ExactValue],
    off_diagonal_only: bool,
) -> bool {
    let n = a.dim();
    let mut distinct: Vec<(&ExactValue, u32)> = Vec::new();
    for &v in values {
        match distinct.iter_mut().find(|(d, _)| *d == v) {
            Some((_, m)) => *m += 1,
            None => distinct.push((v, 1)),
        }
    }
    let mut row_counts = vec![vec![0u32; n]; distinct.len()];
    let mut col_counts = vec![vec![0u32; n]; distinct.len()];
    for i in 0..n {
        for j in 0..n {
            if off_diagonal_only && i == j {
                continue;
            }
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            match distinct.iter().position(|(d, _)| *d == e) {
                Some(k) => {
                    row_counts[k][i] += 1;
                    col_counts[k][j] += 1;
                }
                None => return false,
            }
        }
    }
    for (k, &(_, m)) in distinct.iter().enumerate() {
        if row_counts[k].iter().any(|&c| c != m) || col_counts[k].iter().any(|&c| c != m) {
            return false;
        }
    }
    true
}

fn diag_member(a: &WeightedMatrix, w: &[ExactValue; 3]) -> bool {
    let n = a.dim();
    for i in 0..n {
        if a.get(i, i) != &w[1] {
            return false;
        }
    }
    // Off the forced-β diagonal, the α and γ supports must be regular.
    regular_support_member(a, &[&w[0], &w[2]], true)
}

fn sym_member(a: &WeightedMatrix, w: &[ExactValue; 3]) -> bool {
    let n = a.dim();
    if n < 3 || n > 64 {
        return false;
    }
    let (alpha, beta, gamma) = (&w[0], &w[1], &w[2]);
    let mut off_diag_nonzeros = 0usize;
    for i in 0..n {
        if a.get(i, i) != beta {
            return false;
        }
        let mut row_nonzeros = 0;
        let mut col_nonzeros = 0;
        for j in 0..n {
            if j != i && !a.get(i, j).is_zero() {
                row_nonzeros += 1;
                off_diag_nonzeros += 1;
            }
            if j != i && !a.get(j, i).is_zero() {
                col_nonzeros += 1;
            }
        }
        // Rows and columns each carry exactly one α and one γ off-diagonal.
        if row_nonzeros != 2 || col_nonzeros != 2 {
            return false;
        }
    }
    if off_diag_nonzeros != 2 * n {
        return false;
    }
    // Witness search: s(i) = j is admissible when a[i][j] = γ and
    // a[j][i] = α. A full injective assignment with no 2-cycles covers 2n
    // distinct nonzero positions — exactly all of them by the count above.
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && a.get(i, j) == gamma && a.get(j, i) == alpha)
                .collect()
        })
        .collect();
    let mut image = vec![usize::MAX; n];
    assign_witness(0, n, &candidates, &mut image, &mut 0u64)
}

fn assign_witness(
    i: usize,
    n: usize,
    candidates: &[Vec<usize>],
    image: &mut [usize],
    used: &mut u64,
) -> bool {
    if i == n {
        return true;
    }
    for &j in &candidates[i] {
        if *used >> j & 1 == 1 {
            continue;
        }
        // Forbid 2-cycles as they arise; fixed points are already excluded.
        if j < i && image[j] == i {
            continue;
        }
        image[i] = j;
        *used |= 1 << j;
        if assign_witness(i + 1, n, candidates, image, used) {
            return true;
        }
        *used &= !(1 << j);
    }
    image[i] = usize::MAX;
    false
}

/// One connected component of a matrix's support, viewed as a bipartite
/// graph on row and column vertices with an edge at every nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Row indices in the component, in increasing order.
    pub rows: Vec<usize>,
    /// Column indices in the component, in increasing order.
    pub cols: Vec<usize>,
}

impl Component {
    /// Induced submatrix on the component's rows and columns (in increasing
    /// index order); `None` when the component is not square.
    pub fn extract(&self, a: &WeightedMatrix) -> Option<WeightedMatrix> {
        if self.rows.len() != self.cols.len() || self.rows.is_empty() {
            return None;
        }
        let m = self.rows.len();
        let mut sub = WeightedMatrix::zero(m);
        for (bi, &i) in self.rows.iter().enumerate() {
            for (bj, &j) in self.cols.iter().enumerate() {
                sub.set(bi, bj, a.get(i, j).clone());
            }
        }
        Some(sub)
    }
}

/// Splits the support of `a` into connected components of its bipartite
/// row/column graph, reported as row/column index sets.
///
/// Components containing at least one row come first, ordered by their
/// smallest row index; all-zero columns trail as col-only components in
/// increasing column order.
pub fn support_components(a: &WeightedMatrix) -> Vec<Component> {
    let n = a.dim();
    let mut row_seen = vec![false; n];
    let mut col_seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if row_seen[start] {
            continue;
        }
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut queue: VecDeque<(bool, usize)> = VecDeque::new();
        row_seen[start] = true;
        queue.push_back((true, start));
        while let Some((is_row, idx)) = queue.pop_front() {
            if is_row {
                rows.push(idx);
                for j in 0..n {
                    if !col_seen[j] && !a.get(idx, j).is_zero() {
                        col_seen[j] = true;
                        queue.push_back((false, j));
                    }
                }
            } else {
                cols.push(idx);
                for i in 0..n {
                    if !row_seen[i] && !a.get(i, idx).is_zero() {
                        row_seen[i] = true;
                        queue.push_back((true, i));
                    }
                }
            }
        }
        rows.sort_unstable();
        cols.sort_unstable();
        out.push(Component { rows, cols });
    }
    for j in 0..n {
        if !col_seen[j] {
            out.push(Component {
                rows: Vec::new(),
                cols: vec![j],
            });
        }
    }
    out
}

/// Splits `a` into its direct summands under simultaneous row/column
/// permutation: the induced submatrices of the connected components of the
/// bipartite support graph, ordered by smallest row index.
///
/// The permanent of `a` is the product of the permanents of the returned
/// blocks, and `a` is completely indecomposable exactly when a single block
/// comes back. Expects a matrix whose support components are square —
/// guaranteed for members of the matrix classes here, where the support is
/// regular — and panics otherwise.
pub fn decompose_components(a: &WeightedMatrix) -> Vec<WeightedMatrix> {
    support_components(a)
        .iter()
        .map(|comp| {
            comp.extract(a)
                .expect("support component is not square: not a class-member pattern")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{power_matrix, BinaryMatrix};
    use crate::value::from_i64;

    fn circulant3(n: usize) -> WeightedMatrix {
        let i = BinaryMatrix::identity(n);
        let p = power_matrix(n, 1);
        let p2 = power_matrix(n, 2);
        i.disjoint_add(&p).disjoint_add(&p2).to_weighted()
    }

    fn spec(kind: ClassKind) -> ClassSpec {
        ClassSpec::binary(kind).unwrap()
    }

    fn wspec(kind: ClassKind, a: i64, b: i64, g: i64) -> ClassSpec {
        ClassSpec::weighted(kind, from_i64(a), from_i64(b), from_i64(g)).unwrap()
    }

    #[test]
    fn spec_construction_is_validated() {
        assert!(ClassSpec::binary(ClassKind::LambdaABG).is_err());
        assert!(ClassSpec::weighted(
            ClassKind::Lambda3,
            from_i64(1),
            from_i64(1),
            from_i64(1)
        )
        .is_err());
        assert!(ClassSpec::weighted(
            ClassKind::LambdaABG,
            from_i64(1),
            from_i64(0),
            from_i64(2)
        )
        .is_err());
    }

    #[test]
    fn binary_circulants_and_symmetry() {
        // I + P + P² is 3-regular with a full diagonal for every n ≥ 3,
        // but symmetric only at n = 3 (where P² = Pᵀ).
        for n in 3..=6 {
            let c = circulant3(n);
            assert!(is_class_member(&c, &spec(ClassKind::Lambda3)));
            assert!(is_class_member(&c, &spec(ClassKind::Lambda3Diag)));
            assert_eq!(is_class_member(&c, &spec(ClassKind::Lambda3Sym)), n == 3);
        }
        // I + P + Pᵀ is symmetric for every n ≥ 3.
        for n in 4..=6 {
            let i = BinaryMatrix::identity(n);
            let p = power_matrix(n, 1);
            let m = i.disjoint_add(&p).disjoint_add(&p.transpose()).to_weighted();
            assert!(is_class_member(&m, &spec(ClassKind::Lambda3Sym)));
        }
    }

    #[test]
    fn regularity_failures_are_rejected() {
        // All-ones 3×3 is a member; drop one entry and it is not.
        let ones = BinaryMatrix::ones(3).to_weighted();
        assert!(is_class_member(&ones, &spec(ClassKind::Lambda3)));
        let mut broken = ones.clone();
        broken.set(0, 0, from_i64(0));
        assert!(!is_class_member(&broken, &spec(ClassKind::Lambda3)));
        // Entries other than 0/1 are rejected even with the right sums.
        let mut weighted = ones;
        weighted.set(0, 0, from_i64(2));
        weighted.set(0, 1, from_i64(0));
        assert!(!is_class_member(&weighted, &spec(ClassKind::Lambda3)));
    }

    fn weighted_cycle(n: usize, a: i64, b: i64, g: i64) -> WeightedMatrix {
        let alpha = power_matrix(n, -1).to_weighted().scale(&from_i64(a));
        let beta = BinaryMatrix::identity(n).to_weighted().scale(&from_i64(b));
        let gamma = power_matrix(n, 1).to_weighted().scale(&from_i64(g));
        alpha.add(&beta).add(&gamma)
    }

    #[test]
    fn weighted_membership_with_distinct_weights() {
        let m = weighted_cycle(5, 2, 3, 7);
        assert!(is_class_member(&m, &wspec(ClassKind::LambdaABG, 2, 3, 7)));
        assert!(is_class_member(&m, &wspec(ClassKind::LambdaABGDiag, 2, 3, 7)));
        assert!(is_class_member(&m, &wspec(ClassKind::LambdaABGSym, 2, 3, 7)));
        // Wrong triple fails.
        assert!(!is_class_member(&m, &wspec(ClassKind::LambdaABG, 2, 3, 5)));
        // Weight order matters for the symmetric kind: swapping α and γ
        // describes the transposed matrix.
        assert!(is_class_member(
            &m.transpose(),
            &wspec(ClassKind::LambdaABGSym, 7, 3, 2)
        ));
    }

    #[test]
    fn weighted_membership_with_coincident_weights() {
        // α = γ merges the two off-diagonal supports into one 2-regular one.
        let m = weighted_cycle(5, 2, 3, 2);
        assert!(is_class_member(&m, &wspec(ClassKind::LambdaABG, 2, 3, 2)));
        assert!(is_class_member(&m, &wspec(ClassKind::LambdaABGSym, 2, 3, 2)));
        // α = β = γ collapses everything to one 3-regular support.
        let m = weighted_cycle(4, 5, 5, 5);
        assert!(is_class_member(&m, &wspec(ClassKind::LambdaABG, 5, 5, 5)));
        assert!(is_class_member(&m, &wspec(ClassKind::LambdaABGSym, 5, 5, 5)));
        // β coincides with γ: diagonal stays separable because the
        // witness permutation has no fixed points. Reading the roles the
        // other way round (S = P⁻¹) also succeeds; a wrong β does not.
        let m = weighted_cycle(5, 2, 7, 7);
        assert!(is_class_member(&m, &wspec(ClassKind::LambdaABGSym, 2, 7, 7)));
        assert!(is_class_member(&m, &wspec(ClassKind::LambdaABGSym, 7, 7, 2)));
        assert!(!is_class_member(&m, &wspec(ClassKind::LambdaABGSym, 7, 2, 7)));
    }

    #[test]
    fn two_cycles_are_rejected() {
        // A matrix pairing (0,1) and (2,3) symmetrically would need a
        // witness made of two 2-cycles; it is correctly rejected.
        let n = 4;
        let mut m = BinaryMatrix::identity(n).to_weighted().scale(&from_i64(3));
        for (i, j) in [(0usize, 1usize), (1, 0), (2, 3), (3, 2)] {
            m.set(i, j, from_i64(2));
        }
        assert!(!is_class_member(&m, &wspec(ClassKind::LambdaABGSym, 2, 3, 2)));
        // The same edge count arranged as one 4-cycle is accepted: the
        // search must discard the orientation s = (0 1)(2 3), which would
        // leave half the entries unexplained, and settle on the ring.
        let mut ring = BinaryMatrix::identity(n).to_weighted().scale(&from_i64(3));
        for (i, j) in [(0usize, 1usize), (1, 2), (2, 3), (3, 0)] {
            ring.set(i, j, from_i64(2));
            ring.set(j, i, from_i64(2));
        }
        assert!(is_class_member(&ring, &wspec(ClassKind::LambdaABGSym, 2, 3, 2)));
    }

    #[test]
    fn components_split_direct_sums() {
        let a = BinaryMatrix::ones(3).to_weighted();
        let b = circulant3(4);
        let sum = a.direct_sum(&b);
        let comps = support_components(&sum);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].rows, vec![0, 1, 2]);
        assert_eq!(comps[0].cols, vec![0, 1, 2]);
        assert_eq!(comps[1].rows, vec![3, 4, 5, 6]);
        let blocks = decompose_components(&sum);
        assert_eq!(blocks, vec![a.clone(), b]);
        assert_eq!(decompose_components(&a).len(), 1);
    }

    #[test]
    fn zero_matrix_splits_into_singletons() {
        let z = WeightedMatrix::zero(3);
        let comps = support_components(&z);
        assert_eq!(comps.len(), 6);
        assert!(comps[..3].iter().all(|c| c.cols.is_empty() && c.rows.len() == 1));
        assert!(comps[3..].iter().all(|c| c.rows.is_empty() && c.cols.len() == 1));
    }
}
