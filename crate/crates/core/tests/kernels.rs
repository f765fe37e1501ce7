//! Cross-checks between the two independent permanent routes and the
//! structural invariants the rest of the workspace leans on.

use num::bigint::BigInt;
use num::One;

use permspec_core::rng::SplitMix64;
use permspec_core::{
    decompose_components, from_ratio, permanent_expansion, permanent_int, permanent_ryser,
    power_matrix, support_components, BinaryMatrix, ExactValue, WeightedMatrix,
};

fn random_weighted(rng: &mut SplitMix64, n: usize) -> WeightedMatrix {
    let mut a = WeightedMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            // Small integers with occasional halves and thirds keep the
            // arithmetic honest without blowing up denominators.
            let numer = rng.next_range_i64(-3, 3);
            let denom = match rng.next_below(4) {
                0 => 2,
                1 => 3,
                _ => 1,
            };
            a.set(i, j, from_ratio(numer, denom));
        }
    }
    a
}

fn random_binary(rng: &mut SplitMix64, n: usize) -> BinaryMatrix {
    let bound = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rows = (0..n).map(|_| rng.next_below(bound + 1)).collect();
    BinaryMatrix::from_rows(n, rows)
}

// ---------------------------------------------------------------------------
// Route agreement
// ---------------------------------------------------------------------------

#[test]
fn inclusion_exclusion_matches_expansion_on_500_random_matrices() {
    let mut rng = SplitMix64::new(0x1CEB_00DA);
    for trial in 0..500 {
        let n = 1 + (trial % 8);
        let a = random_weighted(&mut rng, n);
        let via_subsets = permanent_ryser(&a).unwrap();
        let via_expansion = permanent_expansion(&a).unwrap();
        assert_eq!(via_subsets, via_expansion, "disagreement at n={n}: {a:?}");
    }
}

#[test]
fn integer_kernel_matches_rational_kernel_on_binary_matrices() {
    let mut rng = SplitMix64::new(0xB1_7F1E1D);
    for trial in 0..200 {
        let n = 1 + (trial % 10);
        let a = random_binary(&mut rng, n);
        let integer = permanent_int(&a).unwrap();
        let rational = permanent_ryser(&a.to_weighted()).unwrap();
        assert!(rational.is_integer());
        assert_eq!(integer, rational.to_integer(), "disagreement at n={n}: {a:?}");
    }
}

// ---------------------------------------------------------------------------
// Permanent invariances
// ---------------------------------------------------------------------------

#[test]
fn permanent_is_invariant_under_transpose() {
    let mut rng = SplitMix64::new(0x7A_9B3C5D);
    for trial in 0..100 {
        let n = 1 + (trial % 7);
        let a = random_weighted(&mut rng, n);
        assert_eq!(
            permanent_ryser(&a).unwrap(),
            permanent_ryser(&a.transpose()).unwrap()
        );
    }
}

#[test]
fn permanent_is_invariant_under_row_and_column_permutations() {
    let mut rng = SplitMix64::new(0x0DD_BA11);
    for trial in 0..100 {
        let n = 2 + (trial % 6);
        let a = random_weighted(&mut rng, n);
        let reference = permanent_ryser(&a).unwrap();
        let rows = rng.permutation(n);
        assert_eq!(permanent_ryser(&a.permute_rows(&rows)).unwrap(), reference);
        // Column permutation = row permutation of the transpose.
        let cols = rng.permutation(n);
        let permuted_cols = a.transpose().permute_rows(&cols).transpose();
        assert_eq!(permanent_ryser(&permuted_cols).unwrap(), reference);
    }
}

#[test]
fn cyclic_shift_rows_preserve_binary_permanents() {
    let mut rng = SplitMix64::new(0x5147_0CA7);
    for trial in 0..60 {
        let n = 2 + (trial % 6);
        let a = random_binary(&mut rng, n);
        let reference = permanent_int(&a).unwrap();
        for l in 0..n as i64 {
            // Left-multiplying by the shift power permutes rows only.
            let p = power_matrix(n, l);
            let perm: Vec<usize> = (0..n).map(|i| {
                (0..n).find(|&j| p.get(i, j)).unwrap()
            }).collect();
            let shifted = BinaryMatrix::from_rows(
                n,
                perm.iter().map(|&src| a.row_bits(src)).collect(),
            );
            assert_eq!(permanent_int(&shifted).unwrap(), reference);
        }
    }
}

#[test]
fn direct_sums_multiply_permanents() {
    let mut rng = SplitMix64::new(0xD15C_0B0E);
    for trial in 0..100 {
        let na = 1 + (trial % 4);
        let nb = 1 + (trial % 3);
        let a = random_weighted(&mut rng, na);
        let b = random_weighted(&mut rng, nb);
        let combined = permanent_ryser(&a.direct_sum(&b)).unwrap();
        let product = permanent_ryser(&a).unwrap() * permanent_ryser(&b).unwrap();
        assert_eq!(combined, product);
    }
    // Same law through the integer kernel.
    let block = BinaryMatrix::ones(3);
    let stacked = block.direct_sum(&block).direct_sum(&block);
    assert_eq!(permanent_int(&stacked).unwrap(), BigInt::from(216));
}

// ---------------------------------------------------------------------------
// Support decomposition
// ---------------------------------------------------------------------------

#[test]
fn component_permanents_multiply_back_to_the_whole() {
    let mut rng = SplitMix64::new(0xC0_C0A0);
    for trial in 0..80 {
        let na = 1 + (trial % 3);
        let nb = 1 + (trial % 4);
        let a = random_weighted(&mut rng, na);
        let b = random_weighted(&mut rng, nb);
        let n = na + nb;
        // Scramble the block structure with row and column permutations;
        // connectivity of the support is preserved under relabeling.
        let rows = rng.permutation(n);
        let cols = rng.permutation(n);
        let scrambled = a
            .direct_sum(&b)
            .permute_rows(&rows)
            .transpose()
            .permute_rows(&cols)
            .transpose();
        let reference = permanent_ryser(&scrambled).unwrap();
        let comps = support_components(&scrambled);
        if comps.iter().any(|c| c.rows.len() != c.cols.len()) {
            // A non-square component forces a zero permanent.
            assert!(reference == ExactValue::from_integer(0.into()));
            continue;
        }
        let mut total_size = 0;
        let mut product = ExactValue::one();
        for block in decompose_components(&scrambled) {
            total_size += block.dim();
            product *= permanent_ryser(&block).unwrap();
        }
        assert_eq!(total_size, n);
        assert_eq!(product, reference);
    }
}

#[test]
fn indecomposable_means_single_component() {
    // The full 3×3 pattern is connected; a block-diagonal split is not.
    let ones = BinaryMatrix::ones(3).to_weighted();
    assert_eq!(decompose_components(&ones).len(), 1);
    let split = ones.direct_sum(&ones);
    assert_eq!(decompose_components(&split).len(), 2);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

#[test]
fn text_format_round_trips() {
    let mut rng = SplitMix64::new(0x7E37_F0F0);
    for trial in 0..50 {
        let n = 1 + (trial % 6);
        let a = random_weighted(&mut rng, n);
        let text = a.to_text();
        assert_eq!(WeightedMatrix::parse(&text).unwrap(), a);
    }
    for trial in 0..50 {
        let n = 1 + (trial % 6);
        let b = random_binary(&mut rng, n);
        let text = b.to_weighted().to_text();
        assert_eq!(BinaryMatrix::parse(&text).unwrap(), b);
    }
}

#[test]
fn empty_and_malformed_inputs_error_cleanly() {
    assert!(WeightedMatrix::parse("").is_err());
    assert!(WeightedMatrix::parse("x").is_err());
    assert!(WeightedMatrix::parse("2\n1 2\n3").is_err());
    assert!(WeightedMatrix::parse("1\n1/0\n").is_err());
    let empty = WeightedMatrix::parse("0\n").unwrap();
    assert_eq!(
        permanent_ryser(&empty).unwrap_err().to_string(),
        "empty matrix"
    );
}
