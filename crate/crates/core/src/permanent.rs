use std::collections::HashMap;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::CoreError;
use crate::matrix::{BinaryMatrix, WeightedMatrix};
use crate::value::ExactValue;
use crate::Result;

/// Largest dimension accepted by [`permanent_expansion`].
///
/// The expansion routine exists as an independent cross-check for the
/// inclusion–exclusion kernels, so it is deliberately capped at a size where
/// its memoized recursion stays cheap.
pub const EXPANSION_ORACLE_LIMIT: usize = 12;

/// Exact permanent of a rational matrix by inclusion–exclusion over column
/// subsets:
///
/// ```text
/// per(A) = (−1)ⁿ · Σ_{∅ ≠ S ⊆ {1..n}} (−1)^|S| · Π_i ( Σ_{j ∈ S} a_ij )
/// ```
///
/// Subsets are visited in Gray-code order so each step updates the n row
/// sums by a single column and the whole computation is O(2ⁿ·n) arithmetic
/// operations.
pub fn permanent_ryser(a: &WeightedMatrix) -> Result<ExactValue> {
    let n = a.dim();
    if n == 0 {
        return Err(CoreError::EmptyMatrix);
    }
    let mut row_sums = vec![ExactValue::zero(); n];
    let mut total = ExactValue::zero();
    let mut gray: u64 = 0;
    let mut size: u32 = 0;
    for k in 1u64..1u64 << n {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let added = gray >> j & 1 == 1;
        if added {
            size += 1;
            for i in 0..n {
                row_sums[i] += a.get(i, j);
            }
        } else {
            size -= 1;
            for i in 0..n {
                row_sums[i] -= a.get(i, j);
            }
        }
        let mut product = ExactValue::one();
        for sum in &row_sums {
            if sum.is_zero() {
                product = ExactValue::zero();
                break;
            }
            product *= sum;
        }
        if product.is_zero() {
            continue;
        }
        if (n as u32 - size) % 2 == 0 {
            total += product;
        } else {
            total -= product;
        }
    }
    Ok(total)
}

/// Exact permanent of a (0,1) matrix via the same Gray-code
/// inclusion–exclusion as [`permanent_ryser`], run in the narrowest integer
/// type that provably cannot overflow.
///
/// Every partial product divides Π row-sums and the accumulated total is a
/// signed sum of at most 2ⁿ such products, so `2ⁿ · Π row-sums` bounds every
/// intermediate value. The kernel runs in `i64` when that bound fits in 62
/// bits, `i128` up to 126 bits, and falls back to big-integer arithmetic
/// beyond that.
pub fn permanent_int(a: &BinaryMatrix) -> Result<BigInt> {
    let n = a.dim();
    if n == 0 {
        return Err(CoreError::EmptyMatrix);
    }
    let mut bound = BigInt::one() << n;
    for i in 0..n {
        let r = a.row_sum(i);
        if r == 0 {
            return Ok(BigInt::zero());
        }
        bound *= r;
    }
    // Column masks: bit i of cols[j] is the entry in row i, column j.
    let cols: Vec<u64> = {
        let t = a.transpose();
        (0..n).map(|j| t.row_bits(j)).collect()
    };
    let bits = bound.bits();
    if bits <= 62 {
        Ok(BigInt::from(gray_permanent_i64(&cols, n)))
    } else if bits <= 126 {
        Ok(BigInt::from(gray_permanent_i128(&cols, n)))
    } else {
        Ok(gray_permanent_big(&cols, n))
    }
}

macro_rules! gray_permanent_prim {
    ($name:ident, $t:ty) => {
        fn $name(cols: &[u64], n: usize) -> $t {
            let mut row_sums = vec![0 as $t; n];
            let mut total: $t = 0;
            let mut gray: u64 = 0;
            let mut size: u32 = 0;
            for k in 1u64..1u64 << n {
                let j = k.trailing_zeros() as usize;
                gray ^= 1 << j;
                let delta: $t = if gray >> j & 1 == 1 {
                    size += 1;
                    1
                } else {
                    size -= 1;
                    -1
                };
                let mut bits = cols[j];
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    row_sums[i] += delta;
                    bits &= bits - 1;
                }
                let mut product: $t = 1;
                for &sum in &row_sums {
                    product *= sum;
                    if product == 0 {
                        break;
                    }
                }
                if (n as u32 - size) % 2 == 0 {
                    total += product;
                } else {
                    total -= product;
                }
            }
            total
        }
    };
}

gray_permanent_prim!(gray_permanent_i64, i64);
gray_permanent_prim!(gray_permanent_i128, i128);

fn gray_permanent_big(cols: &[u64], n: usize) -> BigInt {
    let mut row_sums = vec![0i64; n];
    let mut total = BigInt::zero();
    let mut gray: u64 = 0;
    let mut size: u32 = 0;
    for k in 1u64..1u64 << n {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let delta: i64 = if gray >> j & 1 == 1 {
            size += 1;
            1
        } else {
            size -= 1;
            -1
        };
        let mut bits = cols[j];
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            row_sums[i] += delta;
            bits &= bits - 1;
        }
        let mut product = BigInt::one();
        for &sum in &row_sums {
            if sum == 0 {
                product = BigInt::zero();
                break;
            }
            product *= sum;
        }
        if product.is_zero() {
            continue;
        }
        if (n as u32 - size) % 2 == 0 {
            total += product;
        } else {
            total -= product;
        }
    }
    total
}

/// Independent permanent oracle: memoized expansion along the first
/// remaining row, keyed by the bitmask of still-unused columns.
///
/// This shares no code with the inclusion–exclusion kernels, which is the
/// point — the two routes cross-check each other in the test suites. Errors
/// with [`CoreError::OracleLimit`] above [`EXPANSION_ORACLE_LIMIT`].
pub fn permanent_expansion(a: &WeightedMatrix) -> Result<ExactValue> {
    let n = a.dim();
    if n == 0 {
        return Err(CoreError::EmptyMatrix);
    }
    if n > EXPANSION_ORACLE_LIMIT {
        return Err(CoreError::OracleLimit {
            n,
            limit: EXPANSION_ORACLE_LIMIT,
        });
    }
    let mut memo: HashMap<u64, ExactValue> = HashMap::new();
    let full = (1u64 << n) - 1;
    Ok(expand(a, full, &mut memo))
}

fn expand(a: &WeightedMatrix, mask: u64, memo: &mut HashMap<u64, ExactValue>) -> ExactValue {
    if mask == 0 {
        return ExactValue::one();
    }
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let n = a.dim();
    let row = n - mask.count_ones() as usize;
    let mut acc = ExactValue::zero();
    let mut bits = mask;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let entry = a.get(row, j);
        if entry.is_zero() {
            continue;
        }
        let sub = expand(a, mask & !(1 << j), memo);
        acc += entry * &sub;
    }
    memo.insert(mask, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{menage_board, power_matrix};
    use crate::value::from_i64;

    fn int(v: i64) -> ExactValue {
        from_i64(v)
    }

    #[test]
    fn empty_matrix_is_rejected() {
        let err = permanent_ryser(&WeightedMatrix::zero(0)).unwrap_err();
        assert_eq!(err.to_string(), "empty matrix");
        assert!(permanent_int(&BinaryMatrix::zero(0)).is_err());
        assert!(permanent_expansion(&WeightedMatrix::zero(0)).is_err());
    }

    #[test]
    fn oracle_limit_is_enforced() {
        let a = WeightedMatrix::zero(EXPANSION_ORACLE_LIMIT + 1);
        let err = permanent_expansion(&a).unwrap_err();
        assert_eq!(err.to_string(), "oracle limit: n = 13 exceeds expansion limit 12");
    }

    #[test]
    fn one_by_one() {
        let mut a = WeightedMatrix::zero(1);
        a.set(0, 0, int(7));
        assert_eq!(permanent_ryser(&a).unwrap(), int(7));
        assert_eq!(permanent_expansion(&a).unwrap(), int(7));
    }

    #[test]
    fn two_by_two_general() {
        // per [[a,b],[c,d]] = ad + bc.
        let a = WeightedMatrix::from_entries(
            2,
            vec![int(2), int(3), int(5), int(7)],
        );
        assert_eq!(permanent_ryser(&a).unwrap(), int(2 * 7 + 3 * 5));
        assert_eq!(permanent_expansion(&a).unwrap(), int(29));
    }

    #[test]
    fn all_ones_gives_factorial() {
        let mut expected: i64 = 1;
        for n in 1..=8u32 {
            expected *= n as i64;
            let a = BinaryMatrix::ones(n as usize);
            assert_eq!(permanent_int(&a).unwrap(), BigInt::from(expected));
            assert_eq!(permanent_ryser(&a.to_weighted()).unwrap(), int(expected));
            assert_eq!(permanent_expansion(&a.to_weighted()).unwrap(), int(expected));
        }
    }

    #[test]
    fn permutation_matrices_have_permanent_one() {
        for n in 1..=6 {
            for k in 0..n as i64 {
                let p = power_matrix(n, k);
                assert_eq!(permanent_int(&p).unwrap(), BigInt::one());
            }
        }
    }

    #[test]
    fn menage_boards_match_known_values() {
        // per(J − I − P) for n = 3..8: 1, 2, 13, 80, 579, 4738.
        let expected = [1i64, 2, 13, 80, 579, 4738];
        for (offset, &value) in expected.iter().enumerate() {
            let n = offset + 3;
            let b = menage_board(n);
            assert_eq!(permanent_int(&b).unwrap(), BigInt::from(value));
        }
    }

    #[test]
    fn rational_entries_are_exact() {
        // per [[1/2, 1/3], [1/5, 1/7]] = 1/14 + 1/15 = 29/210.
        let a = WeightedMatrix::from_entries(
            2,
            vec![
                crate::value::from_ratio(1, 2),
                crate::value::from_ratio(1, 3),
                crate::value::from_ratio(1, 5),
                crate::value::from_ratio(1, 7),
            ],
        );
        assert_eq!(permanent_ryser(&a).unwrap(), crate::value::from_ratio(29, 210));
        assert_eq!(permanent_expansion(&a).unwrap(), crate::value::from_ratio(29, 210));
    }

    #[test]
    fn i128_path_is_selected_and_exact() {
        // 21×21 all-ones pushes the overflow bound past 62 bits
        // (2^21 · 21^21 ≈ 2^113), so this runs in the i128 kernel.
        let a = BinaryMatrix::ones(21);
        let fact21: BigInt = (1..=21u64).map(BigInt::from).product();
        assert_eq!(permanent_int(&a).unwrap(), fact21);
    }

    #[test]
    fn big_kernel_matches_primitive_kernel() {
        // The arbitrary-precision kernel only dispatches above 126 bits,
        // where full runs are impractical, so validate it head-to-head
        // against the i64 kernel on small random matrices.
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(0x5EED_0002);
        for _ in 0..50 {
            let n = 1 + rng.next_below(7) as usize;
            let rows: Vec<u64> = (0..n).map(|_| rng.next_below(1 << n)).collect();
            let a = BinaryMatrix::from_rows(n, rows);
            let cols: Vec<u64> = {
                let t = a.transpose();
                (0..n).map(|j| t.row_bits(j)).collect()
            };
            assert_eq!(
                gray_permanent_big(&cols, n),
                BigInt::from(gray_permanent_i64(&cols, n))
            );
        }
    }

    #[test]
    fn ryser_agrees_with_expansion_on_random_matrices() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(0x5EED_0001);
        for _ in 0..200 {
            let n = 1 + rng.next_below(6) as usize;
            let mut a = WeightedMatrix::zero(n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, int(rng.next_range_i64(-3, 3)));
                }
            }
            assert_eq!(
                permanent_ryser(&a).unwrap(),
                permanent_expansion(&a).unwrap()
            );
        }
    }
}
