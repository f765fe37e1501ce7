//! Extremal values of the permanent over the 3-regular classes: the
//! Merriell-type maximum bound, the second-largest value, the Voorhoeve
//! lower bound, and closed-form maxima for weighted symmetric classes under
//! explicit side conditions — all decided in exact arithmetic, including
//! the comparisons against the irrational thresholds `a(3)^(1/3)` and
//! `θ = (2^(1/3) − 1)^(1/4)`.

use std::cmp::Ordering;

use num::{BigInt, One, Signed, Zero};

use permspec_core::{from_i64, from_ratio, ClassKind, ClassSpec, ExactValue};

use crate::sequences::a_general;
use crate::spectrum::{spectrum_weighted_attaining, Partition};
use crate::{LabError, Result};

fn rat_pow(base: &ExactValue, exp: i64) -> ExactValue {
    assert!(exp >= 0, "rat_pow expects a nonnegative exponent");
    let mut acc = ExactValue::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

// ---------------------------------------------------------------------------
// Binary-class extremal values
// ---------------------------------------------------------------------------

/// Maximum-permanent bound over the 3-regular binary class:
/// `6^((n−h)/3) · (3/2)^h` with `h = n mod 3`, as an exact rational
/// (9 at n = 4, 27/2 at n = 5, 36 at n = 6, …). This is the attained
/// maximum for every n ≥ 3 except n = 5, where no direct sum of one
/// size-4 block with another block of size ≥ 3 exists and the true
/// maximum is 13 < 27/2.
pub fn merriell_max(n: i64) -> Result<ExactValue> {
    if n < 3 {
        return Err(LabError::Domain(format!(
            "merriell_max requires n ≥ 3, got {n}"
        )));
    }
    let h = n % 3;
    Ok(rat_pow(&from_i64(6), (n - h) / 3) * rat_pow(&from_ratio(3, 2), h))
}

/// Second-largest permanent value over the 3-regular binary class for
/// `n ≡ 0 (mod 3)`: 20 at n = 6, 120 at n = 9, and `(9/16)·6^(n/3)` for
/// n ≥ 12. Other residues are an undefined case.
pub fn bolshakov_second(n: i64) -> Result<ExactValue> {
    if n % 3 != 0 {
        return Err(LabError::UndefinedCase(format!(
            "second-largest value is only described for n ≡ 0 (mod 3), got n = {n}"
        )));
    }
    if n < 6 {
        return Err(LabError::Domain(format!(
            "second-largest value requires n ≥ 6, got {n}"
        )));
    }
    Ok(match n {
        6 => from_i64(20),
        9 => from_i64(120),
        _ => from_ratio(9, 16) * rat_pow(&from_i64(6), n / 3),
    })
}

/// Lower bound on the permanent over the 3-regular binary class:
/// `6 · (4/3)^(n−3)`.
pub fn voorhoeve_bound(n: i64) -> Result<ExactValue> {
    if n < 3 {
        return Err(LabError::Domain(format!(
            "voorhoeve_bound requires n ≥ 3, got {n}"
        )));
    }
    Ok(from_i64(6) * rat_pow(&from_ratio(4, 3), n - 3))
}

// ---------------------------------------------------------------------------
// Exact comparisons against irrational thresholds
// ---------------------------------------------------------------------------

/// Floor of the real cube root of a nonnegative integer (binary search on
/// the bit length, so arbitrarily large inputs stay cheap).
fn icbrt_floor(v: &BigInt) -> BigInt {
    assert!(!v.is_negative(), "icbrt_floor expects a nonnegative integer");
    if v.is_zero() {
        return BigInt::zero();
    }
    let mut lo = BigInt::zero();
    let mut hi: BigInt = BigInt::one() << (v.bits() / 3 + 1);
    // Invariant: lo³ ≤ v < hi³.
    while &lo + 1u32 < hi {
        let mid: BigInt = (&lo + &hi) >> 1;
        if mid.pow(3) <= *v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// The exact integer cube root, if the argument is a perfect cube.
fn exact_icbrt(v: &BigInt) -> Option<BigInt> {
    let mut root = icbrt_floor(&v.abs());
    if v.is_negative() {
        root = -root;
    }
    if root.pow(3) == *v {
        Some(root)
    } else {
        None
    }
}

/// Exact rational cube root, if one exists (numerator and denominator of
/// the reduced fraction must both be perfect cubes).
fn rational_cbrt(v: &ExactValue) -> Option<ExactValue> {
    let rn = exact_icbrt(v.numer())?;
    let rd = exact_icbrt(v.denom())?;
    Some(ExactValue::new(rn, rd))
}

/// Rational bounds `lo < v^(1/3) < hi` with `hi = lo + 1`, for `v` that is
/// not a perfect rational cube.
fn cbrt_bracket(v: &ExactValue) -> (ExactValue, ExactValue) {
    if v.is_negative() {
        let (lo, hi) = cbrt_bracket(&-v.clone());
        return (-hi, -lo);
    }
    // For v ≥ 0, ⌊v^(1/3)⌋ = ⌊⌊v⌋^(1/3)⌋: no integer cube can sit strictly
    // between ⌊v⌋ and v.
    let k = icbrt_floor(&(v.numer() / v.denom()));
    (
        ExactValue::from(k.clone()),
        ExactValue::from(k + BigInt::one()),
    )
}

/// Compares a rational `q` with the real cube root of `v` (cubing is
/// strictly increasing on all of ℝ, so this is exact).
fn cmp_with_cbrt(q: &ExactValue, v: &ExactValue) -> Ordering {
    let cubed = rat_pow(q, 3);
    cubed.cmp(v)
}

/// Sign of `f(x) = x² − βx − c` at `x = v^(1/3)`, computed exactly.
///
/// When the cube root is rational, `f` is evaluated directly. Otherwise
/// the cube root is bracketed by rational bisection until the bracket
/// excludes the parabola's vertex `β/2` and `f` has a constant nonzero
/// sign on it; the irrational cube root can never coincide with a root of
/// the rational quadratic, so the loop terminates.
fn quadratic_sign_at_cbrt(v: &ExactValue, beta: &ExactValue, c: &ExactValue) -> Ordering {
    let f = |x: &ExactValue| -> ExactValue { &(x * x) - &(beta * x) - c };
    if let Some(root) = rational_cbrt(v) {
        return f(&root).cmp(&ExactValue::zero());
    }
    let (mut lo, mut hi) = cbrt_bracket(v);
    debug_assert!(cmp_with_cbrt(&lo, v) == Ordering::Less);
    debug_assert!(cmp_with_cbrt(&hi, v) == Ordering::Greater);
    let vertex = beta / from_i64(2);
    let half = from_ratio(1, 2);
    for _ in 0..100_000 {
        let vertex_outside = vertex <= lo || vertex >= hi;
        if vertex_outside {
            let sign_lo = f(&lo).cmp(&ExactValue::zero());
            let sign_hi = f(&hi).cmp(&ExactValue::zero());
            if sign_lo == sign_hi && sign_lo != Ordering::Equal {
                return sign_lo;
            }
        }
        let mid = (&lo + &hi) * &half;
        match cmp_with_cbrt(&mid, v) {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            Ordering::Equal => unreachable!("cube root was checked to be irrational"),
        }
    }
    unreachable!("bisection failed to separate the cube root from the quadratic's roots")
}

/// Compares `α` against `θ·γ` where `θ = (2^(1/3) − 1)^(1/4)`, exactly.
///
/// For `α ≥ 0` and `γ > 0`, the comparison `α ⋛ θγ` is equivalent to
/// `(α⁴ + γ⁴)³ ⋛ 2γ¹²` (raise to the 4th power, add `γ⁴`, cube), which is
/// a rational comparison. `Equal` never occurs for nonzero rational
/// inputs, since it would force a rational cube root of 2.
pub fn theta_compare(alpha: &ExactValue, gamma: &ExactValue) -> Ordering {
    let a4 = rat_pow(alpha, 4);
    let g4 = rat_pow(gamma, 4);
    let lhs = rat_pow(&(&a4 + &g4), 3);
    let rhs = from_i64(2) * rat_pow(&g4, 3);
    lhs.cmp(&rhs)
}

// ---------------------------------------------------------------------------
// Side conditions for the closed-form maxima
// ---------------------------------------------------------------------------

/// Evaluates the four side conditions under which the maximum over the
/// weighted symmetric class has the closed form `a(3)^(n/3)` for
/// `n ≡ 0 (mod 3)`: two triangle inequalities, the power inequality
/// `a(4)³ ≤ a(3)⁴`, and `αγ + β·a(3)^(1/3) ≤ a(3)^(2/3)` — the last one
/// decided exactly despite the irrational cube root.
pub fn check_theorem4_conditions(
    alpha: &ExactValue,
    beta: &ExactValue,
    gamma: &ExactValue,
) -> Result<Vec<(String, bool)>> {
    let zero = ExactValue::zero();
    let a3 = a_general(alpha, beta, gamma, 3)?;
    let a4 = a_general(alpha, beta, gamma, 4)?;
    let triangle_alpha = zero <= *alpha && *alpha <= beta + gamma;
    let triangle_gamma = zero <= *gamma && *gamma <= alpha + beta;
    let power = rat_pow(&a4, 3) <= rat_pow(&a3, 4);
    // αγ + β·x ≤ x² at x = a(3)^(1/3)  ⟺  x² − βx − αγ ≥ 0 there.
    let cube_root = quadratic_sign_at_cbrt(&a3, beta, &(alpha * gamma)) != Ordering::Less;
    Ok(vec![
        ("0 ≤ α ≤ β+γ".into(), triangle_alpha),
        ("0 ≤ γ ≤ α+β".into(), triangle_gamma),
        ("a(4)³ ≤ a(3)⁴".into(), power),
        ("αγ + β·a(3)^(1/3) ≤ a(3)^(2/3)".into(), cube_root),
    ])
}

// ---------------------------------------------------------------------------
// Maximum over the weighted symmetric class
// ---------------------------------------------------------------------------

/// The maximum permanent over a weighted symmetric class, found by exact
/// search over partition products, together with every attaining partition
/// and the closed-form side conditions that were checked.
#[derive(Clone, Debug)]
pub struct ExtremalReport {
    pub n: i64,
    pub class: ClassSpec,
    pub max_value: ExactValue,
    /// Partitions whose product attains the maximum, in enumeration order.
    pub attaining_partitions: Vec<Partition>,
    /// Number of maximizing matrices up to row/column permutation
    /// (= number of attaining partitions).
    pub maximizer_count: usize,
    /// Named side conditions with their truth values: the four closed-form
    /// preconditions, divisibility and weight-shape tests, and one entry
    /// per applicable closed form.
    pub conditions_checked: Vec<(String, bool)>,
}

/// Computes the true maximum of the permanent over the weighted symmetric
/// class by searching all partition products, and annotates which
/// closed-form descriptions apply.
///
/// Annotated closed forms (verified by the caller or by tests, never
/// assumed): `a(3)^(n/3)` under the four side conditions with 3 | n;
/// for weights of the shape β = γ−α with γ > 0: `2^(n/3)·γ^n` when
/// 0 ≤ α ≤ θγ and 3 | n, and `(2(α⁴+γ⁴))^(n/4)` when α ≥ θγ and 4 | n,
/// with `θ = (2^(1/3)−1)^(1/4)`. At the exact boundary α = θγ (not
/// representable in rationals) both forms coincide for 12 | n and the
/// class has n/12 + 1 maximizing partitions; the report exposes the count
/// through `maximizer_count`.
pub fn max_weighted_symmetric(
    n: i64,
    alpha: &ExactValue,
    beta: &ExactValue,
    gamma: &ExactValue,
) -> Result<ExtremalReport> {
    let class = ClassSpec::weighted(
        ClassKind::LambdaABGSym,
        alpha.clone(),
        beta.clone(),
        gamma.clone(),
    )?;
    let detailed = spectrum_weighted_attaining(n, alpha, beta, gamma)?;
    let (max_value, attaining_partitions) = detailed
        .into_iter()
        .next_back()
        .expect("n ≥ 3 guarantees at least one partition");

    let mut conditions = check_theorem4_conditions(alpha, beta, gamma)?;
    let closed_form_a3 = conditions.iter().all(|(_, ok)| *ok) && n % 3 == 0;

    let zero = ExactValue::zero();
    let shifted = *beta == gamma - alpha;
    let oriented = *gamma > zero && *alpha >= zero;
    let below_theta = oriented && theta_compare(alpha, gamma) != Ordering::Greater;
    let above_theta = oriented && theta_compare(alpha, gamma) != Ordering::Less;
    conditions.push(("n ≡ 0 (mod 3)".into(), n % 3 == 0));
    conditions.push(("n ≡ 0 (mod 4)".into(), n % 4 == 0));
    conditions.push(("β = γ−α".into(), shifted));
    conditions.push(("0 ≤ α ≤ θγ".into(), shifted && below_theta));
    conditions.push(("α ≥ θγ".into(), shifted && above_theta));
    conditions.push(("closed form a(3)^(n/3) applies".into(), closed_form_a3));
    conditions.push((
        "closed form 2^(n/3)·γ^n applies".into(),
        shifted && below_theta && n % 3 == 0,
    ));
    conditions.push((
        "closed form (2(α⁴+γ⁴))^(n/4) applies".into(),
        shifted && above_theta && n % 4 == 0,
    ));

    Ok(ExtremalReport {
        n,
        class,
        max_value,
        maximizer_count: attaining_partitions.len(),
        attaining_partitions,
        conditions_checked: conditions,
    })
}
