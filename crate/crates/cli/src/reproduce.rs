//! The one-command reproduction checklist: every published value the
//! workspace pins — spectra, sequence tables, ranked coefficients,
//! extremal values, parity censuses — recomputed from scratch and compared
//! exactly. Each check is keyed by the equation or example number of the
//! source table, so the report reads as a line-by-line audit.
//!
//! Four checks need the n = 8 exhaustive sweeps (tens of millions of
//! matrices; several minutes single-threaded). `--quick` reports those as
//! SKIP rather than substituting weaker variants: running the ranked
//! general tables without the size-8 spectrum, for example, would change
//! the blocker set and certified counts, which is a different claim.

use std::collections::BTreeMap;

use num::BigInt;

use permspec_core::{
    decompose_components, format_exact, from_i64, from_ratio, is_class_member, menage_board,
    permanent_int, permanent_ryser, power_matrix, BinaryMatrix, ClassKind, ClassSpec, ExactValue,
};
use permspec_lab::circulant::{canonical_classes, circulant_matrix, circulant_spectrum};
use permspec_lab::enumerate::{brute_spectrum, indecomposable_spectrum, mci_check};
use permspec_lab::extremal::{check_theorem4_conditions, max_weighted_symmetric, merriell_max};
use permspec_lab::parity::{circulant_parity_census, parity_det_oracle, parity_ryser, testing_sequence, Parity};
use permspec_lab::sequences::{
    a_general, a_seq, a_seq_closed, asymptotic_estimate, count_lambda3, count_lambda3_diag,
    menage_u, subfactorial, CountFamily,
};
use permspec_lab::spectrum::{build_cycle_type_matrix, partitions, spectrum_weighted, Partition, Spectrum};
use permspec_lab::upper::{table_fixture, upper_general, upper_symmetric, TableKind};
use serde_json::{json, Value};

/// A check either passes with a summary of what was verified or fails
/// with a description of the first mismatch.
type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !($cond) {
            return Err(format!($($arg)*));
        }
    };
}

fn try_run<T, E: std::fmt::Display>(label: &str, result: Result<T, E>) -> Result<T, String> {
    result.map_err(|e| format!("{label}: {e}"))
}

fn int(v: i64) -> ExactValue {
    from_i64(v)
}

fn ints(values: &[i64]) -> Vec<ExactValue> {
    values.iter().map(|&v| int(v)).collect()
}

fn rat(num: i64, den: i64) -> ExactValue {
    from_ratio(num, den)
}

fn int_pow(base: i64, exp: u32) -> ExactValue {
    ExactValue::from(BigInt::from(base).pow(exp))
}

fn six_pow(exp: u32) -> ExactValue {
    int_pow(6, exp)
}

fn join(values: &[ExactValue]) -> String {
    values
        .iter()
        .map(format_exact)
        .collect::<Vec<_>>()
        .join(", ")
}

// ---------------------------------------------------------------------------
// Shared slow artifacts
// ---------------------------------------------------------------------------

/// Results too expensive to recompute per check: the indecomposable
/// spectra for sizes 3–8, built lazily by the first check that needs them.
struct Shared {
    spectra: Option<BTreeMap<usize, Spectrum>>,
}

impl Shared {
    fn small_spectra(&mut self) -> Result<&BTreeMap<usize, Spectrum>, String> {
        if self.spectra.is_none() {
            let mut map = BTreeMap::new();
            for size in 3..=8 {
                let (spectrum, _) =
                    try_run("indecomposable_spectrum", indecomposable_spectrum(size))?;
                map.insert(size, spectrum);
            }
            self.spectra = Some(map);
        }
        Ok(self.spectra.as_ref().expect("populated above"))
    }
}

struct Check {
    key: &'static str,
    /// Needs an n = 8 exhaustive sweep; skipped under `--quick`.
    slow: bool,
    run: fn(&mut Shared) -> Outcome,
}

/// Runs the checklist and returns the report plus whether every executed
/// check passed (skipped checks do not count against success).
pub fn run(quick: bool) -> (Value, bool) {
    let mut shared = Shared { spectra: None };
    let mut rows = Vec::new();
    let (mut passed, mut failed, mut skipped) = (0u32, 0u32, 0u32);
    for check in checks() {
        let (status, detail) = if quick && check.slow {
            skipped += 1;
            (
                "SKIP",
                "needs the n = 8 exhaustive sweeps; rerun without --quick".to_string(),
            )
        } else {
            match (check.run)(&mut shared) {
                Ok(detail) => {
                    passed += 1;
                    ("PASS", detail)
                }
                Err(detail) => {
                    failed += 1;
                    ("FAIL", detail)
                }
            }
        };
        rows.push(json!({ "check": check.key, "detail": detail, "result": status }));
    }
    let report = json!({
        "mode": if quick { "quick" } else { "full" },
        "checks": rows,
        "passed": passed,
        "failed": failed,
        "skipped": skipped,
    });
    (report, failed == 0)
}

fn checks() -> Vec<Check> {
    vec![
        Check { key: "Eq (2.5)", slow: false, run: eq_2_5 },
        Check { key: "Eq (2.6)", slow: false, run: eq_2_6 },
        Check { key: "Eq (2.10)", slow: false, run: eq_2_10 },
        Check { key: "Eq (2.12)", slow: false, run: eq_2_12 },
        Check { key: "Eq (2.15)", slow: false, run: eq_2_15 },
        Check { key: "Eq (2.17) n=5", slow: false, run: eq_2_17_n5 },
        Check { key: "Eq (2.17) n=6", slow: false, run: eq_2_17_n6 },
        Check { key: "Eq (2.17) n=7", slow: false, run: eq_2_17_n7 },
        Check { key: "Eq (2.17) n=8", slow: true, run: eq_2_17_n8 },
        Check { key: "Eq (3.11)", slow: false, run: eq_3_11 },
        Check { key: "Eqs (6.6)-(6.15)", slow: false, run: eq_6_tables },
        Check { key: "Eq (7.1)", slow: true, run: eq_7_1 },
        Check { key: "Eq (8.6)", slow: true, run: eq_8_6 },
        Check { key: "Eqs (8.7)-(8.9)", slow: true, run: eq_8_tables },
        Check { key: "Example 1", slow: false, run: example_1 },
        Check { key: "Example 2", slow: false, run: example_2 },
        Check { key: "Example 3", slow: false, run: example_3 },
        Check { key: "Example 5", slow: false, run: example_5 },
        Check { key: "Example 6", slow: false, run: example_6 },
        Check { key: "Example 7", slow: false, run: example_7 },
        Check { key: "Theorem 4", slow: false, run: theorem_4 },
        Check { key: "Lemma 6", slow: false, run: lemma_6 },
    ]
}

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

fn eq_2_5(_: &mut Shared) -> Outcome {
    let seed = [1i64, 0, 1, 2, 9, 44, 265, 1854];
    for (n, &want) in seed.iter().enumerate() {
        let got = try_run("subfactorial", subfactorial(n as i64))?;
        ensure!(got == int(want), "D({n}) = {}, expected {want}", format_exact(&got));
    }
    // Independent oracle: D_n is the permanent of the all-ones matrix with
    // the diagonal removed.
    for n in 3..=7usize {
        let full = (1u64 << n) - 1;
        let rows = (0..n).map(|i| full ^ (1 << i)).collect();
        let board = BinaryMatrix::from_rows(n, rows);
        let per = try_run("permanent_int", permanent_int(&board))?;
        let formula = try_run("subfactorial", subfactorial(n as i64))?;
        ensure!(
            ExactValue::from(per) == formula,
            "per(J-I) disagrees with D({n})"
        );
    }
    Ok("D(0..=7) = 1, 0, 1, 2, 9, 44, 265, 1854, and per(J-I) matches for n = 3..=7".into())
}

fn eq_2_6(_: &mut Shared) -> Outcome {
    for (n, want) in [(0i64, 1i64), (1, -1), (2, 0)] {
        let got = try_run("menage_u", menage_u(n))?;
        ensure!(got == int(want), "U({n}) = {}, expected {want}", format_exact(&got));
    }
    for n in 3..=8usize {
        let board = menage_board(n);
        let per = try_run("permanent_int", permanent_int(&board))?;
        let formula = try_run("menage_u", menage_u(n as i64))?;
        ensure!(
            ExactValue::from(per) == formula,
            "per(J-I-P) disagrees with U({n})"
        );
    }
    Ok("U(2) = 0; U(3..=8) = 1, 2, 13, 80, 579, 4738 match the board permanents".into())
}

fn eq_2_10(_: &mut Shared) -> Outcome {
    let full_exact = permspec_core::to_f64_lossy(&try_run("count_lambda3", count_lambda3(5))?);
    let full_est = try_run(
        "asymptotic_estimate",
        asymptotic_estimate(CountFamily::Lambda3, 5),
    )?;
    let diag_exact =
        permspec_core::to_f64_lossy(&try_run("count_lambda3_diag", count_lambda3_diag(5))?);
    let diag_est = try_run(
        "asymptotic_estimate",
        asymptotic_estimate(CountFamily::Lambda3Diag, 5),
    )?;
    let full_ratio = full_est / full_exact;
    let diag_ratio = diag_est / diag_exact;
    ensure!(
        (0.5..=2.0).contains(&full_ratio),
        "full-class estimate off by more than a factor of 2 at n = 5 (ratio {full_ratio:.3})"
    );
    ensure!(
        (0.5..=2.0).contains(&diag_ratio),
        "diagonal-class estimate off by more than a factor of 2 at n = 5 (ratio {diag_ratio:.3})"
    );
    Ok(format!(
        "growth estimates within a factor of 2 at n = 5 (ratios {full_ratio:.3} and {diag_ratio:.3})"
    ))
}

fn eq_2_12(_: &mut Shared) -> Outcome {
    let expected = [6i64, 9, 13, 20, 31];
    for (offset, &want) in expected.iter().enumerate() {
        let n = offset as i64 + 3;
        let got = try_run("a_seq", a_seq(n))?;
        ensure!(got == int(want), "a({n}) = {}, expected {want}", format_exact(&got));
    }
    for n in 3..=40 {
        let rec = try_run("a_seq", a_seq(n))?;
        let closed = try_run("a_seq_closed", a_seq_closed(n))?;
        ensure!(rec == closed, "recursion and closed form split at n = {n}");
    }
    Ok("a(3..=7) = 6, 9, 13, 20, 31; recursion equals the closed form through n = 40".into())
}

fn eq_2_15(_: &mut Shared) -> Outcome {
    let cases = [(4i64, int(9)), (5, rat(27, 2)), (6, int(36)), (7, int(54)), (8, int(81))];
    for (n, want) in cases {
        let got = try_run("merriell_max", merriell_max(n))?;
        ensure!(
            got == want,
            "maximum bound at n = {n}: got {}, expected {}",
            format_exact(&got),
            format_exact(&want)
        );
    }
    Ok("6^((n-h)/3)*(3/2)^h = 9, 27/2, 36, 54, 81 for n = 4..=8 \
        (the n = 5 bound is famously unattained; the true maximum is 13)"
        .into())
}

// ---------------------------------------------------------------------------
// Exhaustive spectra
// ---------------------------------------------------------------------------

fn bolshakov_row(n: usize, expected: &[i64]) -> Outcome {
    let class = try_run("class", ClassSpec::binary(ClassKind::Lambda3))?;
    let got = try_run("brute_spectrum", brute_spectrum(&class, n))?;
    let want = ints(expected);
    ensure!(
        got.values() == want.as_slice(),
        "spectrum at n = {n}: got {{{}}}, expected {{{}}}",
        join(got.values()),
        join(&want)
    );
    Ok(format!(
        "{} values: {{{}}}",
        want.len(),
        join(got.values())
    ))
}

fn eq_2_17_n5(_: &mut Shared) -> Outcome {
    bolshakov_row(5, &[12, 13])
}

fn eq_2_17_n6(_: &mut Shared) -> Outcome {
    bolshakov_row(6, &[17, 18, 20, 36])
}

fn eq_2_17_n7(_: &mut Shared) -> Outcome {
    bolshakov_row(7, &[24, 25, 26, 27, 30, 31, 32, 54])
}

fn eq_2_17_n8(_: &mut Shared) -> Outcome {
    bolshakov_row(
        8,
        &[33, 34, 35, 36, 37, 38, 39, 40, 41, 42, 44, 45, 48, 49, 52, 72, 78, 81],
    )
}

// ---------------------------------------------------------------------------
// Weighted circulant structure
// ---------------------------------------------------------------------------

fn eq_3_11(_: &mut Shared) -> Outcome {
    let (alpha, beta, gamma) = (int(-1), int(3), int(2));
    let single = try_run("partition", Partition::new(vec![7], 3))?;
    let built = try_run(
        "build_cycle_type_matrix",
        build_cycle_type_matrix(&single, &alpha, &beta, &gamma),
    )?;
    // Independent construction of the same member.
    let direct = power_matrix(7, -1)
        .to_weighted()
        .scale(&alpha)
        .add(&BinaryMatrix::identity(7).to_weighted().scale(&beta))
        .add(&power_matrix(7, 1).to_weighted().scale(&gamma));
    let per_built = try_run("permanent_ryser", permanent_ryser(&built))?;
    let per_direct = try_run("permanent_ryser", permanent_ryser(&direct))?;
    let formula = try_run("a_general", a_general(&alpha, &beta, &gamma, 7))?;
    ensure!(per_built == per_direct, "cycle-type and direct constructions disagree");
    ensure!(
        per_built == formula && formula == int(256),
        "per(-S^(-1) + 3I + 2S) at n = 7: got {}, expected 256",
        format_exact(&per_built)
    );
    let spec = try_run(
        "class",
        ClassSpec::weighted(ClassKind::LambdaABGSym, alpha.clone(), beta.clone(), gamma.clone()),
    )?;
    ensure!(is_class_member(&built, &spec), "constructed matrix fails class membership");
    let one = int(1);
    let two_cycles = try_run("partition", Partition::new(vec![4, 3], 3))?;
    let block = try_run(
        "build_cycle_type_matrix",
        build_cycle_type_matrix(&two_cycles, &one, &one, &one),
    )?;
    let per_block = try_run("permanent_ryser", permanent_ryser(&block))?;
    ensure!(
        per_block == int(54),
        "per of the 4+3 cycle type at weights (1,1,1): got {}, expected 54",
        format_exact(&per_block)
    );
    Ok("per(aS^(-1) + bI + cS) = 256 at n = 7, weights (-1,3,2), by two constructions; \
        the 4+3 cycle type at (1,1,1) gives 6*9 = 54"
        .into())
}

// ---------------------------------------------------------------------------
// Ranked magnitude tables
// ---------------------------------------------------------------------------

fn eq_6_tables(_: &mut Shared) -> Outcome {
    // Residue 0, listed at (n, t) = (36, 3), scale 6^12.
    let table0 = try_run("upper_symmetric", upper_symmetric(36, 3))?;
    let values0 = table0.values();
    ensure!(values0.len() >= 10, "residue-0 listing has fewer than 10 entries");
    for rank in 1..=10 {
        let coeff = try_run("table_fixture", table_fixture(TableKind::SymmetricRanked, 0, rank))?;
        ensure!(
            values0[rank - 1] == coeff * six_pow(12),
            "residue 0 rank {rank} disagrees with the printed coefficient"
        );
    }
    // Residue 1, listed at (28, 2), scale 6^9. The printed ten-rank table
    // passes over the genuine spectrum value (49/96)*6^9 between its ranks
    // 8 and 9, so printed ranks 9 and 10 sit one position later in the
    // computed listing.
    let table1 = try_run("upper_symmetric", upper_symmetric(28, 2))?;
    let values1 = table1.values();
    ensure!(values1.len() >= 11, "residue-1 listing has fewer than 11 entries");
    for rank in 1..=10 {
        let index = if rank <= 8 { rank - 1 } else { rank };
        let coeff = try_run("table_fixture", table_fixture(TableKind::SymmetricRanked, 1, rank))?;
        ensure!(
            values1[index] == coeff * six_pow(9),
            "residue 1 printed rank {rank} disagrees with the computed listing"
        );
    }
    ensure!(
        values1[8] == rat(49, 96) * six_pow(9),
        "expected the passed-over value (49/96)*6^9 at computed position 9"
    );
    // Residue 2, listed at (32, 2), scale 6^10.
    let table2 = try_run("upper_symmetric", upper_symmetric(32, 2))?;
    let values2 = table2.values();
    ensure!(values2.len() >= 10, "residue-2 listing has fewer than 10 entries");
    for rank in 1..=10 {
        let coeff = try_run("table_fixture", table_fixture(TableKind::SymmetricRanked, 2, rank))?;
        ensure!(
            values2[rank - 1] == coeff * six_pow(10),
            "residue 2 rank {rank} disagrees with the printed coefficient"
        );
    }
    Ok("all 30 printed symmetric coefficients reproduced; the residue-1 table \
        passes over the genuine value (49/96)*6^9 between its ranks 8 and 9"
        .into())
}

fn eq_7_1(_: &mut Shared) -> Outcome {
    let report = try_run("mci_check", mci_check(8))?;
    ensure!(
        report.violations.is_empty(),
        "submultiplicativity violations at pairs {:?}",
        report.violations
    );
    ensure!(
        report.pair_checks.iter().all(|&(_, _, ok)| ok),
        "a pair check failed without being recorded as a violation"
    );
    let expected: Vec<(i64, ExactValue)> = [(3i64, 6i64), (4, 9), (5, 13), (6, 20), (7, 32), (8, 52)]
        .iter()
        .map(|&(n, v)| (n, int(v)))
        .collect();
    ensure!(
        report.mu == expected,
        "indecomposable maxima: got {:?}",
        report.mu.iter().map(|(n, v)| (*n, format_exact(v))).collect::<Vec<_>>()
    );
    ensure!(
        report.sqrt_bound_checks.iter().all(|&(_, ok)| ok),
        "the square-root bound failed somewhere in 4..=8"
    );
    Ok("mu1(3..=8) = 6, 9, 13, 20, 32, 52; every pairwise product dominates, \
        mu1(n) <= 3^(n/2) throughout, and mu1(8) = 52 <= mu1(4)^2 = 81"
        .into())
}

fn eq_8_6(shared: &mut Shared) -> Outcome {
    let spectra = shared.small_spectra()?;
    let report = try_run("upper_general", upper_general(14, 0, spectra))?;
    ensure!(
        report.values() == vec![int(2916)],
        "expected the singleton {{2916}}, got {{{}}}",
        join(&report.values())
    );
    ensure!(report.certified_count == 1, "singleton should be certified");
    ensure!(report.blockers.is_empty(), "unexpected blockers at (n, t) = (14, 0)");
    ensure!(
        report.entries[0].sources.len() == 1
            && report.entries[0].sources[0].0.parts() == [4, 4],
        "the singleton should come from the 4+4 family alone"
    );
    Ok("the (n, t) = (14, 0) listing is exactly {81*6^2} = {2916}, sourced from 4+4, \
        with no blockers"
        .into())
}

fn eq_8_tables(shared: &mut Shared) -> Outcome {
    let spectra = shared.small_spectra()?;
    // Residue 0 at (24, 2): four ranks, scale 6^8, fully certified.
    let table0 = try_run("upper_general", upper_general(24, 2, spectra))?;
    let values0 = table0.values();
    ensure!(values0.len() >= 4, "residue-0 general listing has fewer than 4 entries");
    for rank in 1..=4 {
        let coeff = try_run("table_fixture", table_fixture(TableKind::GeneralRanked, 0, rank))?;
        ensure!(
            values0[rank - 1] == coeff * six_pow(8),
            "general residue 0 rank {rank} disagrees with the printed coefficient"
        );
    }
    ensure!(table0.certified_count == 4, "residue-0 ranks should all be certified");
    ensure!(table0.conditional_on_mci, "general listings are conditional");
    // Residue 1 at (28, 2): seven printed ranks, scale 6^9. Printed rank 6
    // reads 13/15, which cannot be a permanent — (13/15)*6^9 is not an
    // integer — so it is a misprint for the computed 13/16. The exact
    // certification rule also stops at rank 6, because that value ties the
    // largest blocker ceiling.
    let table1 = try_run("upper_general", upper_general(28, 2, spectra))?;
    let values1 = table1.values();
    ensure!(values1.len() >= 7, "residue-1 general listing has fewer than 7 entries");
    for rank in [1usize, 2, 3, 4, 5, 7] {
        let coeff = try_run("table_fixture", table_fixture(TableKind::GeneralRanked, 1, rank))?;
        ensure!(
            values1[rank - 1] == coeff * six_pow(9),
            "general residue 1 rank {rank} disagrees with the printed coefficient"
        );
    }
    let printed = try_run("table_fixture", table_fixture(TableKind::GeneralRanked, 1, 6))?;
    ensure!(printed == rat(13, 15), "printed rank-6 coefficient should read 13/15");
    ensure!(
        !(printed * six_pow(9)).is_integer(),
        "(13/15)*6^9 should not be an integer"
    );
    let corrected = rat(13, 16) * six_pow(9);
    ensure!(
        values1[5] == corrected && corrected.is_integer(),
        "computed rank 6 should be the integer (13/16)*6^9"
    );
    ensure!(
        table1.certified_count == 6,
        "exact certification should stop at rank 6, got {}",
        table1.certified_count
    );
    // Residue 2 at (32, 2): eleven ranks, scale 6^10, fully certified.
    let table2 = try_run("upper_general", upper_general(32, 2, spectra))?;
    let values2 = table2.values();
    ensure!(values2.len() >= 11, "residue-2 general listing has fewer than 11 entries");
    for rank in 1..=11 {
        let coeff = try_run("table_fixture", table_fixture(TableKind::GeneralRanked, 2, rank))?;
        ensure!(
            values2[rank - 1] == coeff * six_pow(10),
            "general residue 2 rank {rank} disagrees with the printed coefficient"
        );
    }
    ensure!(table2.certified_count == 11, "residue-2 ranks should all be certified");
    Ok("4 + 7 + 11 general coefficients reproduced; printed residue-1 rank 6 reads \
        13/15, provably a misprint for 13/16 ((13/15)*6^9 is no integer), and exact \
        certification stops at rank 6 there rather than the printed 7"
        .into())
}

// ---------------------------------------------------------------------------
// Worked weighted-class examples
// ---------------------------------------------------------------------------

fn example_1(_: &mut Shared) -> Outcome {
    let (alpha, beta, gamma) = (int(-1), int(3), int(2));
    let a3 = try_run("a_general", a_general(&alpha, &beta, &gamma, 3))?;
    let a4 = try_run("a_general", a_general(&alpha, &beta, &gamma, 4))?;
    ensure!(a3 == int(16), "a(3) at (-1,3,2): got {}, expected 16", format_exact(&a3));
    ensure!(a4 == int(34), "a(4) at (-1,3,2): got {}, expected 34", format_exact(&a4));
    for n in [3i64, 5, 7, 9, 11, 13] {
        let got = try_run("a_general", a_general(&alpha, &beta, &gamma, n))?;
        ensure!(
            got == int_pow(2, n as u32 + 1),
            "odd-n closed form 2^(n+1) fails at n = {n}"
        );
    }
    let parts: Vec<String> = partitions(11, 3).iter().map(Partition::display).collect();
    let mut sorted = parts.clone();
    sorted.sort();
    let mut expected = vec!["11", "8+3", "7+4", "6+5", "5+3+3", "4+4+3"];
    expected.sort_unstable();
    ensure!(
        sorted == expected,
        "partitions of 11 with parts >= 3: got {parts:?}"
    );
    let spectrum = try_run("spectrum_weighted", spectrum_weighted(11, &alpha, &beta, &gamma))?;
    let want = ints(&[4096, 8224, 8320, 8704, 16384, 18496]);
    ensure!(
        spectrum.values() == want.as_slice(),
        "spectrum at (11, -1, 3, 2): got {{{}}}",
        join(spectrum.values())
    );
    Ok("a(3) = 16, a(4) = 34, a(n) = 2^(n+1) for odd n <= 13; the six partitions of 11 \
        give {4096, 8224, 8320, 8704, 16384, 18496}"
        .into())
}

fn example_2(_: &mut Shared) -> Outcome {
    let (alpha, beta, gamma) = (int(-1), int(2), int(1));
    for n in 3..=16 {
        let got = try_run("a_general", a_general(&alpha, &beta, &gamma, n))?;
        let want = if n % 2 == 1 { int(2) } else { int(4) };
        ensure!(
            got == want,
            "a({n}) at (-1,2,1): got {}, expected {}",
            format_exact(&got),
            format_exact(&want)
        );
    }
    for n in [5i64, 7, 9, 11, 13] {
        let spectrum = try_run("spectrum_weighted", spectrum_weighted(n, &alpha, &beta, &gamma))?;
        let want: Vec<ExactValue> = (0..=(n - 3) / 4)
            .map(|k| int(2) * int_pow(4, k as u32))
            .collect();
        ensure!(
            spectrum.values() == want.as_slice(),
            "odd spectrum at n = {n}: got {{{}}}, expected {{{}}}",
            join(spectrum.values()),
            join(&want)
        );
    }
    for n in [6i64, 8, 10, 12] {
        let spectrum = try_run("spectrum_weighted", spectrum_weighted(n, &alpha, &beta, &gamma))?;
        let want: Vec<ExactValue> = (1..=n / 4).map(|k| int_pow(4, k as u32)).collect();
        ensure!(
            spectrum.values() == want.as_slice(),
            "even spectrum at n = {n}: got {{{}}}, expected {{{}}}",
            join(spectrum.values()),
            join(&want)
        );
    }
    Ok("at (-1,2,1): a(n) alternates 2, 4; spectra are {2*4^k : k <= (n-3)/4} for odd n \
        and {4^k : 1 <= k <= n/4} for even n, checked through n = 13"
        .into())
}

fn example_3(_: &mut Shared) -> Outcome {
    let (alpha, beta, gamma) = (int(-1), int(1), int(1));
    for n in 3..=18 {
        let got = try_run("a_general", a_general(&alpha, &beta, &gamma, n))?;
        let want = match n % 6 {
            0 => int(4),
            3 => int(-2),
            _ => int(1),
        };
        ensure!(
            got == want,
            "a({n}) at (-1,1,1): got {}, expected {}",
            format_exact(&got),
            format_exact(&want)
        );
    }
    let six = try_run("spectrum_weighted", spectrum_weighted(6, &alpha, &beta, &gamma))?;
    ensure!(
        six.values() == ints(&[4]).as_slice(),
        "spectrum at n = 6: got {{{}}}",
        join(six.values())
    );
    for n in [9i64, 12, 15] {
        let spectrum = try_run("spectrum_weighted", spectrum_weighted(n, &alpha, &beta, &gamma))?;
        let mut want: Vec<ExactValue> = (0..=(n - 6) / 3)
            .map(|k| int_pow(-2, k as u32))
            .collect();
        want.push(int_pow(-2, (n / 3) as u32));
        want.sort();
        ensure!(
            spectrum.values() == want.as_slice(),
            "spectrum at n = {n}: got {{{}}}, expected {{{}}}",
            join(spectrum.values()),
            join(&want)
        );
        let omitted = int_pow(-2, ((n - 3) / 3) as u32);
        ensure!(
            !spectrum.contains(&omitted),
            "the value (-2)^((n-3)/3) = {} should be omitted at n = {n}",
            format_exact(&omitted)
        );
    }
    Ok("at (-1,1,1): a(n) follows the 4 / -2 / 1 residue pattern; for n = 9, 12, 15 the \
        spectrum omits exactly (-2)^((n-3)/3); at n = 6 it is {4} (the printed form's \
        extra value 1 has no attaining partition that small)"
        .into())
}

// ---------------------------------------------------------------------------
// Circulant examples
// ---------------------------------------------------------------------------

fn circulant_permanent(n: usize, offsets: [usize; 3]) -> Result<ExactValue, String> {
    let matrix = try_run("circulant_matrix", circulant_matrix(n, &offsets))?;
    let per = try_run("permanent_int", permanent_int(&matrix))?;
    Ok(ExactValue::from(per))
}

fn example_5(_: &mut Shared) -> Outcome {
    let first = circulant_permanent(5, [0, 1, 2])?;
    let second = circulant_permanent(5, [0, 1, 3])?;
    ensure!(
        first == int(13) && second == int(13),
        "per(I+P+P^2) and per(I+P+P^3) at n = 5: got {}, {}",
        format_exact(&first),
        format_exact(&second)
    );
    let classes = try_run("canonical_classes", canonical_classes(5, 3))?;
    ensure!(classes.len() == 2, "expected 2 incongruent classes at n = 5, got {}", classes.len());
    let spectrum = try_run("circulant_spectrum", circulant_spectrum(5))?;
    ensure!(
        spectrum.values() == ints(&[13]).as_slice(),
        "circulant spectrum at n = 5: got {{{}}}",
        join(spectrum.values())
    );
    let matrix = try_run("circulant_matrix", circulant_matrix(5, &[0, 1, 2]))?;
    let parity = try_run("parity_ryser", parity_ryser(&matrix))?;
    ensure!(parity.parity == Parity::Odd, "13 should register as odd");
    Ok("per(I+P+P^2) = per(I+P+P^3) = 13; two incongruent offset classes; \
        circulant spectrum {13}; parity check agrees"
        .into())
}

fn example_6(_: &mut Shared) -> Outcome {
    let cases = [([0usize, 1, 2], 20i64), ([0, 1, 3], 17), ([0, 2, 4], 36)];
    for (offsets, want) in cases {
        let got = circulant_permanent(6, offsets)?;
        ensure!(
            got == int(want),
            "per at offsets {offsets:?}: got {}, expected {want}",
            format_exact(&got)
        );
    }
    let classes = try_run("canonical_classes", canonical_classes(6, 3))?;
    ensure!(classes.len() == 3, "expected 3 incongruent classes at n = 6, got {}", classes.len());
    let spectrum = try_run("circulant_spectrum", circulant_spectrum(6))?;
    ensure!(
        spectrum.values() == ints(&[17, 20, 36]).as_slice(),
        "circulant spectrum at n = 6: got {{{}}}",
        join(spectrum.values())
    );
    // I + P^2 + P^4 splits into two 3x3 blocks: 36 = 6 * 6.
    let decomposable = try_run("circulant_matrix", circulant_matrix(6, &[0, 2, 4]))?;
    let blocks = decompose_components(&decomposable.to_weighted());
    ensure!(blocks.len() == 2, "I+P^2+P^4 should split into 2 components, got {}", blocks.len());
    for block in &blocks {
        let per = try_run("permanent_ryser", permanent_ryser(block))?;
        ensure!(per == int(6), "each component should have permanent 6");
    }
    let odd_member = try_run("circulant_matrix", circulant_matrix(6, &[0, 1, 3]))?;
    let parity = try_run("parity_ryser", parity_ryser(&odd_member))?;
    ensure!(parity.parity == Parity::Odd, "17 should register as odd");
    Ok("per = 20, 17, 36 for the three incongruent classes; spectrum {17, 20, 36}; \
        I+P^2+P^4 splits into two blocks of permanent 6 (36 = 6^2)"
        .into())
}

fn example_7(_: &mut Shared) -> Outcome {
    let census = try_run("circulant_parity_census", circulant_parity_census(7))?;
    ensure!(
        census.odd == 21 && census.even == 14 && census.entries.len() == 35,
        "census at n = 7: {} odd / {} even over {} triples",
        census.odd,
        census.even,
        census.entries.len()
    );
    for (offsets, parity) in &census.entries {
        let matrix = try_run("circulant_matrix", circulant_matrix(7, offsets))?;
        ensure!(
            parity_det_oracle(&matrix) == *parity,
            "determinant oracle disagrees at offsets {offsets:?}"
        );
    }
    let sequence = try_run("testing_sequence", testing_sequence(7))?;
    ensure!(
        sequence == vec![4],
        "testing sequence at n = 7 should be the single term 4, got {sequence:?}"
    );
    Ok("21 odd / 14 even over all 35 offset triples, each confirmed by the \
        determinant oracle; the subset-count test needs only r = 4"
        .into())
}

// ---------------------------------------------------------------------------
// Extremal closed forms
// ---------------------------------------------------------------------------

fn theorem_4(_: &mut Shared) -> Outcome {
    let one = int(1);
    let conditions = try_run(
        "check_theorem4_conditions",
        check_theorem4_conditions(&one, &one, &one),
    )?;
    ensure!(
        conditions.iter().all(|(_, ok)| *ok),
        "the closed-form side conditions should all hold at weights (1,1,1)"
    );
    let report = try_run("max_weighted_symmetric", max_weighted_symmetric(6, &one, &one, &one))?;
    ensure!(
        report.max_value == int(36),
        "maximum at (6, 1, 1, 1): got {}, expected 36",
        format_exact(&report.max_value)
    );
    let applies = report
        .conditions_checked
        .iter()
        .any(|(name, ok)| name == "closed form a(3)^(n/3) applies" && *ok);
    ensure!(applies, "the a(3)^(n/3) closed form should be marked applicable");
    let report12 = try_run("max_weighted_symmetric", max_weighted_symmetric(12, &one, &one, &one))?;
    ensure!(
        report12.max_value == int(1296),
        "maximum at (12, 1, 1, 1): got {}, expected 6^4 = 1296",
        format_exact(&report12.max_value)
    );
    Ok("all side conditions hold at (1,1,1); the maximum is a(3)^(n/3): 36 at n = 6 \
        (matching the exhaustive n = 6 spectrum) and 1296 at n = 12"
        .into())
}

fn lemma_6(_: &mut Shared) -> Outcome {
    let (_, mu4) = try_run("indecomposable_spectrum", indecomposable_spectrum(4))?;
    ensure!(mu4 == int(9), "mu1(4): got {}, expected 9", format_exact(&mu4));
    let (_, mu5) = try_run("indecomposable_spectrum", indecomposable_spectrum(5))?;
    ensure!(mu5 == int(13), "mu1(5): got {}, expected 13", format_exact(&mu5));
    let (_, mu6) = try_run("indecomposable_spectrum", indecomposable_spectrum(6))?;
    ensure!(mu6 == int(20), "mu1(6): got {}, expected 20", format_exact(&mu6));
    // The bound mu1(5) <= 13 is attained by I+P+P^2, which is connected.
    let attaining = try_run("circulant_matrix", circulant_matrix(5, &[0, 1, 2]))?;
    let components = decompose_components(&attaining.to_weighted());
    ensure!(components.len() == 1, "I+P+P^2 at n = 5 should be indecomposable");
    // Square-root bound by hand at the edge: mu1(4)^2 = 81 = 3^4.
    ensure!(&mu4 * &mu4 <= int_pow(3, 4), "mu1(4) exceeds 3^2");
    ensure!(&mu5 * &mu5 <= int_pow(3, 5), "mu1(5) exceeds 3^(5/2)");
    Ok("mu1(4) = 9 = D_4 (tight against 3^(n/2)), mu1(5) = 13 attained by the \
        connected I+P+P^2, mu1(6) = 20 < 36"
        .into())
}
