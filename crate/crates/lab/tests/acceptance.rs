//! The release gate: one test per advertised guarantee, numbered so a full
//! run reads as a checklist. Every check is exact; each test ends with a
//! single `criterion NN PASS` line (visible under `--nocapture`) carrying
//! the values it pinned. The two expensive n = 8 exhaustive sweeps are
//! computed once and shared across criteria.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use num::{BigInt, One};

use permspec_core::rng::SplitMix64;
use permspec_core::{
    from_i64, from_ratio, menage_board, permanent_expansion, permanent_int, permanent_ryser,
    ClassKind, ClassSpec, ExactValue, WeightedMatrix,
};
use permspec_lab::circulant::{
    canonical_classes, circulant_matrix, circulant_spectrum, reis_count, spectrum_bound,
};
use permspec_lab::enumerate::{brute_count, brute_spectrum, indecomposable_spectrum, mci_check};
use permspec_lab::extremal::{bolshakov_second, merriell_max, theta_compare, voorhoeve_bound};
use permspec_lab::parity::{circulant_parity_census, parity_det_oracle};
use permspec_lab::sequences::{
    a_general, a_lemma4, a_seq, a_seq_closed, count_lambda3, count_lambda3_diag, latin_k, menage_u,
};
use permspec_lab::spectrum::{
    build_cycle_type_matrix, partitions, spectrum_symmetric, spectrum_weighted, Partition,
    Spectrum,
};
use permspec_lab::upper::{table_fixture, upper_general, upper_symmetric, TableKind};

fn int(v: i64) -> ExactValue {
    from_i64(v)
}

fn ints(vs: &[i64]) -> Vec<ExactValue> {
    vs.iter().map(|&v| from_i64(v)).collect()
}

fn int_pow(base: i64, exp: u32) -> ExactValue {
    ExactValue::from(BigInt::from(base).pow(exp))
}

fn rat_pow(base: &ExactValue, exp: u32) -> ExactValue {
    let mut acc = ExactValue::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Deterministic nonzero rational weight triples (small numerators,
/// denominators 1..3, negatives included).
fn random_triples(seed: u64, count: usize) -> Vec<(ExactValue, ExactValue, ExactValue)> {
    let mut rng = SplitMix64::new(seed);
    let pick = |rng: &mut SplitMix64| loop {
        let numer = rng.next_range_i64(-4, 4);
        if numer != 0 {
            let denom = 1 + rng.next_range_i64(0, 2);
            return from_ratio(numer, denom);
        }
    };
    (0..count)
        .map(|_| (pick(&mut rng), pick(&mut rng), pick(&mut rng)))
        .collect()
}

// ---------------------------------------------------------------------------
// Shared exhaustive sweeps
// ---------------------------------------------------------------------------

struct SharedSweeps {
    /// Full-class brute spectra for n = 5..=8.
    spectra: BTreeMap<usize, Spectrum>,
    n8_sweep_seconds: f64,
}

static FULL_SWEEPS: OnceLock<SharedSweeps> = OnceLock::new();

fn full_sweeps() -> &'static SharedSweeps {
    FULL_SWEEPS.get_or_init(|| {
        let class = ClassSpec::binary(ClassKind::Lambda3).expect("plain class is binary");
        let mut spectra = BTreeMap::new();
        for n in 5..=7 {
            spectra.insert(n, brute_spectrum(&class, n).expect("sweep succeeds"));
        }
        let started = Instant::now();
        spectra.insert(8, brute_spectrum(&class, 8).expect("sweep succeeds"));
        SharedSweeps {
            spectra,
            n8_sweep_seconds: started.elapsed().as_secs_f64(),
        }
    })
}

fn full_spectrum(n: usize) -> &'static Spectrum {
    &full_sweeps().spectra[&n]
}

static SMALL_SPECTRA: OnceLock<BTreeMap<usize, Spectrum>> = OnceLock::new();

/// Indecomposable spectra for block sizes 3..=8, by exhaustive sweep.
fn indecomposable_spectra() -> &'static BTreeMap<usize, Spectrum> {
    SMALL_SPECTRA.get_or_init(|| {
        (3..=8)
            .map(|s| (s, indecomposable_spectrum(s).expect("sweep succeeds").0))
            .collect()
    })
}

// ---------------------------------------------------------------------------
// The criteria
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_brute_spectra_match_the_published_value_sets() {
    let expected: [(usize, Vec<i64>); 4] = [
        (5, vec![12, 13]),
        (6, vec![17, 18, 20, 36]),
        (7, vec![24, 25, 26, 27, 30, 31, 32, 54]),
        (
            8,
            vec![
                33, 34, 35, 36, 37, 38, 39, 40, 41, 42, 44, 45, 48, 49, 52, 72, 78, 81,
            ],
        ),
    ];
    for (n, values) in &expected {
        assert_eq!(full_spectrum(*n).values(), ints(values), "n = {n}");
    }
    let seconds = full_sweeps().n8_sweep_seconds;
    assert!(
        seconds < 600.0,
        "n = 8 sweep took {seconds:.0}s, budget is 600s"
    );
    println!(
        "criterion 01 PASS — brute spectra for n = 5..8 match exactly \
         (2, 4, 8, 18 values; n = 8 sweep {seconds:.1}s single-threaded)"
    );
}

#[test]
fn criterion_02_small_circulant_permanents() {
    let cases = [
        (5usize, [0usize, 1, 2], 13i64),
        (5, [0, 1, 3], 13),
        (6, [0, 1, 2], 20),
        (6, [0, 1, 3], 17),
        (6, [0, 2, 4], 36),
    ];
    for (n, offsets, expected) in cases {
        let m = circulant_matrix(n, &offsets).unwrap();
        assert_eq!(
            permanent_int(&m).unwrap(),
            BigInt::from(expected),
            "n = {n}, offsets {offsets:?}"
        );
    }
    assert_eq!(circulant_spectrum(5).unwrap().values(), ints(&[13]));
    assert_eq!(
        circulant_spectrum(6).unwrap().values(),
        ints(&[17, 20, 36])
    );
    println!(
        "criterion 02 PASS — circulant permanents 13, 13, 20, 17, 36 and \
         spectra {{13}}, {{17, 20, 36}} confirmed"
    );
}

#[test]
fn criterion_03_example_weighted_spectrum() {
    let spectrum = spectrum_weighted(11, &int(-1), &int(3), &int(2)).unwrap();
    assert_eq!(
        spectrum.values(),
        ints(&[4096, 8224, 8320, 8704, 16384, 18496])
    );
    println!(
        "criterion 03 PASS — weighted spectrum at n = 11, weights (-1, 3, 2): \
         six values 4096..18496 exact"
    );
}

#[test]
fn criterion_04_circulant_parity_census_at_n7() {
    let census = circulant_parity_census(7).unwrap();
    assert_eq!(census.entries.len(), 35);
    assert_eq!(census.odd, 21);
    assert_eq!(census.even, 14);
    // The subset-count route agrees with the GF(2) determinant on every
    // triple.
    for &([i, j, k], parity) in &census.entries {
        let m = circulant_matrix(7, &[i, j, k]).unwrap();
        assert_eq!(parity, parity_det_oracle(&m), "offsets {i},{j},{k}");
    }
    println!(
        "criterion 04 PASS — parity census over 35 offset triples: 21 odd / 14 even, \
         both parity routes agree on all 35"
    );
}

#[test]
fn criterion_05_symmetric_spectrum_formula_vs_brute() {
    let sym = ClassSpec::binary(ClassKind::Lambda3Sym).unwrap();
    for n in 3..=8usize {
        assert_eq!(
            spectrum_symmetric(n as i64).unwrap(),
            brute_spectrum(&sym, n).unwrap(),
            "n = {n}"
        );
    }
    println!(
        "criterion 05 PASS — partition-product formula equals the brute symmetric \
         spectrum for n = 3..8"
    );
}

#[test]
fn criterion_06_weighted_spectrum_three_routes_agree() {
    for (alpha, beta, gamma) in random_triples(0xACCE_0601, 10) {
        let class = ClassSpec::weighted(
            ClassKind::LambdaABGSym,
            alpha.clone(),
            beta.clone(),
            gamma.clone(),
        )
        .unwrap();
        for n in 3..=7i64 {
            let formula = spectrum_weighted(n, &alpha, &beta, &gamma).unwrap();
            // Route 2: exhaustive sweep of the weighted class members.
            assert_eq!(
                formula,
                brute_spectrum(&class, n as usize).unwrap(),
                "n = {n}, weights ({alpha}, {beta}, {gamma})"
            );
            // Route 3: permanents of the canonical cycle-type matrices,
            // which must also factor into single-cycle permanents.
            let mut values = Vec::new();
            for partition in partitions(n, 3) {
                let matrix = build_cycle_type_matrix(&partition, &alpha, &beta, &gamma).unwrap();
                let per = permanent_ryser(&matrix).unwrap();
                let product = partition
                    .parts()
                    .iter()
                    .map(|&p| {
                        let cycle = Partition::new(vec![p], 3).unwrap();
                        let block =
                            build_cycle_type_matrix(&cycle, &alpha, &beta, &gamma).unwrap();
                        let block_per = permanent_ryser(&block).unwrap();
                        assert_eq!(block_per, a_general(&alpha, &beta, &gamma, p).unwrap());
                        block_per
                    })
                    .fold(ExactValue::one(), |acc, v| acc * v);
                assert_eq!(per, product, "partition {}", partition.display());
                values.push(per);
            }
            assert_eq!(formula, Spectrum::from_values(values), "n = {n}");
        }
    }
    println!(
        "criterion 06 PASS — formula, class sweep, and cycle-type permanents agree \
         on 10 random weight triples for n = 3..7"
    );
}

#[test]
fn criterion_07_ranked_magnitude_tables() {
    // Symmetric listing: all 30 published coefficients (10 ranks × 3
    // residues), at sizes where the hypothesis admits the needed depth.
    let computed = upper_symmetric(36, 3).unwrap().values();
    let scale = int_pow(6, 12);
    for rank in 1..=10 {
        assert_eq!(
            computed[rank - 1],
            table_fixture(TableKind::SymmetricRanked, 0, rank).unwrap() * &scale,
            "residue 0, rank {rank}"
        );
    }

    // Residue 1: the published table passes over one genuine spectrum
    // value between its ranks 8 and 9 (coefficient 49/96), so the printed
    // ranks map onto the computed listing with a single skip.
    let computed = upper_symmetric(28, 2).unwrap().values();
    let scale = int_pow(6, 9);
    let published: Vec<ExactValue> = (1..=10)
        .map(|rank| table_fixture(TableKind::SymmetricRanked, 1, rank).unwrap() * &scale)
        .collect();
    assert_eq!(&computed[..8], &published[..8]);
    assert_eq!(computed[9], published[8]);
    assert_eq!(computed[10], published[9]);
    let skipped = from_ratio(49, 96) * &scale;
    assert_eq!(computed[8], skipped);
    assert!(spectrum_symmetric(28).unwrap().contains(&skipped));

    let computed = upper_symmetric(32, 2).unwrap().values();
    let scale = int_pow(6, 10);
    for rank in 1..=10 {
        assert_eq!(
            computed[rank - 1],
            table_fixture(TableKind::SymmetricRanked, 2, rank).unwrap() * &scale,
            "residue 2, rank {rank}"
        );
    }

    // General listing from the brute small spectra: 4 + 7 + 11 published
    // values plus the residue-2 singleton at t = 0.
    let spectra = indecomposable_spectra();

    let report = upper_general(24, 2, spectra).unwrap();
    let scale = int_pow(6, 8);
    for rank in 1..=4 {
        assert_eq!(
            report.values()[rank - 1],
            table_fixture(TableKind::GeneralRanked, 0, rank).unwrap() * &scale,
            "general residue 0, rank {rank}"
        );
    }
    assert_eq!(report.certified_count, 4);
    assert!(report.conditional_on_mci);

    let report = upper_general(28, 2, spectra).unwrap();
    let scale = int_pow(6, 9);
    let values = report.values();
    for rank in [1usize, 2, 3, 4, 5, 7] {
        assert_eq!(
            values[rank - 1],
            table_fixture(TableKind::GeneralRanked, 1, rank).unwrap() * &scale,
            "general residue 1, rank {rank}"
        );
    }
    // The printed rank-6 coefficient 13/15 is provably a typo: scaled by
    // 6^9 it is not an integer, while every value in this listing is the
    // permanent of a (0,1) matrix. The computed coefficient is 13/16.
    let printed = table_fixture(TableKind::GeneralRanked, 1, 6).unwrap();
    assert_eq!(printed, from_ratio(13, 15));
    assert!(!(printed * &scale).is_integer());
    assert_eq!(values[5], from_ratio(13, 16) * &scale);
    assert!(values[5].is_integer());
    // The exact certification rule stops one rank earlier than the table
    // claims: the rank-6 value equals the largest blocker ceiling, so
    // ranks 1..6 are certified and rank 7 is still reproduced below it.
    assert_eq!(report.certified_count, 6);

    let report = upper_general(32, 2, spectra).unwrap();
    let scale = int_pow(6, 10);
    for rank in 1..=11 {
        assert_eq!(
            report.values()[rank - 1],
            table_fixture(TableKind::GeneralRanked, 2, rank).unwrap() * &scale,
            "general residue 2, rank {rank}"
        );
    }
    assert_eq!(report.certified_count, 11);

    let report = upper_general(14, 0, spectra).unwrap();
    assert_eq!(report.values(), vec![int(2916)]);
    assert_eq!(report.certified_count, 1);
    assert!(report.blockers.is_empty());
    assert_eq!(report.entries[0].sources.len(), 1);
    assert_eq!(report.entries[0].sources[0].0.parts(), &[4, 4]);

    println!(
        "criterion 07 PASS — 30 symmetric coefficients and 4+7+11 general values \
         reproduced (one printed coefficient shown non-integer after scaling, \
         corrected 13/15 → 13/16; one mid-table omission mapped; singleton 2916 \
         from blocks 4+4)"
    );
}

#[test]
fn criterion_08_extremal_values_vs_brute() {
    for (n, expected) in [(6usize, 36i64), (7, 54), (8, 81)] {
        let brute_max = full_spectrum(n).max().unwrap().clone();
        assert_eq!(brute_max, int(expected), "n = {n}");
        assert_eq!(merriell_max(n as i64).unwrap(), brute_max, "n = {n}");
    }
    let six = full_spectrum(6).values();
    assert_eq!(six[six.len() - 2], int(20));
    assert_eq!(bolshakov_second(6).unwrap(), int(20));
    let class = ClassSpec::binary(ClassKind::Lambda3).unwrap();
    for n in 3..=7usize {
        let minimum = if n < 5 {
            brute_spectrum(&class, n).unwrap().min().unwrap().clone()
        } else {
            full_spectrum(n).min().unwrap().clone()
        };
        assert!(
            minimum >= voorhoeve_bound(n as i64).unwrap(),
            "n = {n}: min {minimum} under the lower bound"
        );
    }
    println!(
        "criterion 08 PASS — maxima 36, 54, 81 and second value 20 match brute; \
         brute minima clear the cycle lower bound for n = 3..7"
    );
}

#[test]
fn criterion_09_submultiplicativity_evidence_to_n8() {
    let report = mci_check(8).unwrap();
    assert!(report.violations.is_empty());
    assert!(report.pair_checks.iter().all(|&(_, _, ok)| ok));
    // Indecomposable maxima found by the sweeps, pinned exactly.
    let mu: Vec<(i64, ExactValue)> = report.mu.clone();
    assert_eq!(
        mu,
        vec![
            (3, int(6)),
            (4, int(9)),
            (5, int(13)),
            (6, int(20)),
            (7, int(32)),
            (8, int(52)),
        ]
    );
    assert_eq!(
        report
            .sqrt_bound_checks
            .iter()
            .map(|&(n, _)| n)
            .collect::<Vec<_>>(),
        vec![4, 5, 6, 7, 8]
    );
    assert!(report.sqrt_bound_checks.iter().all(|&(_, ok)| ok));
    println!(
        "criterion 09 PASS — zero submultiplicativity violations through n = 8; \
         maxima 6, 9, 13, 20, 32, 52 all within the square-root bound"
    );
}

#[test]
fn criterion_10_counting_formulas_vs_oracles() {
    let full = ClassSpec::binary(ClassKind::Lambda3).unwrap();
    assert_eq!(count_lambda3(3).unwrap(), int(1));
    assert_eq!(count_lambda3(4).unwrap(), int(24));
    let brute5 = brute_count(&full, 5).unwrap();
    assert_eq!(brute5, int(2040));
    assert_eq!(count_lambda3(5).unwrap(), brute5);

    let diag = ClassSpec::binary(ClassKind::Lambda3Diag).unwrap();
    assert_eq!(count_lambda3_diag(3).unwrap(), int(1));
    assert_eq!(count_lambda3_diag(4).unwrap(), int(9));
    let diag5 = brute_count(&diag, 5).unwrap();
    assert_eq!(diag5, int(216));
    assert_eq!(count_lambda3_diag(5).unwrap(), diag5);

    // The weighted positive-diagonal class at n = 4 has as many members as
    // there are 3×4 Latin rectangles.
    let weighted = ClassSpec::weighted(ClassKind::LambdaABGDiag, int(-1), int(3), int(2)).unwrap();
    let weighted4 = brute_count(&weighted, 4).unwrap();
    assert_eq!(weighted4, latin_k(4).unwrap());
    assert_eq!(weighted4, int(24));

    for n in 3..=9i64 {
        let board = menage_board(n as usize);
        let per = permanent_int(&board).unwrap();
        assert_eq!(menage_u(n).unwrap(), ExactValue::from(per), "n = {n}");
    }
    println!(
        "criterion 10 PASS — counting formulas match brute counts (1, 24, 2040; \
         1, 9, 216), the weighted n = 4 class count equals the Latin rectangle \
         count 24, and the discordant-permutation numbers match the board \
         permanents for n = 3..9"
    );
}

#[test]
fn criterion_11_property_suite() {
    // Two independent permanent kernels on 500 random matrices.
    let mut rng = SplitMix64::new(0xACCE_0B11);
    for trial in 0..500 {
        let n = 1 + (trial % 8);
        let mut a = WeightedMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let numer = rng.next_range_i64(-3, 3);
                let denom = match rng.next_below(4) {
                    0 => 2,
                    1 => 3,
                    _ => 1,
                };
                a.set(i, j, from_ratio(numer, denom));
            }
        }
        assert_eq!(
            permanent_ryser(&a).unwrap(),
            permanent_expansion(&a).unwrap(),
            "kernel disagreement at n = {n}"
        );
    }

    // Recursion versus closed form for the single-cycle values.
    for n in 3..=60 {
        assert_eq!(a_seq(n).unwrap(), a_seq_closed(n).unwrap(), "n = {n}");
    }

    // The shifted-weight closed form against the three-term recursion.
    let pick = |rng: &mut SplitMix64| loop {
        let numer = rng.next_range_i64(-5, 5);
        if numer != 0 {
            return from_ratio(numer, 1 + rng.next_range_i64(0, 2));
        }
    };
    let mut rng = SplitMix64::new(0xACCE_4C44);
    let mut pairs = 0;
    while pairs < 50 {
        let alpha = pick(&mut rng);
        let gamma = pick(&mut rng);
        if alpha == gamma {
            continue;
        }
        pairs += 1;
        let beta = &gamma - &alpha;
        for n in 3..=12 {
            assert_eq!(
                a_general(&alpha, &beta, &gamma, n).unwrap(),
                a_lemma4(&alpha, &gamma, n).unwrap(),
                "α = {alpha}, γ = {gamma}, n = {n}"
            );
        }
    }

    // Submultiplicativity of the single-cycle values.
    for n1 in 3..=30 {
        for n2 in n1..=30 {
            assert!(
                a_seq(n1 + n2).unwrap() <= a_seq(n1).unwrap() * a_seq(n2).unwrap(),
                "n₁ = {n1}, n₂ = {n2}"
            );
        }
    }

    // The polygon-counting formula against dihedral orbit enumeration.
    for n in 3..=18i64 {
        for k in 3..=5.min(n) {
            let counted = canonical_classes(n as usize, k as usize).unwrap().len();
            assert_eq!(
                reis_count(n, k).unwrap(),
                int(counted as i64),
                "n = {n}, k = {k}"
            );
        }
    }

    // Circulant spectrum sizes respect the quadratic bound.
    for n in 3..=14usize {
        let spectrum = circulant_spectrum(n).unwrap();
        assert!((spectrum.len() as i64) <= spectrum_bound(n as i64), "n = {n}");
    }

    // The θ boundary of the weighted maximum is decided exactly, and the
    // two closed forms meet there to better than 10⁻⁴ relative (the one
    // tolerance-based check in the suite).
    let gamma = ExactValue::one();
    let below = from_ratio(7_140_199, 10_000_000);
    let above = from_ratio(7_140_200, 10_000_000);
    assert_eq!(theta_compare(&below, &gamma), Ordering::Less);
    assert_eq!(theta_compare(&above, &gamma), Ordering::Greater);
    let odd_form = int_pow(2, 4);
    let even_form = {
        let base = int(2) * (rat_pow(&above, 4) + ExactValue::one());
        rat_pow(&base, 3)
    };
    let gap = if odd_form > even_form {
        &odd_form - &even_form
    } else {
        &even_form - &odd_form
    };
    assert!(&gap * int(10_000) < odd_form, "θ-boundary gap too large");

    println!(
        "criterion 11 PASS — kernel agreement on 500 matrices, closed forms vs \
         recursions (n ≤ 60, 50 weight pairs), submultiplicativity to 30+30, \
         orbit counts to n = 18, spectrum-size bound to n = 14, θ boundary \
         exact with forms within 10⁻⁴"
    );
}
