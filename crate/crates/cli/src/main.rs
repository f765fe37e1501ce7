//! `permspec` — permanent spectra of 3-regular (0,1) matrices and their
//! three-weight relatives, from the command line.
//!
//! Every subcommand computes in exact rational arithmetic and prints a
//! single report: canonical JSON by default, `--format text` for aligned
//! human output, `--format csv` for flat rows. Identical invocations
//! produce byte-identical output, at any `--workers` count.
//!
//! ```text
//! permspec seq a 3 7                      # 6, 9, 13, 20, 31
//! permspec spectrum weighted 11 -1 3 2    # {4096, 8224, 8320, 8704, 16384, 18496}
//! permspec parity census 7                # 21 odd / 14 even
//! permspec enumerate lambda3-diag 6 --spectrum --indecomposable
//! permspec upper general 24 2 --spectra s3.json s4.json s5.json ...
//! permspec reproduce-paper --quick
//! ```
//!
//! These examples are pinned, with their documented outputs, by the
//! integration tests in `tests/cli.rs`.
//!
//! Exit status: 0 on success, 1 when `reproduce-paper` finds a mismatch,
//! 2 for usage, domain, or input errors.

mod output;
mod reproduce;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use permspec_core::{
    from_i64, parse_exact, permanent_expansion, permanent_int, permanent_ryser, BinaryMatrix,
    ClassKind, ClassSpec, CoreError, ExactValue, WeightedMatrix,
};
use permspec_lab::circulant::{
    canonical_classes, circulant_spectrum, reis_count, spectrum_bound, weighted_circulant_classes,
    weighted_class_bound,
};
use permspec_lab::enumerate::{
    brute_count, brute_spectrum_parallel, enumerate_with, EnumerationTask,
};
use permspec_lab::extremal::{
    bolshakov_second, max_weighted_symmetric, merriell_max, voorhoeve_bound,
};
use permspec_lab::parity::{circulant_parity_census, parity_ryser, Parity, ParityReport};
use permspec_lab::sequences::{
    a_seq, count_lambda3, count_lambda3_diag, latin_k, menage_u, s_seq, subfactorial,
    SequenceSource, SequenceTable,
};
use permspec_lab::spectrum::{spectrum_weighted_attaining, Spectrum};
use permspec_lab::upper::{upper_general, upper_symmetric, RankedMagnitudes};
use permspec_lab::LabError;
use serde_json::{json, Map, Value};

use output::{exact, exact_list, read_exact, render, Format};

/// Environment variable consulted for the default `--workers` count.
const WORKERS_ENV: &str = "PERMSPEC_WORKERS";

// ---------------------------------------------------------------------------
// Command tree
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "permspec",
    version,
    about = "Exact permanent spectra of 3-regular (0,1) matrices and their three-weight relatives"
)]
struct Cli {
    /// Output format for every report.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads for exhaustive sweeps; defaults to $PERMSPEC_WORKERS,
    /// then to the number of available cores. Results are identical at any
    /// count.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact permanent of a matrix read from a file ("-" for stdin).
    ///
    /// Matrix text format: first line "n", then n lines of n
    /// whitespace-separated rational literals ("p" or "p/q"; "0"/"1" for
    /// binary matrices).
    Permanent {
        /// Path to the matrix file, or "-" to read stdin.
        file: String,
        /// Evaluation kernel: the production inclusion-exclusion routine or
        /// the small-matrix expansion oracle (n <= 12).
        #[arg(long, value_enum, default_value = "ryser")]
        method: Method,
    },
    /// Tabulate a counting or recurrence sequence over an inclusive range.
    Seq {
        /// Which sequence to tabulate.
        name: SeqName,
        /// First index, inclusive.
        from: i64,
        /// Last index, inclusive.
        to: i64,
    },
    /// Permanent spectra of the symmetric classes, by partition products.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Extremal permanent values: maxima, second-largest, lower bounds.
    #[command(subcommand)]
    Extremal(ExtremalCmd),
    /// Ranked listings of the largest spectrum values.
    #[command(subcommand)]
    Upper(UpperCmd),
    /// Circulant (0,1) classes: representatives, counts, spectra.
    #[command(subcommand)]
    Circulant(CirculantCmd),
    /// Permanent parity via odd-row-sum subset counts.
    #[command(subcommand)]
    Parity(ParityCmd),
    /// Exhaustively enumerate a class: member counts and spectra.
    ///
    /// `--spectrum` output is valid input for `upper general --spectra`.
    Enumerate {
        /// Which class to sweep.
        class: ClassArg,
        /// Matrix dimension.
        n: usize,
        /// Weights for the three-weight classes, e.g. `--weights -1 3 2`.
        #[arg(long, num_args = 3, allow_hyphen_values = true, value_names = ["ALPHA", "BETA", "GAMMA"])]
        weights: Option<Vec<String>>,
        /// Report the member count (the default when no flag is given).
        #[arg(long)]
        count: bool,
        /// Report the permanent spectrum.
        #[arg(long)]
        spectrum: bool,
        /// Keep only completely indecomposable members (binary classes).
        #[arg(long)]
        indecomposable: bool,
        /// Split the sweep into this many prefix shards...
        #[arg(long, requires = "shard")]
        shards: Option<usize>,
        /// ...and run only this shard (0-based). Merging the sorted outputs
        /// of all shards reproduces the unsharded run exactly.
        #[arg(long, requires = "shards")]
        shard: Option<usize>,
        /// Raise or lower the dimension guard for this run (binary classes).
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Recompute every pinned published value and print a pass/fail line
    /// per source table.
    ///
    /// The full run redoes the n = 8 exhaustive sweeps and takes several
    /// minutes single-threaded; `--quick` reports those checks as SKIP
    /// instead of substituting weaker variants. Exit status 1 when any
    /// executed check fails.
    ReproducePaper {
        /// Skip the checks that need n = 8 exhaustive sweeps.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Ryser,
    Expansion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeqName {
    /// Maximal single-cycle permanents a(n): 6, 9, 13, 20, 31, ...
    A,
    /// Auxiliary rational sequence S(n) from the asymptotic count.
    S,
    /// Derangement numbers D(n).
    Subfactorial,
    /// Menage numbers U(n).
    Menage,
    /// Reduced 3-row Latin rectangle counts K(n).
    LatinK,
    /// Cardinality of the full 3-regular binary class.
    CountFull,
    /// Cardinality of the positive-diagonal 3-regular subclass.
    CountDiag,
}

#[derive(Subcommand)]
enum SpectrumCmd {
    /// Spectrum over the symmetric 3-regular binary members.
    Symmetric {
        n: i64,
        /// List the partitions attaining each value.
        #[arg(long)]
        attaining: bool,
    },
    /// Spectrum over the symmetric three-weight members.
    Weighted {
        n: i64,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
        #[arg(allow_hyphen_values = true)]
        gamma: String,
        /// List the partitions attaining each value.
        #[arg(long)]
        attaining: bool,
    },
}

#[derive(Subcommand)]
enum ExtremalCmd {
    /// Largest permanent over the 3-regular binary class:
    /// 6^((n-h)/3)*(3/2)^h, attained for every n >= 3 except n = 5.
    Max { n: i64 },
    /// Second-largest value for n = 0 (mod 3).
    Second { n: i64 },
    /// Lower bound 6*(4/3)^(n-3) on 3-regular permanents.
    Lower { n: i64 },
    /// Exact maximum over a weighted symmetric class, with every
    /// applicable closed form annotated.
    Weighted {
        n: i64,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
        #[arg(allow_hyphen_values = true)]
        gamma: String,
    },
}

#[derive(Subcommand)]
enum UpperCmd {
    /// Ranked largest spectrum values over the symmetric members
    /// (unconditional). Lists every value >= 9^(3t+j)*6^((n-4j)/3-4t).
    Symmetric { n: usize, t: usize },
    /// Ranked largest spectrum values over the full class, conditional on
    /// submultiplicativity of the indecomposable maxima.
    General {
        n: usize,
        t: usize,
        /// JSON files carrying "n" and "spectrum" fields, one per small
        /// size, as written by `enumerate --spectrum --indecomposable`.
        #[arg(long, required = true, num_args = 1..)]
        spectra: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CirculantCmd {
    /// Incongruent offset classes with k nonzero powers.
    Classes { n: usize, k: usize },
    /// Count of incongruent classes by the dihedral orbit formula.
    Count { n: i64, k: i64 },
    /// Permanent spectrum over all 3-offset circulants.
    Spectrum { n: usize },
    /// Representative offset triples for the weighted circulant classes.
    Weighted { n: usize },
}

#[derive(Subcommand)]
enum ParityCmd {
    /// Parity of a 3-regular binary matrix from a file ("-" for stdin).
    Matrix { file: String },
    /// Parity census over all circulant offset triples at size n.
    Census { n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    /// All line sums 3.
    Lambda3,
    /// Line sums 3 with a full diagonal.
    Lambda3Diag,
    /// Symmetric members with a full diagonal.
    Lambda3Sym,
    /// Three-weight members (requires --weights).
    Weighted,
    /// Three-weight members with beta diagonal (requires --weights).
    WeightedDiag,
    /// Symmetric three-weight members (requires --weights).
    WeightedSym,
}

// ---------------------------------------------------------------------------
// Errors and exit codes
// ---------------------------------------------------------------------------

enum CliError {
    Core(CoreError),
    Lab(LabError),
    Io(io::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Lab(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        CliError::Lab(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((report, code)) => {
            print!("{}", render(&report, cli.format));
            code
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

fn dispatch(cli: &Cli) -> Result<(Value, ExitCode), CliError> {
    let report = match &cli.command {
        Command::Permanent { file, method } => run_permanent(file, *method)?,
        Command::Seq { name, from, to } => run_seq(*name, *from, *to)?,
        Command::Spectrum(cmd) => run_spectrum(cmd)?,
        Command::Extremal(cmd) => run_extremal(cmd)?,
        Command::Upper(cmd) => run_upper(cmd)?,
        Command::Circulant(cmd) => run_circulant(cmd)?,
        Command::Parity(cmd) => run_parity(cmd)?,
        Command::Enumerate {
            class,
            n,
            weights,
            count,
            spectrum,
            indecomposable,
            shards,
            shard,
            limit,
        } => run_enumerate(EnumerateArgs {
            class: *class,
            n: *n,
            weights,
            count: *count,
            spectrum: *spectrum,
            indecomposable: *indecomposable,
            shards: *shards,
            shard: *shard,
            limit: *limit,
            workers: resolve_workers(cli.workers),
        })?,
        Command::ReproducePaper { quick } => {
            let (report, all_passed) = reproduce::run(*quick);
            let code = if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            return Ok((report, code));
        }
    };
    Ok((report, ExitCode::SUCCESS))
}

/// Worker count: explicit flag, then $PERMSPEC_WORKERS, then all cores.
fn resolve_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|text| text.parse().ok())
    })
    .unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(std::num::NonZeroUsize::get)
            .unwrap_or(1)
    })
    .max(1)
}

fn read_input(file: &str) -> Result<String, CliError> {
    if file == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(fs::read_to_string(file)?)
    }
}

fn parse_weight(label: &str, text: &str) -> Result<ExactValue, CliError> {
    parse_exact(text).map_err(|e| CliError::Usage(format!("weight {label}: {e}")))
}

fn weights_json(alpha: &ExactValue, beta: &ExactValue, gamma: &ExactValue) -> Value {
    json!({ "alpha": exact(alpha), "beta": exact(beta), "gamma": exact(gamma) })
}

fn parity_name(parity: Parity) -> &'static str {
    match parity {
        Parity::Odd => "odd",
        Parity::Even => "even",
    }
}

// ---------------------------------------------------------------------------
// Leaf commands
// ---------------------------------------------------------------------------

fn run_permanent(file: &str, method: Method) -> Result<Value, CliError> {
    let text = read_input(file)?;
    let matrix = WeightedMatrix::parse(&text)?;
    let (label, value) = match method {
        Method::Ryser => ("ryser", permanent_ryser(&matrix)?),
        Method::Expansion => ("expansion", permanent_expansion(&matrix)?),
    };
    Ok(json!({
        "n": matrix.dim(),
        "method": label,
        "permanent": exact(&value),
    }))
}

fn run_seq(name: SeqName, from: i64, to: i64) -> Result<Value, CliError> {
    if from > to {
        return Err(CliError::Usage(format!(
            "empty index range: {from} > {to}"
        )));
    }
    type SeqFn = fn(i64) -> permspec_lab::Result<ExactValue>;
    let (label, source, f): (&str, SequenceSource, SeqFn) = match name {
        SeqName::A => ("a", SequenceSource::Recursion, a_seq),
        SeqName::S => ("s", SequenceSource::Recursion, s_seq),
        SeqName::Subfactorial => ("subfactorial", SequenceSource::Recursion, subfactorial),
        SeqName::Menage => ("menage", SequenceSource::Recursion, menage_u),
        SeqName::LatinK => ("latin-k", SequenceSource::ClosedForm, latin_k),
        SeqName::CountFull => ("count-full", SequenceSource::ClosedForm, count_lambda3),
        SeqName::CountDiag => ("count-diag", SequenceSource::ClosedForm, count_lambda3_diag),
    };
    let table = SequenceTable::tabulate(label, source, from..=to, f)?;
    let values: Vec<Value> = table
        .values
        .iter()
        .map(|(n, v)| json!({ "n": n, "value": exact(v) }))
        .collect();
    Ok(json!({
        "name": table.name,
        "source": match table.source {
            SequenceSource::Recursion => "recursion",
            SequenceSource::ClosedForm => "closed-form",
        },
        "values": values,
    }))
}

fn run_spectrum(cmd: &SpectrumCmd) -> Result<Value, CliError> {
    let one = from_i64(1);
    let (class, n, alpha, beta, gamma, attaining) = match cmd {
        SpectrumCmd::Symmetric { n, attaining } => {
            ("symmetric", *n, one.clone(), one.clone(), one.clone(), *attaining)
        }
        SpectrumCmd::Weighted {
            n,
            alpha,
            beta,
            gamma,
            attaining,
        } => (
            "weighted",
            *n,
            parse_weight("alpha", alpha)?,
            parse_weight("beta", beta)?,
            parse_weight("gamma", gamma)?,
            *attaining,
        ),
    };
    let detailed = spectrum_weighted_attaining(n, &alpha, &beta, &gamma)?;
    let values: Vec<ExactValue> = detailed.iter().map(|(v, _)| v.clone()).collect();
    let mut report = Map::new();
    report.insert("class".into(), json!(class));
    report.insert("n".into(), json!(n));
    if class == "weighted" {
        report.insert("weights".into(), weights_json(&alpha, &beta, &gamma));
    }
    report.insert("spectrum".into(), exact_list(&values));
    if attaining {
        let rows: Vec<Value> = detailed
            .iter()
            .map(|(value, parts)| {
                json!({
                    "value": exact(value),
                    "partitions": parts.iter().map(|p| p.display()).collect::<Vec<_>>(),
                })
            })
            .collect();
        report.insert("attaining".into(), Value::Array(rows));
    }
    Ok(Value::Object(report))
}

fn run_extremal(cmd: &ExtremalCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        ExtremalCmd::Max { n } => {
            let value = merriell_max(*n)?;
            json!({
                "kind": "max",
                "n": n,
                "value": exact(&value),
                // The formula value is the true maximum except at n = 5,
                // where the class tops out at 13.
                "attained": *n != 5,
            })
        }
        ExtremalCmd::Second { n } => {
            let value = bolshakov_second(*n)?;
            json!({ "kind": "second-largest", "n": n, "value": exact(&value) })
        }
        ExtremalCmd::Lower { n } => {
            let value = voorhoeve_bound(*n)?;
            json!({ "kind": "lower-bound", "n": n, "value": exact(&value) })
        }
        ExtremalCmd::Weighted {
            n,
            alpha,
            beta,
            gamma,
        } => {
            let alpha = parse_weight("alpha", alpha)?;
            let beta = parse_weight("beta", beta)?;
            let gamma = parse_weight("gamma", gamma)?;
            let report = max_weighted_symmetric(*n, &alpha, &beta, &gamma)?;
            json!({
                "kind": "weighted-symmetric-max",
                "n": report.n,
                "weights": weights_json(&alpha, &beta, &gamma),
                "max": exact(&report.max_value),
                "attaining_partitions": report
                    .attaining_partitions
                    .iter()
                    .map(|p| p.display())
                    .collect::<Vec<_>>(),
                "maximizer_count": report.maximizer_count,
                "conditions": report
                    .conditions_checked
                    .iter()
                    .map(|(name, holds)| json!({ "condition": name, "holds": holds }))
                    .collect::<Vec<_>>(),
            })
        }
    })
}

fn ranked_json(report: &RankedMagnitudes) -> Value {
    json!({
        "n": report.n,
        "t": report.t,
        "j": report.j,
        "conditional_on_mci": report.conditional_on_mci,
        "certified_count": report.certified_count,
        "entries": report
            .entries
            .iter()
            .enumerate()
            .map(|(index, entry)| {
                json!({
                    "rank": index + 1,
                    "value": exact(&entry.value),
                    "sources": entry
                        .sources
                        .iter()
                        .map(|(partition, product)| {
                            json!({
                                "partition": partition.display(),
                                "product": exact(product),
                            })
                        })
                        .collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
        "blockers": report
            .blockers
            .iter()
            .map(|blocker| {
                json!({
                    "partition": blocker.partition.display(),
                    "missing_sizes": blocker.missing_sizes,
                    "ceiling": exact(&blocker.ceiling),
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn load_spectra(paths: &[PathBuf]) -> Result<BTreeMap<usize, Spectrum>, CliError> {
    let mut map = BTreeMap::new();
    for path in paths {
        let text = fs::read_to_string(path)?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let bad = |msg: &str| CliError::Usage(format!("{}: {msg}", path.display()));
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field \"n\""))? as usize;
        let entries = value
            .get("spectrum")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field \"spectrum\""))?;
        let mut values = Vec::with_capacity(entries.len());
        for entry in entries {
            values.push(
                read_exact(entry)
                    .ok_or_else(|| bad("spectrum entries must be {\"num\", \"den\"} objects"))?,
            );
        }
        if map.insert(n, Spectrum::from_values(values)).is_some() {
            return Err(bad(&format!("duplicate spectrum for size {n}")));
        }
    }
    Ok(map)
}

fn run_upper(cmd: &UpperCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        UpperCmd::Symmetric { n, t } => ranked_json(&upper_symmetric(*n, *t)?),
        UpperCmd::General { n, t, spectra } => {
            let spectra = load_spectra(spectra)?;
            let mut report = ranked_json(&upper_general(*n, *t, &spectra)?);
            let supplied: Vec<usize> = spectra.keys().copied().collect();
            report
                .as_object_mut()
                .expect("ranked_json builds an object")
                .insert("supplied_sizes".into(), json!(supplied));
            report
        }
    })
}

fn run_circulant(cmd: &CirculantCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        CirculantCmd::Classes { n, k } => {
            let classes = canonical_classes(*n, *k)?;
            json!({
                "n": n,
                "k": k,
                "count": classes.len(),
                "classes": classes
                    .iter()
                    .map(|c| json!(c.offsets()))
                    .collect::<Vec<_>>(),
            })
        }
        CirculantCmd::Count { n, k } => {
            let count = reis_count(*n, *k)?;
            json!({ "n": n, "k": k, "count": exact(&count) })
        }
        CirculantCmd::Spectrum { n } => {
            let spectrum = circulant_spectrum(*n)?;
            json!({
                "n": n,
                "spectrum": exact_list(spectrum.values()),
                "size_bound": spectrum_bound(*n as i64),
            })
        }
        CirculantCmd::Weighted { n } => {
            let classes = weighted_circulant_classes(*n)?;
            json!({
                "n": n,
                "count": classes.len(),
                "classes": classes.iter().map(|c| json!(c)).collect::<Vec<_>>(),
                "size_bound": weighted_class_bound(*n as i64),
            })
        }
    })
}

fn parity_report_json(report: &ParityReport) -> Value {
    json!({
        "matrix_id": report.matrix_id,
        "n": report.n,
        "duplicate_columns": report.duplicate_columns,
        "contributions": report
            .contributions
            .iter()
            .map(|(removed, count)| json!({ "removed": removed, "count": count }))
            .collect::<Vec<_>>(),
        "testing_sequence": report.testing_sequence,
        "parity": parity_name(report.parity),
    })
}

fn run_parity(cmd: &ParityCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        ParityCmd::Matrix { file } => {
            let text = read_input(file)?;
            let matrix = BinaryMatrix::parse(&text)?;
            parity_report_json(&parity_ryser(&matrix)?)
        }
        ParityCmd::Census { n } => {
            let census = circulant_parity_census(*n)?;
            json!({
                "n": census.n,
                "odd": census.odd,
                "even": census.even,
                "entries": census
                    .entries
                    .iter()
                    .map(|(offsets, parity)| {
                        json!({ "offsets": offsets, "parity": parity_name(*parity) })
                    })
                    .collect::<Vec<_>>(),
            })
        }
    })
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

struct EnumerateArgs<'a> {
    class: ClassArg,
    n: usize,
    weights: &'a Option<Vec<String>>,
    count: bool,
    spectrum: bool,
    indecomposable: bool,
    shards: Option<usize>,
    shard: Option<usize>,
    limit: Option<usize>,
    workers: usize,
}

fn class_label(class: ClassArg) -> &'static str {
    match class {
        ClassArg::Lambda3 => "lambda3",
        ClassArg::Lambda3Diag => "lambda3-diag",
        ClassArg::Lambda3Sym => "lambda3-sym",
        ClassArg::Weighted => "weighted",
        ClassArg::WeightedDiag => "weighted-diag",
        ClassArg::WeightedSym => "weighted-sym",
    }
}

fn build_class(arg: ClassArg, weights: &Option<Vec<String>>) -> Result<ClassSpec, CliError> {
    let kind = match arg {
        ClassArg::Lambda3 => ClassKind::Lambda3,
        ClassArg::Lambda3Diag => ClassKind::Lambda3Diag,
        ClassArg::Lambda3Sym => ClassKind::Lambda3Sym,
        ClassArg::Weighted => ClassKind::LambdaABG,
        ClassArg::WeightedDiag => ClassKind::LambdaABGDiag,
        ClassArg::WeightedSym => ClassKind::LambdaABGSym,
    };
    if kind.is_weighted() {
        let texts = weights.as_ref().ok_or_else(|| {
            CliError::Usage("the weighted classes need --weights ALPHA BETA GAMMA".to_string())
        })?;
        let alpha = parse_weight("alpha", &texts[0])?;
        let beta = parse_weight("beta", &texts[1])?;
        let gamma = parse_weight("gamma", &texts[2])?;
        Ok(ClassSpec::weighted(kind, alpha, beta, gamma)?)
    } else {
        if weights.is_some() {
            return Err(CliError::Usage(
                "--weights applies only to the weighted classes".to_string(),
            ));
        }
        Ok(ClassSpec::binary(kind)?)
    }
}

fn run_enumerate(args: EnumerateArgs<'_>) -> Result<Value, CliError> {
    let class = build_class(args.class, args.weights)?;
    let do_spectrum = args.spectrum;
    let do_count = args.count || !args.spectrum;
    let shard = match (args.shards, args.shard) {
        (Some(count), Some(index)) => {
            if count == 0 || index >= count {
                return Err(CliError::Usage(format!(
                    "--shard must satisfy 0 <= shard < shards, got {index} of {count}"
                )));
            }
            Some((index, count))
        }
        _ => None,
    };

    let mut report = Map::new();
    report.insert("class".into(), json!(class_label(args.class)));
    report.insert("n".into(), json!(args.n));
    if let Some((alpha, beta, gamma)) = class.weights() {
        report.insert("weights".into(), weights_json(alpha, beta, gamma));
    }
    if let Some((index, count)) = shard {
        report.insert("shard".into(), json!({ "index": index, "count": count }));
    }

    if class.kind().is_weighted() {
        if args.indecomposable || shard.is_some() || args.limit.is_some() {
            return Err(CliError::Usage(
                "--indecomposable, --shards, and --limit apply only to the binary classes"
                    .to_string(),
            ));
        }
        if do_count {
            report.insert("count".into(), exact(&brute_count(&class, args.n)?));
        }
        if do_spectrum {
            let spectrum = brute_spectrum_parallel(&class, args.n, 1)?;
            report.insert("spectrum".into(), exact_list(spectrum.values()));
        }
        return Ok(Value::Object(report));
    }

    // Spectrum-only sweeps without filters take the parallel fast path.
    if do_spectrum
        && !do_count
        && !args.indecomposable
        && shard.is_none()
        && args.limit.is_none()
    {
        let spectrum = brute_spectrum_parallel(&class, args.n, args.workers)?;
        report.insert("spectrum".into(), exact_list(spectrum.values()));
        return Ok(Value::Object(report));
    }

    // When no count is requested, sweeping the full class is wasteful:
    // every member is a row permutation of a positive-diagonal member, and
    // row permutations preserve both the permanent and complete
    // indecomposability, so the diagonal subclass yields the same spectrum
    // from a sweep roughly two hundred times smaller. A requested count
    // always walks exactly the class named.
    let sweep_class = if !do_count && class.kind() == ClassKind::Lambda3 {
        ClassSpec::binary(ClassKind::Lambda3Diag)?
    } else {
        class
    };
    let mut task = EnumerationTask::new(sweep_class, args.n);
    if args.indecomposable {
        report.insert("indecomposable".into(), json!(true));
        task = task.indecomposable_only();
    }
    if let Some(limit) = args.limit {
        task = task.dimension_limit(limit);
    }
    if let Some((index, count)) = shard {
        task = task.shard(index, count);
    }
    let mut members: u64 = 0;
    let mut values: BTreeSet<ExactValue> = BTreeSet::new();
    enumerate_with(&task, |matrix| {
        members += 1;
        if do_spectrum {
            let per = permanent_int(matrix).expect("member matrices are nonempty");
            values.insert(ExactValue::from(per));
        }
    })?;
    if do_count {
        let count = ExactValue::from(num::BigInt::from(members));
        report.insert("count".into(), exact(&count));
    }
    if do_spectrum {
        let spectrum = Spectrum::from_values(values.into_iter().collect());
        if args.indecomposable && shard.is_none() {
            if let Some(max) = spectrum.max() {
                report.insert("mu1".into(), exact(max));
            }
        }
        report.insert("spectrum".into(), exact_list(spectrum.values()));
    }
    Ok(Value::Object(report))
}
