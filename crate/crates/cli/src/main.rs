//! `rectdist` — exact distances between rectangle persistence modules.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 parse or usage error,
//! 3 dimension mismatch. Data goes to standard output, diagnostics to
//! standard error, and every number is printed exactly (integers,
//! lowest-terms fractions, or `inf`/`-inf`).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rectdist::sampling::{random_barcode, random_rectangle, SplitMix64};
use rectdist::{
    bottleneck_distance, enumerate_bottleneck, io, oracle_interleaving_distance,
    parse_rectangle_literal, Barcode, Error, Format, ENUMERATION_LIMIT,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DIMENSION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rectdist",
    version,
    about = "Exact interleaving and bottleneck distances between rectangle persistence modules"
)]
struct Cli {
    /// Barcode encoding for file input and generated output.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(arg: FormatArg) -> Format {
        match arg {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Interleaving distance between two inline rectangle literals,
    /// e.g. `rectdist dist "(0,2) x (0,2)" "(1,3) x (1,3)"`.
    Dist {
        rect_a: String,
        rect_b: String,
    },
    /// Bottleneck distance between two barcode files, with an optional
    /// witness matching written as JSON.
    Bottleneck {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Write the optimal matching to this path.
        #[arg(long, value_name = "PATH")]
        matching: Option<PathBuf>,
    },
    /// Cross-check the closed-form engine against the definition-level
    /// oracle on the given barcodes. Exits 1 on any mismatch, which would
    /// indicate an implementation bug.
    Verify {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Also cross-check this many extra seeded random rectangle pairs
        /// in the dimension of the inputs.
        #[arg(long, default_value_t = 0, value_name = "N")]
        trials: u64,
    },
    /// Print a seeded pseudo-random barcode.
    Gen {
        /// Number of bars.
        #[arg(long)]
        count: usize,
        /// Number of parameters per bar.
        #[arg(long)]
        dim: usize,
        /// Integer endpoint range, written `LO..HI`.
        #[arg(long, value_parser = parse_range, default_value = "-5..5", allow_hyphen_values = true)]
        range: (i64, i64),
        /// Probability of replacing a lower endpoint by -inf (and,
        /// independently, an upper endpoint by +inf).
        #[arg(long, default_value_t = 0.0)]
        inf_prob: f64,
        /// Generator seed; identical seeds reproduce identical barcodes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_range(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected `LO..HI`, found `{text}`"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    Ok((lo, hi))
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        let code = match err {
            Error::DimensionMismatch { .. } => EXIT_DIMENSION,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let format = Format::from(cli.format);
    match cli.command {
        Command::Dist { rect_a, rect_b } => {
            let a = parse_rectangle_literal(&rect_a)?;
            let b = parse_rectangle_literal(&rect_b)?;
            println!("{}", a.interleaving_distance(&b)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bottleneck {
            file_a,
            file_b,
            matching,
        } => {
            let left = read_barcode(&file_a, format)?;
            let right = read_barcode(&file_b, format)?;
            let result = bottleneck_distance(&left, &right)?;
            if let Some(path) = matching {
                fs::write(&path, result.matching_json()).map_err(|err| {
                    Failure::usage(format!("cannot write {}: {err}", path.display()))
                })?;
            }
            println!("{}", result.value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            file_a,
            file_b,
            trials,
        } => {
            let left = read_barcode(&file_a, format)?;
            let right = read_barcode(&file_b, format)?;
            Ok(verify(&left, &right, trials)?)
        }
        Command::Gen {
            count,
            dim,
            range,
            inf_prob,
            seed,
        } => {
            if dim == 0 {
                return Err(Failure::usage("--dim must be at least 1"));
            }
            if !(0.0..=1.0).contains(&inf_prob) {
                return Err(Failure::usage("--inf-prob must lie in [0, 1]"));
            }
            if count > 0 && range.0 >= range.1 {
                return Err(Failure::usage("--range must contain two integers"));
            }
            let mut rng = SplitMix64::new(seed);
            let barcode = random_barcode(&mut rng, count, dim, range.0, range.1, inf_prob);
            print!("{}", io::serialize_barcode(&barcode, format));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_barcode(path: &PathBuf, format: Format) -> Result<Barcode, Failure> {
    let content = fs::read_to_string(path)
        .map_err(|err| Failure::usage(format!("cannot read {}: {err}", path.display())))?;
    Ok(io::parse_barcode(&content, format)?)
}

/// Runs the oracle cross-checks and reports PASS/FAIL per check.
fn verify(left: &Barcode, right: &Barcode, trials: u64) -> Result<ExitCode, Failure> {
    left.check_compatible(right)?;
    let mut all_pass = true;

    let mut pair_mismatches = 0usize;
    let mut pairs = 0usize;
    for l in left.bars() {
        for r in right.bars() {
            pairs += 1;
            let formula = l.interleaving_distance(r)?;
            let oracle = oracle_interleaving_distance(l, r)?;
            if formula != oracle {
                pair_mismatches += 1;
                eprintln!("mismatch: formula {formula} vs oracle {oracle} for {l:?} against {r:?}");
            }
        }
    }
    report(
        "interleaving formula vs grid oracle",
        &format!("{pairs} bar pairs"),
        pair_mismatches == 0,
        &mut all_pass,
    );

    if left.len() <= ENUMERATION_LIMIT && right.len() <= ENUMERATION_LIMIT {
        let result = bottleneck_distance(left, right)?;
        let brute = enumerate_bottleneck(left, right)?;
        report(
            "bottleneck search vs enumeration",
            &format!("value {}", result.value),
            result.value == brute,
            &mut all_pass,
        );
    } else {
        println!(
            "SKIP bottleneck search vs enumeration: a side exceeds {ENUMERATION_LIMIT} bars"
        );
    }

    if trials > 0 {
        let dim = left.dim().or(right.dim()).unwrap_or(2);
        let mut rng = SplitMix64::new(trials);
        let mut trial_mismatches = 0usize;
        for _ in 0..trials {
            let r = random_rectangle(&mut rng, dim, -5, 5, 0.1);
            let q = random_rectangle(&mut rng, dim, -5, 5, 0.1);
            if r.interleaving_distance(&q)? != oracle_interleaving_distance(&r, &q)? {
                trial_mismatches += 1;
                eprintln!("mismatch on random pair {r:?} against {q:?}");
            }
        }
        report(
            "random rectangle trials",
            &format!("{trials} pairs, dim {dim}"),
            trial_mismatches == 0,
            &mut all_pass,
        );
    }

    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    })
}

fn report(check: &str, detail: &str, pass: bool, all_pass: &mut bool) {
    if pass {
        println!("PASS {check} ({detail})");
    } else {
        println!("FAIL {check} ({detail})");
        *all_pass = false;
    }
}
