//! Command-line front end. Subcommands map one-to-one onto the library
//! surface: `read`, `corrupt`, `decode`, `encode`, `enumerate`, `verify`,
//! `bounds`. Output is machine-readable (JSON or CSV) or plain text, and
//! identical inputs always produce byte-identical output.

use crate::bounds::{
    log2_pullback_cover_size, max_independent_set, min_pullback_cover, redundancy_lower_bound,
    BoundsError, ConfusabilityGraph, MIS_EXACT_MAX_VERTICES,
};
use crate::channel::{
    corrupt, interleave, read_vector, read_vector_mod2, sub_derivative, validate_read_vector,
    ChannelError, ChannelParams, PropertyViolation, ReadVector, Word,
};
use crate::code::{code_params, decode, locate_error, Code, CodeError, CodeParams, LocateOutcome};
use crate::suites::{
    characterization_suite, cover_suite, decoder_suite, properties_suite, SuiteError, SuiteReport,
    DEFAULT_SEED,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

/// Word lengths past this need `--allow-large`.
const SOFT_GUARD_N: usize = 14;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("{0}")]
    Suite(String),
    #[error("cannot parse read vector entry {0:?}")]
    VectorParse(String),
    #[error("n={n} exceeds the soft guard {guard}; pass --allow-large to proceed")]
    Guard { n: usize, guard: usize },
    #[error("{0}")]
    Usage(String),
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        CliError::Suite(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "readcode",
    version,
    about = "Sliding-window read-vector channel, single-substitution read code, and redundancy bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Properties,
    Characterization,
    Decoder,
    Cover,
}

#[derive(Debug, Args)]
pub struct ReadArgs {
    /// Input word as a bit-string, leftmost bit first
    #[arg(long)]
    pub word: Word,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, default_value_t = 1)]
    pub delta: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CorruptArgs {
    /// Read vector as comma-separated integers (JSON arrays accepted)
    #[arg(long = "read-vector")]
    pub read_vector: String,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, default_value_t = 1)]
    pub delta: usize,
    /// Position to substitute, 1-indexed
    #[arg(long)]
    pub index: usize,
    /// New value in 0..=ell
    #[arg(long)]
    pub value: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long = "read-vector")]
    pub read_vector: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub ell: usize,
    /// Message index to encode
    #[arg(long, conflicts_with = "word")]
    pub index: Option<u64>,
    /// Codeword to rank back into its message index
    #[arg(long)]
    pub word: Option<Word>,
    #[arg(long, default_value_t = false)]
    pub allow_large: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, default_value_t = false)]
    pub allow_large: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteName,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, default_value_t = 1)]
    pub delta: usize,
    /// Run parameter for the cover suite
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = false)]
    pub allow_large: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long = "n-min")]
    pub n_min: usize,
    #[arg(long = "n-max")]
    pub n_max: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = false)]
    pub allow_large: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the read vector, sub-derivatives, and interleaving of a word
    Read(ReadArgs),
    /// Substitute one entry of a read vector
    Corrupt(CorruptArgs),
    /// Run the single-substitution decoder on a read vector
    Decode(DecodeArgs),
    /// Map a message index to a codeword, or a codeword back to its index
    Encode(EncodeArgs),
    /// List all codewords as newline-delimited bit-strings
    Enumerate(EnumerateArgs),
    /// Run a verification suite; exit code 0 iff everything passes
    Verify(VerifyArgs),
    /// Print a CSV table of code sizes, redundancy, cover sizes, and bounds
    Bounds(BoundsArgs),
}

struct CommandOutput {
    stdout: String,
    passed: bool,
}

fn parse_vector(text: &str) -> Result<Vec<i64>, CliError> {
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<i64>().map_err(|_| CliError::VectorParse(tok.to_string()))
        })
        .collect()
}

fn parse_read_vector(text: &str, ell: usize, delta: usize) -> Result<ReadVector, CliError> {
    let values = parse_vector(text)?;
    // Infer the word length from the vector length.
    let n = delta * (values.len() + 1) - ell;
    Ok(ReadVector::from_values(values, ell, delta, n)?)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

fn csv_ints(values: &[i64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct SubDerivativeView {
    alpha: usize,
    entries: Vec<i64>,
}

#[derive(Serialize)]
struct InterleavedView {
    values: Vec<i64>,
    block_lengths: Vec<usize>,
}

#[derive(Serialize)]
struct ReadOutput {
    word: Word,
    n: usize,
    ell: usize,
    delta: usize,
    read_vector: Vec<i64>,
    read_vector_mod2: Vec<u8>,
    sub_derivatives: Vec<SubDerivativeView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interleaved: Option<InterleavedView>,
    violations: Vec<PropertyViolation>,
}

fn cmd_read(args: &ReadArgs) -> Result<CommandOutput, CliError> {
    let params = ChannelParams::new(args.ell, args.delta)?;
    let r = read_vector(&args.word, params)?;
    let subs: Vec<SubDerivativeView> = (0..args.ell / args.delta)
        .map(|alpha| {
            let d = sub_derivative(&r, alpha).expect("alpha in range");
            SubDerivativeView { alpha, entries: d.entries().to_vec() }
        })
        .collect();
    let interleaved = (args.delta == 1).then(|| {
        let il = interleave(&r).expect("delta = 1");
        InterleavedView { values: il.values().to_vec(), block_lengths: il.boundaries().to_vec() }
    });
    let out = ReadOutput {
        word: args.word.clone(),
        n: args.word.len(),
        ell: args.ell,
        delta: args.delta,
        read_vector: r.values().to_vec(),
        read_vector_mod2: read_vector_mod2(&r),
        sub_derivatives: subs,
        interleaved,
        violations: validate_read_vector(&r).violations,
    };
    let stdout = match args.format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!("word: {}\n", out.word);
            s.push_str(&format!("read vector: {}\n", csv_ints(&out.read_vector)));
            for d in &out.sub_derivatives {
                s.push_str(&format!("sub-derivative {}: {}\n", d.alpha, csv_ints(&d.entries)));
            }
            if let Some(il) = &out.interleaved {
                s.push_str(&format!(
                    "interleaved: {} (blocks {})\n",
                    csv_ints(&il.values),
                    il.block_lengths.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",")
                ));
            }
            s
        }
    };
    Ok(CommandOutput { stdout, passed: true })
}

#[derive(Serialize)]
struct CorruptOutput {
    ell: usize,
    delta: usize,
    n: usize,
    index: usize,
    value: i64,
    input: Vec<i64>,
    output: Vec<i64>,
}

fn cmd_corrupt(args: &CorruptArgs) -> Result<CommandOutput, CliError> {
    let r = parse_read_vector(&args.read_vector, args.ell, args.delta)?;
    let noisy = corrupt(&r, args.index, args.value)?;
    let out = CorruptOutput {
        ell: args.ell,
        delta: args.delta,
        n: r.word_len(),
        index: args.index,
        value: args.value,
        input: r.values().to_vec(),
        output: noisy.values().to_vec(),
    };
    let stdout = match args.format {
        Format::Json => json(&out),
        Format::Text => format!("{}\n", csv_ints(&out.output)),
    };
    Ok(CommandOutput { stdout, passed: true })
}

#[derive(Serialize)]
struct DecodeOutput {
    params: CodeParams,
    input: Vec<i64>,
    /// Localization report, absent when the weight pattern is inconsistent.
    localization: Option<LocateOutcome>,
    outcome: crate::code::DecodeOutcome,
}

fn cmd_decode(args: &DecodeArgs) -> Result<CommandOutput, CliError> {
    let params = code_params(args.n, args.ell)?;
    let values = parse_vector(&args.read_vector)?;
    let r = ReadVector::from_values(values, args.ell, 1, args.n)?;
    let localization = locate_error(&r, &params).ok();
    let outcome = decode(&r, &params);
    let out = DecodeOutput { params, input: r.values().to_vec(), localization, outcome };
    let stdout = match args.format {
        Format::Json => json(&out),
        Format::Text => match &out.outcome {
            crate::code::DecodeOutcome::NoError { word } => format!("no error: {word}\n"),
            crate::code::DecodeOutcome::Corrected { word, read_index, error_value } => {
                format!("corrected: {word} (read index {read_index}, error {error_value:+})\n")
            }
            crate::code::DecodeOutcome::Failure { reason } => format!("failure: {reason}\n"),
        },
    };
    Ok(CommandOutput { stdout, passed: true })
}

#[derive(Serialize)]
struct EncodeOutput {
    params: CodeParams,
    code_size: u64,
    index: u64,
    word: Word,
}

fn cmd_encode(args: &EncodeArgs) -> Result<CommandOutput, CliError> {
    guard_n(args.n, args.allow_large)?;
    let params = code_params(args.n, args.ell)?;
    let code = Code::new(params)?;
    let (index, word) = match (&args.index, &args.word) {
        (Some(i), None) => (*i, code.encode(*i)?.clone()),
        (None, Some(w)) => (code.decode_index(w)?, w.clone()),
        _ => {
            return Err(CliError::Usage(
                "exactly one of --index or --word is required".to_string(),
            ))
        }
    };
    let out = EncodeOutput { params, code_size: code.size(), index, word };
    let stdout = match args.format {
        Format::Json => json(&out),
        Format::Text => format!("{} {}\n", out.index, out.word),
    };
    Ok(CommandOutput { stdout, passed: true })
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<CommandOutput, CliError> {
    guard_n(args.n, args.allow_large)?;
    let params = code_params(args.n, args.ell)?;
    let code = Code::new(params)?;
    let mut stdout = String::new();
    for w in code.words() {
        stdout.push_str(&w.to_string());
        stdout.push('\n');
    }
    Ok(CommandOutput { stdout, passed: true })
}

fn cmd_verify(args: &VerifyArgs) -> Result<CommandOutput, CliError> {
    guard_n(args.n, args.allow_large)?;
    let report: SuiteReport = match args.suite {
        SuiteName::Properties => properties_suite(args.n, args.ell, args.delta, args.seed)?,
        SuiteName::Characterization => characterization_suite(args.n, args.ell)?,
        SuiteName::Decoder => decoder_suite(args.n, args.ell)?,
        SuiteName::Cover => cover_suite(args.n, args.ell, args.p)?,
    };
    let stdout = match args.format {
        Format::Json => json(&report),
        Format::Text => report.render_text(),
    };
    Ok(CommandOutput { stdout, passed: report.passed() })
}

fn cmd_bounds(args: &BoundsArgs) -> Result<CommandOutput, CliError> {
    if args.n_min > args.n_max {
        return Err(CliError::Usage("--n-min must not exceed --n-max".to_string()));
    }
    guard_n(args.n_max, args.allow_large)?;
    let mut stdout =
        String::from("n,ell,p,cover_size,log2_cover_size,mis,code_size,redundancy,lower_bound\n");
    for n in args.n_min..=args.n_max {
        let (p, cover) = min_pullback_cover(n, args.ell);
        let log2_cover = log2_pullback_cover_size(n, args.ell, p);
        let mis = if (1usize << n) <= MIS_EXACT_MAX_VERTICES && args.ell >= 3 {
            let g = ConfusabilityGraph::build(n, args.ell)?;
            max_independent_set(&g).size.to_string()
        } else {
            String::new()
        };
        let (code_size, redundancy) = if n >= args.ell {
            let code = Code::new(code_params(n, args.ell)?)?;
            (code.size().to_string(), format!("{:.6}", code.redundancy()))
        } else {
            (String::new(), String::new())
        };
        let lb = redundancy_lower_bound(n as u64, args.epsilon)?;
        stdout.push_str(&format!(
            "{n},{},{p},{cover},{log2_cover:.6},{mis},{code_size},{redundancy},{:.6}\n",
            args.ell, lb.bound
        ));
    }
    Ok(CommandOutput { stdout, passed: true })
}

fn guard_n(n: usize, allow_large: bool) -> Result<(), CliError> {
    if n > SOFT_GUARD_N && !allow_large {
        return Err(CliError::Guard { n, guard: SOFT_GUARD_N });
    }
    Ok(())
}

fn execute(command: &Command) -> Result<CommandOutput, CliError> {
    match command {
        Command::Read(args) => cmd_read(args),
        Command::Corrupt(args) => cmd_corrupt(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Encode(args) => cmd_encode(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bounds(args) => cmd_bounds(args),
    }
}

/// Entry point for the binary: parses arguments, runs the command, prints its
/// output, and returns the process exit code (0 only when all requested
/// checks passed).
pub fn run() -> i32 {
    if let Ok(threads) = std::env::var("READCODE_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
