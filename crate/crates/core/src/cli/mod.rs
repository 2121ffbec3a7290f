//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage errors, 3 when the input data fail
//! validation or cannot be read. Output files are written to a temporary
//! file next to the destination and renamed into place, so a failed run
//! never leaves a partial file.

mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, BenchConfig};
use crate::binning::BinningConfig;
use crate::data::{add_gaussian_noise, load_csv, CsvOptions, LabelColumn, LoadedCsv, TargetKind};
use crate::error::Error;
use crate::eval::{
    generate_classification, generate_regression, ClassificationSpec, RegressionSpec,
};
use crate::methods::{score_features, Method, MethodScores};
use crate::ranking::{detect_elbow, select_top_k, ElbowOptions, ElbowReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "splitscore",
    version,
    about = "Supervised feature selection by optimized split loss"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score and rank every feature.
    Score(ScoreArgs),
    /// Write a reduced CSV holding only the selected features and the label.
    Select(SelectArgs),
    /// Emit per-threshold loss curves and the ranked score curve.
    Curve(CurveArgs),
    /// Compare all methods by downstream accuracy or MSE.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetKindArg {
    /// Numeric labels become continuous for methods that accept either;
    /// otherwise the method decides.
    Auto,
    Categorical,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ElbowMode {
    Early,
    Late,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Classification,
    Regression,
}

fn parse_bins(s: &str) -> Result<usize, String> {
    let bins: usize = s.parse().map_err(|_| format!("invalid bin count {s:?}"))?;
    if bins < 2 {
        return Err("bins must be ≥ 2".into());
    }
    Ok(bins)
}

fn parse_delimiter(s: &str) -> Result<u8, String> {
    match s.as_bytes() {
        [b] => Ok(*b),
        _ if s == "\\t" || s == "tab" => Ok(b'\t'),
        _ => Err(format!("delimiter must be a single byte, got {s:?}")),
    }
}

fn parse_sigma(s: &str) -> Result<f64, String> {
    let sigma: f64 = s.parse().map_err(|_| format!("invalid sigma {s:?}"))?;
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err("noise sigma must be non-negative".into());
    }
    Ok(sigma)
}

/// Options shared by every command that reads a labelled CSV file.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Input CSV with a header row.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Label column, by header name or zero-based position.
    #[arg(long, short = 'l', default_value = "label")]
    pub label: String,
    #[arg(long, value_enum, default_value_t = TargetKindArg::Auto)]
    pub target_kind: TargetKindArg,
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    pub delimiter: u8,
}

#[derive(Debug, Clone, Args)]
pub struct ScoringArgs {
    #[arg(long, short, value_enum)]
    pub method: Method,
    /// Number of uniform bins per feature range.
    #[arg(long, short, default_value = "16", value_parser = parse_bins)]
    pub bins: usize,
    /// Perturb features with N(0, sigma^2) noise before scoring.
    #[arg(long, default_value = "0", value_parser = parse_sigma)]
    pub noise_sigma: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub scoring: ScoringArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SelectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub scoring: ScoringArgs,
    /// Keep the top k features.
    #[arg(
        long,
        short,
        conflicts_with = "elbow",
        required_unless_present = "elbow"
    )]
    pub k: Option<usize>,
    /// Keep the features before the early or late elbow.
    #[arg(long, value_enum)]
    pub elbow: Option<ElbowMode>,
    /// Reduced CSV to write.
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub scoring: ScoringArgs,
    /// Feature index whose threshold-vs-loss curve to emit (repeatable).
    #[arg(long = "feature", short = 'f')]
    pub features: Vec<usize>,
    /// Moving-average window applied before elbow detection.
    #[arg(long)]
    pub smoothing: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Training CSV; synthetic data are generated when omitted.
    #[arg(long, requires = "test")]
    pub train: Option<PathBuf>,
    /// Test CSV.
    #[arg(long, requires = "train")]
    pub test: Option<PathBuf>,
    #[arg(long, short = 'l', default_value = "label")]
    pub label: String,
    #[arg(long, value_enum, default_value_t = TargetKindArg::Auto)]
    pub target_kind: TargetKindArg,
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    pub delimiter: u8,
    #[arg(long, value_enum, default_value_t = Task::Classification)]
    pub task: Task,
    /// Samples per class (synthetic classification).
    #[arg(long, default_value_t = 500)]
    pub n_per_class: usize,
    /// Samples (synthetic regression).
    #[arg(long, default_value_t = 1000)]
    pub n_samples: usize,
    #[arg(long, default_value_t = 5)]
    pub informative: usize,
    #[arg(long, default_value_t = 45)]
    pub noise_dims: usize,
    /// Class mean separation in standard deviations.
    #[arg(long, default_value_t = 6.0)]
    pub separation: f64,
    /// Regression coefficient shared by every informative feature.
    #[arg(long, default_value_t = 1.0)]
    pub coef: f64,
    /// Methods to compare (repeatable); all compatible methods by default.
    #[arg(long = "method", short, value_enum)]
    pub methods: Vec<Method>,
    #[arg(long, short, default_value = "16", value_parser = parse_bins)]
    pub bins: usize,
    /// Noise added to the noisy copy of the data.
    #[arg(long, default_value = "0", value_parser = parse_sigma)]
    pub noise_sigma: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::TooFewBins(_) | Error::KOutOfRange { .. } | Error::InvalidArgument(_) => {
                EXIT_USAGE
            }
            _ => EXIT_DATA,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {}", err.message);
            err.code
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Score(args) => cmd_score(args),
        Command::Select(args) => cmd_select(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn resolve_kind(requested: TargetKindArg, method: Option<Method>) -> (TargetKind, bool) {
    match requested {
        TargetKindArg::Categorical => (TargetKind::Categorical, false),
        TargetKindArg::Continuous => (TargetKind::Continuous, false),
        TargetKindArg::Auto => match method.and_then(Method::required_target) {
            Some(kind) => (kind, false),
            // try continuous, fall back to categorical on text labels
            None => (TargetKind::Continuous, true),
        },
    }
}

fn load_labelled(
    path: &Path,
    label: &str,
    requested: TargetKindArg,
    delimiter: u8,
    method: Option<Method>,
) -> CliResult<LoadedCsv> {
    let options = CsvOptions { delimiter };
    let label = LabelColumn::Name(label.to_owned());
    let (kind, fallback) = resolve_kind(requested, method);
    let label_is_text = |err: &Error, loaded_label: Option<usize>| matches!(err, Error::NonNumeric { col, .. } if Some(*col) == loaded_label);
    match load_csv(path, label.clone(), kind, options) {
        Ok(loaded) => Ok(loaded),
        Err(err) => {
            let label_pos = label_position(path, &label, delimiter);
            if kind == TargetKind::Continuous && label_is_text(&err, label_pos) {
                if fallback {
                    return Ok(load_csv(path, label, TargetKind::Categorical, options)?);
                }
                if let Some(method) = method {
                    return Err(Error::TargetKind {
                        method: method.name(),
                        expected: "continuous",
                    }
                    .into());
                }
            }
            Err(err.into())
        }
    }
}

fn label_position(path: &Path, label: &LabelColumn, delimiter: u8) -> Option<usize> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .from_path(path)
        .ok()?;
    let headers = rdr.headers().ok()?;
    match label {
        LabelColumn::Index(i) => Some(*i),
        LabelColumn::Name(name) => headers
            .iter()
            .position(|h| h == name)
            .or_else(|| name.parse().ok()),
    }
}

struct Scored {
    loaded: LoadedCsv,
    scores: MethodScores,
    bins: BinningConfig,
}

fn load_and_score(input: &InputArgs, scoring: &ScoringArgs) -> CliResult<Scored> {
    let bins = BinningConfig::new(scoring.bins)?;
    let loaded = load_labelled(
        &input.input,
        &input.label,
        input.target_kind,
        input.delimiter,
        Some(scoring.method),
    )?;
    scoring.method.check_target(&loaded.target)?;
    let matrix = add_gaussian_noise(&loaded.matrix, scoring.noise_sigma, scoring.seed)?;
    let scores = score_features(scoring.method, &matrix, &loaded.target, bins)?;
    Ok(Scored {
        loaded,
        scores,
        bins,
    })
}

fn elbow_if_possible(
    scores: &MethodScores,
    options: ElbowOptions,
) -> CliResult<Option<ElbowReport>> {
    let ranked = scores.rank()?;
    if ranked.len() < 3 {
        return Ok(None);
    }
    Ok(Some(crate::ranking::detect_elbow_with(&ranked, options)?))
}

pub fn cmd_score(args: &ScoreArgs) -> CliResult<()> {
    let scored = load_and_score(&args.input, &args.scoring)?;
    let ranked = scored.scores.rank()?;
    let elbow = elbow_if_possible(&scored.scores, ElbowOptions::default())?;
    let provenance =
        output::Provenance::new("score", &args.input, &args.scoring, &scored, elbow.as_ref());
    let body = match args.output.format {
        Format::Csv => output::score_csv(&scored, &ranked)?,
        Format::Json => output::score_json(&provenance, &scored, &ranked, elbow.as_ref())?,
    };
    output::emit(args.output.output.as_deref(), &body)
}

pub fn cmd_select(args: &SelectArgs) -> CliResult<()> {
    let scored = load_and_score(&args.input, &args.scoring)?;
    let ranked = scored.scores.rank()?;
    let k = match (args.k, args.elbow) {
        (Some(k), _) => k,
        (None, Some(mode)) => {
            let elbow = detect_elbow(&ranked)?;
            match mode {
                ElbowMode::Early => elbow.early_index,
                ElbowMode::Late => elbow.late_index,
            }
        }
        (None, None) => return Err(CliError::usage("either --k or --elbow is required")),
    };
    let selection = select_top_k(&ranked, k)?;
    let mut columns: Vec<usize> = selection.set.iter().copied().collect();
    columns.sort_unstable();
    let body = output::reduced_csv(&scored.loaded, &columns, args.input.delimiter)?;
    output::emit(Some(&args.output), &body)?;
    let names: Vec<&str> = selection
        .ordered
        .iter()
        .map(|&i| scored.loaded.feature_names[i].as_str())
        .collect();
    println!(
        "selected K={k} method={} features={}",
        args.scoring.method,
        names.join(",")
    );
    Ok(())
}

pub fn cmd_curve(args: &CurveArgs) -> CliResult<()> {
    let scored = load_and_score(&args.input, &args.scoring)?;
    let p = scored.loaded.matrix.n_features();
    if !args.features.is_empty() && !args.scoring.method.has_threshold() {
        return Err(CliError::usage(
            "per-feature loss curves need --method dft or rft",
        ));
    }
    if let Some(&bad) = args.features.iter().find(|&&f| f >= p) {
        return Err(Error::FeatureOutOfRange {
            index: bad,
            n_features: p,
        }
        .into());
    }
    let ranked = scored.scores.rank()?;
    let elbow = elbow_if_possible(
        &scored.scores,
        ElbowOptions {
            smoothing_window: args.smoothing,
        },
    )?;
    let provenance =
        output::Provenance::new("curve", &args.input, &args.scoring, &scored, elbow.as_ref());
    let body = match args.output.format {
        Format::Csv => output::curve_csv(&scored, &args.features, &ranked, elbow.as_ref())?,
        Format::Json => output::curve_json(
            &provenance,
            &scored,
            &args.features,
            &ranked,
            elbow.as_ref(),
        )?,
    };
    output::emit(args.output.output.as_deref(), &body)
}

pub fn cmd_bench(args: &BenchArgs) -> CliResult<()> {
    let bins = BinningConfig::new(args.bins)?;
    let (train, test, informative, source) = match (&args.train, &args.test) {
        (Some(train), Some(test)) => {
            let method = args.methods.first().copied();
            let load = |path: &Path| -> CliResult<crate::eval::Dataset> {
                let loaded =
                    load_labelled(path, &args.label, args.target_kind, args.delimiter, method)?;
                Ok(crate::eval::Dataset::new(loaded.matrix, loaded.target)?)
            };
            (load(train)?, load(test)?, None, "files")
        }
        _ => {
            let informative: Vec<usize> = (0..args.informative).collect();
            let (train, test) = match args.task {
                Task::Classification => {
                    let spec = ClassificationSpec {
                        n_per_class: args.n_per_class,
                        n_informative: args.informative,
                        n_noise: args.noise_dims,
                        separation: args.separation,
                        seed: args.seed,
                    };
                    let test_spec = ClassificationSpec {
                        seed: args.seed.wrapping_add(1_000_003),
                        ..spec.clone()
                    };
                    (
                        generate_classification(&spec)?,
                        generate_classification(&test_spec)?,
                    )
                }
                Task::Regression => {
                    let spec = RegressionSpec {
                        n_samples: args.n_samples,
                        coefficients: vec![args.coef; args.informative],
                        n_noise: args.noise_dims,
                        seed: args.seed,
                    };
                    let test_spec = RegressionSpec {
                        seed: args.seed.wrapping_add(1_000_003),
                        ..spec.clone()
                    };
                    (
                        generate_regression(&spec)?,
                        generate_regression(&test_spec)?,
                    )
                }
            };
            (train, test, Some(informative), "synthetic")
        }
    };
    for method in &args.methods {
        method.check_target(&train.target)?;
    }
    let config = BenchConfig {
        bins,
        noise_sigma: args.noise_sigma,
        seed: args.seed,
        methods: args.methods.clone(),
    };
    let report = run_bench(&train, &test, informative.as_deref(), &config)?;
    let body = match args.output.format {
        Format::Csv => output::bench_csv(&report)?,
        Format::Json => output::bench_json(args, source, &report)?,
    };
    output::emit(args.output.output.as_deref(), &body)
}
