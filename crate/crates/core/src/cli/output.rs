use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use super::{BenchArgs, CliError, CliResult, InputArgs, Scored, ScoringArgs};
use crate::bench::BenchReport;
use crate::data::{LoadedCsv, TargetKind};
use crate::ranking::{ElbowReport, RankedFeatures};

pub const TOOL: &str = "splitscore";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn io_error(path: &Path, err: std::io::Error) -> CliError {
    CliError {
        code: super::EXIT_DATA,
        message: format!("cannot write {}: {err}", path.display()),
    }
}

/// Writes `body` to `path` atomically (temp file + rename), or to stdout.
pub fn emit(path: Option<&Path>, body: &str) -> CliResult<()> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(body.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| io_error(Path::new("<stdout>"), e));
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_error(path, e))?;
    tmp.write_all(body.as_bytes())
        .and_then(|_| tmp.flush())
        .map_err(|e| io_error(path, e))?;
    tmp.persist(path).map_err(|e| io_error(path, e.error))?;
    Ok(())
}

fn csv_error(err: impl std::fmt::Display) -> CliError {
    CliError {
        code: super::EXIT_DATA,
        message: format!("cannot format csv output: {err}"),
    }
}

fn finish_csv(writer: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = writer.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

fn json_string(value: &impl Serialize) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(csv_error)?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub method: String,
    pub bins: usize,
    pub seed: u64,
    pub noise_sigma: f64,
    pub input: String,
    pub label_column: String,
    pub target_kind: TargetKind,
    pub n_samples: usize,
    pub n_features: usize,
    pub elbow_early: Option<usize>,
    pub elbow_late: Option<usize>,
}

impl Provenance {
    pub(super) fn new(
        command: &'static str,
        input: &InputArgs,
        scoring: &ScoringArgs,
        scored: &Scored,
        elbow: Option<&ElbowReport>,
    ) -> Self {
        Self {
            tool: TOOL,
            version: VERSION,
            command,
            method: scoring.method.to_string(),
            bins: scored.bins.n_bins(),
            seed: scoring.seed,
            noise_sigma: scoring.noise_sigma,
            input: input.input.display().to_string(),
            label_column: scored.loaded.label_name.clone(),
            target_kind: scored.loaded.target.kind(),
            n_samples: scored.loaded.matrix.n_samples(),
            n_features: scored.loaded.matrix.n_features(),
            elbow_early: elbow.map(|e| e.early_index),
            elbow_late: elbow.map(|e| e.late_index),
        }
    }
}

#[derive(Debug, Serialize)]
struct FeatureRow<'a> {
    rank: usize,
    feature_index: usize,
    feature_name: &'a str,
    value: f64,
    threshold: Option<f64>,
    degenerate: bool,
}

fn feature_rows<'a>(scored: &'a Scored, ranked: &RankedFeatures) -> Vec<FeatureRow<'a>> {
    ranked
        .order
        .iter()
        .enumerate()
        .map(|(r, &i)| FeatureRow {
            rank: r + 1,
            feature_index: i,
            feature_name: &scored.loaded.feature_names[i],
            value: scored.scores.values[i],
            threshold: scored.scores.thresholds[i],
            degenerate: scored.scores.degenerate[i],
        })
        .collect()
}

pub(super) fn score_csv(scored: &Scored, ranked: &RankedFeatures) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "rank",
        "feature_index",
        "feature_name",
        "value",
        "threshold",
        "degenerate",
    ])
    .map_err(csv_error)?;
    for row in feature_rows(scored, ranked) {
        w.write_record([
            row.rank.to_string(),
            row.feature_index.to_string(),
            row.feature_name.to_owned(),
            row.value.to_string(),
            row.threshold.map(|t| t.to_string()).unwrap_or_default(),
            row.degenerate.to_string(),
        ])
        .map_err(csv_error)?;
    }
    finish_csv(w)
}

pub(super) fn score_json(
    provenance: &Provenance,
    scored: &Scored,
    ranked: &RankedFeatures,
    elbow: Option<&ElbowReport>,
) -> CliResult<String> {
    json_string(&json!({
        "provenance": provenance,
        "polarity": ranked.polarity,
        "features": feature_rows(scored, ranked),
        "elbow": elbow,
    }))
}

fn annotation(rank: usize, elbow: Option<&ElbowReport>) -> &'static str {
    match elbow {
        Some(e) if e.early_index == rank && e.late_index == rank => "early+late",
        Some(e) if e.early_index == rank => "early",
        Some(e) if e.late_index == rank => "late",
        _ => "",
    }
}

pub(super) fn curve_csv(
    scored: &Scored,
    features: &[usize],
    ranked: &RankedFeatures,
    elbow: Option<&ElbowReport>,
) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "section",
        "rank",
        "feature_index",
        "feature_name",
        "threshold",
        "value",
        "annotation",
    ])
    .map_err(csv_error)?;
    let splits = scored.scores.splits.as_deref().unwrap_or_default();
    for &f in features {
        let name = &scored.loaded.feature_names[f];
        for point in &splits[f].loss_curve {
            let optimal = if point.threshold == splits[f].optimal_threshold {
                "optimal"
            } else {
                ""
            };
            w.write_record([
                "loss_curve",
                "",
                &f.to_string(),
                name,
                &point.threshold.to_string(),
                &point.loss.to_string(),
                optimal,
            ])
            .map_err(csv_error)?;
        }
    }
    for (r, (&i, &v)) in ranked.order.iter().zip(&ranked.sorted_values).enumerate() {
        w.write_record([
            "ranked",
            &(r + 1).to_string(),
            &i.to_string(),
            &scored.loaded.feature_names[i],
            "",
            &v.to_string(),
            annotation(r + 1, elbow),
        ])
        .map_err(csv_error)?;
    }
    finish_csv(w)
}

pub(super) fn curve_json(
    provenance: &Provenance,
    scored: &Scored,
    features: &[usize],
    ranked: &RankedFeatures,
    elbow: Option<&ElbowReport>,
) -> CliResult<String> {
    let splits = scored.scores.splits.as_deref().unwrap_or_default();
    let curves: Vec<_> = features
        .iter()
        .map(|&f| {
            let s = &splits[f];
            json!({
                "feature_index": f,
                "feature_name": scored.loaded.feature_names[f],
                "bins": scored.bins.n_bins(),
                "degenerate": s.degenerate,
                "optimal_threshold": s.optimal_threshold,
                "optimal_loss": s.optimal_loss,
                "points": s.loss_curve,
            })
        })
        .collect();
    let points: Vec<_> = ranked
        .order
        .iter()
        .zip(&ranked.sorted_values)
        .enumerate()
        .map(|(r, (&i, &v))| {
            json!({
                "rank": r + 1,
                "feature_index": i,
                "feature_name": scored.loaded.feature_names[i],
                "value": v,
                "annotation": annotation(r + 1, elbow),
            })
        })
        .collect();
    json_string(&json!({
        "provenance": provenance,
        "feature_curves": curves,
        "ranked_curve": {
            "polarity": ranked.polarity,
            "points": points,
            "elbow": elbow,
        },
    }))
}

/// Selected feature columns (in file order) followed by the label column
/// with its original text.
pub(super) fn reduced_csv(
    loaded: &LoadedCsv,
    columns: &[usize],
    delimiter: u8,
) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(Vec::new());
    let mut header: Vec<&str> = columns
        .iter()
        .map(|&c| loaded.feature_names[c].as_str())
        .collect();
    header.push(&loaded.label_name);
    w.write_record(&header).map_err(csv_error)?;
    for (row, label) in loaded.raw_labels.iter().enumerate() {
        let mut record: Vec<String> = columns
            .iter()
            .map(|&c| loaded.matrix.get(row, c).to_string())
            .collect();
        record.push(label.clone());
        w.write_record(&record).map_err(csv_error)?;
    }
    finish_csv(w)
}

pub(super) fn bench_csv(report: &BenchReport) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "method",
        "selection",
        "k_clean",
        "metric_clean",
        "k_noisy",
        "metric_noisy",
        "recall_clean",
        "recall_noisy",
    ])
    .map_err(csv_error)?;
    let recall = |m| report.recovery.iter().find(|r| r.method == m);
    for row in &report.rows {
        let rec = recall(row.method);
        w.write_record([
            row.method.to_string(),
            row.selection.to_owned(),
            row.clean.k.to_string(),
            row.clean.value.to_string(),
            row.noisy.k.to_string(),
            row.noisy.value.to_string(),
            rec.map(|r| r.clean.to_string()).unwrap_or_default(),
            rec.map(|r| r.noisy.to_string()).unwrap_or_default(),
        ])
        .map_err(csv_error)?;
    }
    w.write_record([
        "all".to_owned(),
        "all".to_owned(),
        report.all_features.k.to_string(),
        report.all_features.value.to_string(),
        report.all_features_noisy.k.to_string(),
        report.all_features_noisy.value.to_string(),
        String::new(),
        String::new(),
    ])
    .map_err(csv_error)?;
    finish_csv(w)
}

pub(super) fn bench_json(
    args: &BenchArgs,
    source: &str,
    report: &BenchReport,
) -> CliResult<String> {
    json_string(&json!({
        "provenance": {
            "tool": TOOL,
            "version": VERSION,
            "command": "bench",
            "source": source,
            "task": match report.metric {
                crate::eval::Metric::Accuracy => "classification",
                crate::eval::Metric::Mse => "regression",
            },
            "bins": args.bins,
            "seed": args.seed,
            "noise_sigma": args.noise_sigma,
            "n_features": report.n_features,
        },
        "report": report,
    }))
}
