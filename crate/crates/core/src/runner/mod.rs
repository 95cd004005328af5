//! Batch orchestration behind the command-line tool: read a corpus,
//! summarize, export features, evaluate against references.
//!
//! Documents are processed independently on a bounded worker pool and all
//! output is written afterwards in document-id order, so results do not
//! depend on the number of workers.

mod config;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use config::{parse_methods, parse_weights, ConfigFile, RunConfig, DEFAULT_BASELINE_WORDS};
pub use report::{render_table, MethodReport, Report};

use crate::extract::{lead_baseline, render_summary, select_by_budget, select_sentences, Selection, Summary};
use crate::features::{extract_features, FeatureVector, FEATURE_NAMES};
use crate::fuzzy::{default_system, sentence_importance_system, FuzzyError, FuzzySystem};
use crate::preprocess::{build_document, strip_tags, Document, RawDocument, Stopwords, TitleSource};
use crate::rouge::{aggregate, rouge_1, DocumentScore, RougeConfig};
use crate::scoring::{score_all_fuzzy, score_all_gsm, GsmWeights, Method};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("rule file {}: {source}", path.display())]
    Rules { path: PathBuf, source: FuzzyError },
    #[error("missing files: {0}")]
    MissingFile(String),
}

impl RunError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        RunError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        }
    }
}

/// A document that could not be processed; the run carries on without it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocFailure {
    pub doc_id: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOutcome {
    pub processed: usize,
    pub failures: Vec<DocFailure>,
    pub written: Vec<PathBuf>,
}

impl RunOutcome {
    /// 0 when every document went through, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            1
        }
    }
}

/// Exit code for fatal configuration and parse errors.
pub const EXIT_FATAL: i32 = 2;

/// `(doc_id, path)` for every `.txt` file in the input directories (and
/// every file given directly), sorted by id. The id is the file stem.
pub fn list_corpus(inputs: &[PathBuf]) -> Result<Vec<(String, PathBuf)>, RunError> {
    let mut docs: BTreeMap<String, PathBuf> = BTreeMap::new();
    let mut add = |path: PathBuf| -> Result<(), RunError> {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        if let Some(prev) = docs.insert(id.clone(), path.clone()) {
            return Err(RunError::Config(format!(
                "document id `{id}` is used by both {} and {}",
                prev.display(),
                path.display()
            )));
        }
        Ok(())
    };
    for input in inputs {
        if input.is_dir() {
            let entries = fs::read_dir(input).map_err(|e| RunError::io(input, e))?;
            for entry in entries {
                let path = entry.map_err(|e| RunError::io(input, e))?.path();
                if path.is_file() && path.extension().is_some_and(|e| e == "txt") {
                    add(path)?;
                }
            }
        } else if input.is_file() {
            add(input.clone())?;
        } else {
            return Err(RunError::Io {
                path: input.clone(),
                message: "no such file or directory".into(),
            });
        }
    }
    Ok(docs.into_iter().collect())
}

fn load_stopwords(config: &RunConfig) -> Result<Stopwords, RunError> {
    match &config.stopword_file {
        None => Ok(Stopwords::english()),
        Some(p) => fs::read_to_string(p)
            .map(|t| Stopwords::parse(&t))
            .map_err(|e| RunError::io(p, e)),
    }
}

fn load_system(config: &RunConfig) -> Result<FuzzySystem<f64>, RunError> {
    match &config.rule_file {
        None => Ok(default_system()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| RunError::io(p, e))?;
            sentence_importance_system(&text).map_err(|source| RunError::Rules {
                path: p.clone(),
                source,
            })
        }
    }
}

fn load_document(doc_id: &str, path: &Path, config: &RunConfig, stopwords: &Stopwords) -> Result<Document, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let raw = if config.strip_tags {
        let text = std::str::from_utf8(&bytes).map_err(|e| {
            format!(
                "{}: not valid UTF-8 (invalid byte at offset {})",
                path.display(),
                e.valid_up_to()
            )
        })?;
        RawDocument::new(doc_id, &strip_tags(text), &config.title)
    } else {
        RawDocument::from_bytes(doc_id, &bytes, &config.title)
    }
    .map_err(|e| e.to_string())?;
    build_document(&raw, stopwords).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Sidecar<'a> {
    doc_id: &'a str,
    method: Method,
    selection: Selection,
    selected_indices: &'a [usize],
    scores: &'a [f64],
}

/// Output file name of a summary: `<doc_id>.<method>.sum.txt`.
pub fn summary_file_name(doc_id: &str, method: Method) -> String {
    format!("{doc_id}.{method}.sum.txt")
}

fn sidecar_file_name(doc_id: &str, method: Method) -> String {
    format!("{doc_id}.{method}.json")
}

/// Summaries of one document for each requested method.
pub fn summarize_document(
    document: &Document,
    config: &RunConfig,
    system: &FuzzySystem<f64>,
) -> Result<Vec<Summary<f64>>, String> {
    let features = extract_features::<f64>(document);
    let weights = match config.weights {
        Some(w) => GsmWeights::new(w).ok_or("invalid weights")?,
        None => GsmWeights::default(),
    };
    let mut out = Vec::new();
    for &method in &config.methods {
        let scores = match method {
            Method::Baseline => {
                out.push(lead_baseline(document, config.baseline_words));
                continue;
            }
            Method::Gsm => score_all_gsm(&features, &weights),
            Method::Fuzzy => score_all_fuzzy(&features, system).map_err(|e| e.to_string())?,
        };
        let mut summary = match config.selection {
            Selection::Rate(r) => select_sentences(&document.id, &scores, r),
            Selection::BudgetWords(b) => select_by_budget(document, &scores, b),
        }
        .map_err(|e| e.to_string())?;
        summary.text = render_summary(&summary, document).map_err(|e| e.to_string())?;
        out.push(summary);
    }
    Ok(out)
}

fn summary_files(summaries: &[Summary<f64>]) -> Result<Vec<(String, String)>, String> {
    let mut files = Vec::new();
    for s in summaries {
        files.push((summary_file_name(&s.doc_id, s.method), format!("{}\n", s.text)));
        let sidecar = Sidecar {
            doc_id: &s.doc_id,
            method: s.method,
            selection: s.selection,
            selected_indices: &s.selected_indices,
            scores: &s.scores,
        };
        let json = serde_json::to_string_pretty(&sidecar).map_err(|e| e.to_string())?;
        files.push((sidecar_file_name(&s.doc_id, s.method), json + "\n"));
    }
    Ok(files)
}

/// A document id with its result or error message.
type PerDoc<T> = (String, Result<T, String>);

fn pool(workers: usize) -> Result<rayon::ThreadPool, RunError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| RunError::Config(format!("worker pool: {e}")))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), RunError> {
    fs::write(path, contents).map_err(|e| RunError::io(path, e))
}

/// Summarizes every document of the corpus with every configured method.
///
/// Rules, stopwords and configuration are checked before any document is
/// read; a failure there is fatal. Per-document failures are collected.
pub fn run_summarize(config: &RunConfig) -> Result<RunOutcome, RunError> {
    config.validate()?;
    let stopwords = load_stopwords(config)?;
    let system = load_system(config)?;
    let corpus = list_corpus(&config.inputs)?;
    fs::create_dir_all(&config.out_dir).map_err(|e| RunError::io(&config.out_dir, e))?;

    let results: Vec<PerDoc<Vec<(String, String)>>> = pool(config.workers)?.install(|| {
        corpus
            .par_iter()
            .map(|(id, path)| {
                let files = load_document(id, path, config, &stopwords)
                    .and_then(|doc| summarize_document(&doc, config, &system))
                    .and_then(|s| summary_files(&s));
                (id.clone(), files)
            })
            .collect()
    });

    let mut outcome = RunOutcome::default();
    for (doc_id, result) in results {
        match result {
            Ok(files) => {
                for (name, contents) in files {
                    let path = config.out_dir.join(name);
                    write_file(&path, contents.as_bytes())?;
                    outcome.written.push(path);
                }
                outcome.processed += 1;
            }
            Err(message) => outcome.failures.push(DocFailure { doc_id, message }),
        }
    }
    Ok(outcome)
}

/// CSV header of the feature export.
pub fn feature_csv_header() -> Vec<&'static str> {
    let mut h = vec!["doc_id", "sentence_index"];
    h.extend(FEATURE_NAMES);
    h
}

/// Writes feature rows as CSV, documents in the given order.
pub fn write_feature_csv<W: std::io::Write>(
    writer: W,
    rows: &[(String, Vec<FeatureVector<f64>>)],
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(feature_csv_header())?;
    for (doc_id, vectors) in rows {
        for (i, v) in vectors.iter().enumerate() {
            let mut record = vec![doc_id.clone(), i.to_string()];
            record.extend(v.to_array().iter().map(|x| x.to_string()));
            w.write_record(&record)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Exports the feature matrix of every document to `out_csv`.
pub fn run_features(config: &RunConfig, out_csv: &Path) -> Result<RunOutcome, RunError> {
    config.validate()?;
    let stopwords = load_stopwords(config)?;
    let corpus = list_corpus(&config.inputs)?;
    let results: Vec<PerDoc<Vec<FeatureVector<f64>>>> = pool(config.workers)?.install(|| {
        corpus
            .par_iter()
            .map(|(id, path)| {
                let features = load_document(id, path, config, &stopwords).map(|d| extract_features(&d));
                (id.clone(), features)
            })
            .collect()
    });

    let mut outcome = RunOutcome::default();
    let mut rows = Vec::new();
    for (doc_id, result) in results {
        match result {
            Ok(v) => {
                rows.push((doc_id, v));
                outcome.processed += 1;
            }
            Err(message) => outcome.failures.push(DocFailure { doc_id, message }),
        }
    }
    if let Some(parent) = out_csv.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| RunError::io(parent, e))?;
    }
    let file = fs::File::create(out_csv).map_err(|e| RunError::io(out_csv, e))?;
    write_feature_csv(file, &rows).map_err(|e| RunError::Io {
        path: out_csv.to_path_buf(),
        message: e.to_string(),
    })?;
    outcome.written.push(out_csv.to_path_buf());
    Ok(outcome)
}

/// Splits `<doc_id>.<method>.sum.txt`.
pub fn parse_summary_file_name(name: &str) -> Option<(String, Method)> {
    let stem = name.strip_suffix(".sum.txt")?;
    let (doc_id, method) = stem.rsplit_once('.')?;
    Some((doc_id.to_string(), method.parse().ok()?))
}

fn reference_texts(refs_dir: &Path, doc_id: &str) -> Result<Vec<String>, RunError> {
    let dir = refs_dir.join(doc_id);
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| RunError::io(&dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "txt"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| fs::read_to_string(p).map_err(|e| RunError::io(p, e)))
        .collect()
}

/// Scores every summary in `summaries_dir` against `refs_dir/<doc_id>/*.txt`
/// and writes `report.json` and `report.txt` to `out_dir`.
///
/// Documents without references are listed as failures; the report covers
/// the rest. If no summary can be scored the run fails with `MissingFile`.
pub fn run_evaluate(
    summaries_dir: &Path,
    refs_dir: &Path,
    out_dir: &Path,
    rouge: &RougeConfig,
) -> Result<RunOutcome, RunError> {
    let mut by_method: BTreeMap<Method, Vec<(String, PathBuf)>> = BTreeMap::new();
    for entry in fs::read_dir(summaries_dir).map_err(|e| RunError::io(summaries_dir, e))? {
        let path = entry.map_err(|e| RunError::io(summaries_dir, e))?.path();
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        if let Some((doc_id, method)) = parse_summary_file_name(&name) {
            by_method.entry(method).or_default().push((doc_id, path));
        }
    }
    if by_method.is_empty() {
        return Err(RunError::MissingFile(format!(
            "no `<doc_id>.<method>.sum.txt` files in {}",
            summaries_dir.display()
        )));
    }

    let mut outcome = RunOutcome::default();
    let mut missing: Vec<String> = Vec::new();
    let mut reports = Vec::new();
    for (method, mut docs) in by_method {
        docs.sort();
        let mut scores = Vec::new();
        for (doc_id, path) in docs {
            let refs = reference_texts(refs_dir, &doc_id)?;
            if refs.is_empty() {
                if !missing.contains(&doc_id) {
                    missing.push(doc_id.clone());
                }
                continue;
            }
            let candidate = fs::read_to_string(&path).map_err(|e| RunError::io(&path, e))?;
            match rouge_1::<f64, _>(&candidate, &refs, rouge) {
                Ok(score) => {
                    scores.push(DocumentScore { doc_id, score });
                    outcome.processed += 1;
                }
                Err(e) => outcome.failures.push(DocFailure {
                    doc_id: format!("{doc_id} ({method})"),
                    message: e.to_string(),
                }),
            }
        }
        if !scores.is_empty() {
            reports.push(MethodReport {
                method,
                report: aggregate(scores),
            });
        }
    }
    missing.sort();
    for doc_id in &missing {
        outcome.failures.push(DocFailure {
            doc_id: doc_id.clone(),
            message: format!("no reference summaries under {}", refs_dir.join(doc_id).display()),
        });
    }
    if reports.is_empty() {
        return Err(RunError::MissingFile(format!(
            "no reference summaries for: {}",
            missing.join(", ")
        )));
    }

    fs::create_dir_all(out_dir).map_err(|e| RunError::io(out_dir, e))?;
    let report = Report {
        rouge: *rouge,
        methods: reports,
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| RunError::Config(e.to_string()))? + "\n";
    let json_path = out_dir.join("report.json");
    write_file(&json_path, json.as_bytes())?;
    let txt_path = out_dir.join("report.txt");
    write_file(&txt_path, render_table(&report).as_bytes())?;
    outcome.written.push(json_path);
    outcome.written.push(txt_path);
    Ok(outcome)
}

/// Title handling flag for the command line.
pub fn title_source(no_title: bool) -> TitleSource {
    if no_title {
        TitleSource::None
    } else {
        TitleSource::FirstLine
    }
}
