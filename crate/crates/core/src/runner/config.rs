use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::RunError;
use crate::extract::{Selection, DEFAULT_COMPRESSION_RATE};
use crate::preprocess::TitleSource;
use crate::rouge::{MultiReference, RougeConfig};
use crate::scoring::Method;

/// Words in the lead baseline summary.
pub const DEFAULT_BASELINE_WORDS: usize = 100;

/// Settings for a batch run. Built from defaults, then a config file, then
/// command-line overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Directories of `.txt` files, or individual files.
    pub inputs: Vec<PathBuf>,
    pub methods: Vec<Method>,
    pub selection: Selection,
    /// `None` uses the shipped rule base.
    pub rule_file: Option<PathBuf>,
    /// `None` uses the shipped stopword list.
    pub stopword_file: Option<PathBuf>,
    pub weights: Option<[f64; 8]>,
    pub out_dir: PathBuf,
    pub rouge: RougeConfig,
    pub workers: usize,
    pub title: TitleSource,
    pub strip_tags: bool,
    pub baseline_words: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            methods: Method::ALL.to_vec(),
            selection: Selection::Rate(DEFAULT_COMPRESSION_RATE),
            rule_file: None,
            stopword_file: None,
            weights: None,
            out_dir: PathBuf::from("out"),
            rouge: RougeConfig::default(),
            workers: 1,
            title: TitleSource::FirstLine,
            strip_tags: false,
            baseline_words: DEFAULT_BASELINE_WORDS,
        }
    }
}

/// The key-value configuration file (TOML). Every key is optional.
///
/// ```toml
/// method = "all"          # gsm | fuzzy | baseline | all
/// rate = 0.2              # or: budget_words = 100
/// rules = "rules/default.rules"
/// stopwords = "stopwords.txt"
/// weights = [1, 1, 1, 1, 1, 1, 1, 1]
/// out = "out"
/// workers = 4
/// no_title = false
/// strip_tags = false
/// baseline_words = 100
/// rouge_stem = false
/// rouge_multi_reference = "max"   # or "average"
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub input: Option<Vec<PathBuf>>,
    pub method: Option<String>,
    pub rate: Option<f64>,
    pub budget_words: Option<usize>,
    pub rules: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub weights: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub no_title: Option<bool>,
    pub strip_tags: Option<bool>,
    pub baseline_words: Option<usize>,
    pub rouge_stem: Option<bool>,
    pub rouge_multi_reference: Option<MultiReference>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, RunError> {
        toml::from_str(text).map_err(|e| RunError::Config(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path).map_err(|source| RunError::Io {
            path: path.to_path_buf(),
            message: source.to_string(),
        })?;
        Self::parse(&text).map_err(|e| match e {
            RunError::Config(m) => RunError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Applies the file's settings on top of `config`.
    pub fn apply(&self, config: &mut RunConfig) -> Result<(), RunError> {
        if let Some(v) = &self.input {
            config.inputs = v.clone();
        }
        if let Some(m) = &self.method {
            config.methods = parse_methods(m)?;
        }
        match (self.rate, self.budget_words) {
            (Some(_), Some(_)) => return Err(RunError::Config("set either `rate` or `budget_words`, not both".into())),
            (Some(r), None) => config.selection = Selection::Rate(r),
            (None, Some(b)) => config.selection = Selection::BudgetWords(b),
            (None, None) => {}
        }
        if let Some(p) = &self.rules {
            config.rule_file = Some(p.clone());
        }
        if let Some(p) = &self.stopwords {
            config.stopword_file = Some(p.clone());
        }
        if let Some(w) = &self.weights {
            config.weights = Some(parse_weights(w)?);
        }
        if let Some(p) = &self.out {
            config.out_dir = p.clone();
        }
        if let Some(w) = self.workers {
            config.workers = w;
        }
        if let Some(true) = self.no_title {
            config.title = TitleSource::None;
        }
        if let Some(s) = self.strip_tags {
            config.strip_tags = s;
        }
        if let Some(b) = self.baseline_words {
            config.baseline_words = b;
        }
        if let Some(s) = self.rouge_stem {
            config.rouge.stem = s;
        }
        if let Some(m) = self.rouge_multi_reference {
            config.rouge.multi_reference = m;
        }
        Ok(())
    }
}

/// `gsm`, `fuzzy`, `baseline`, `all`, or a comma-separated list.
pub fn parse_methods(s: &str) -> Result<Vec<Method>, RunError> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Method::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        let m: Method = part.parse().map_err(RunError::Config)?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out.sort();
    Ok(out)
}

pub fn parse_weights(w: &[f64]) -> Result<[f64; 8], RunError> {
    let arr: [f64; 8] = w
        .try_into()
        .map_err(|_| RunError::Config(format!("expected 8 weights, got {}", w.len())))?;
    if arr.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(RunError::Config("weights must be finite and non-negative".into()));
    }
    Ok(arr)
}

impl RunConfig {
    /// Checks the invariants a run relies on.
    pub fn validate(&self) -> Result<(), RunError> {
        match self.selection {
            Selection::Rate(r) if !(r > 0.0 && r <= 1.0) => {
                return Err(RunError::Config(format!("compression rate {r} is outside (0, 1]")))
            }
            Selection::BudgetWords(0) => return Err(RunError::Config("word budget must be at least 1".into())),
            _ => {}
        }
        if self.methods.is_empty() {
            return Err(RunError::Config("no summarization method selected".into()));
        }
        if let Some(w) = &self.weights {
            parse_weights(w)?;
        }
        if self.workers == 0 {
            return Err(RunError::Config("workers must be at least 1".into()));
        }
        if self.baseline_words == 0 {
            return Err(RunError::Config("baseline_words must be at least 1".into()));
        }
        Ok(())
    }
}
