//! Sentence selection: rank by score, keep the top share, restore document order.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::preprocess::Document;
use crate::scalar::Scalar;
use crate::scoring::{Method, ScoredSentence};

/// Default share of sentences kept.
pub const DEFAULT_COMPRESSION_RATE: f64 = 0.2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtractError {
    #[error("compression rate {0} is outside (0, 1]")]
    InvalidRate(f64),
    #[error("word budget must be at least 1")]
    InvalidBudget,
    #[error("no scored sentences to select from")]
    NoSentences,
    #[error("sentence index {index} out of range for a document of {len} sentences")]
    IndexOutOfRange { index: usize, len: usize },
}

/// How many sentences (or words) a summary may hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// Keep `max(1, ceil(rate * N))` sentences.
    Rate(f64),
    /// Take sentences by rank while the word total stays within the budget.
    BudgetWords(usize),
}

impl Default for Selection {
    fn default() -> Self {
        Selection::Rate(DEFAULT_COMPRESSION_RATE)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary<F> {
    pub doc_id: String,
    pub method: Method,
    pub selection: Selection,
    /// Strictly increasing.
    pub selected_indices: Vec<usize>,
    /// Score of every sentence, by sentence index; empty for the baseline.
    pub scores: Vec<F>,
    pub text: String,
}

/// `max(1, ceil(rate * n))`, capped at `n`.
pub fn selection_size(n: usize, rate: f64) -> Result<usize, ExtractError> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(ExtractError::InvalidRate(rate));
    }
    // 0.2 * 15 is 3.0000000000000004 in binary floating point; snap near-integers
    let x = rate * n as f64;
    let m = if (x - x.round()).abs() < 1e-9 {
        x.round()
    } else {
        x.ceil()
    } as usize;
    Ok(m.max(1).min(n.max(1)))
}

/// Sentence indices from best to worst; ties go to the earlier sentence and
/// NaN scores rank last.
pub fn rank<F: Scalar>(scores: &[ScoredSentence<F>]) -> Vec<usize> {
    let mut order: Vec<&ScoredSentence<F>> = scores.iter().collect();
    order.sort_by(|a, b| {
        let by_score = match (a.score.is_nan(), b.score.is_nan()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => b.score.partial_cmp(&a.score).unwrap_or(Ordering::Equal),
        };
        by_score.then(a.sentence_index.cmp(&b.sentence_index))
    });
    order.into_iter().map(|s| s.sentence_index).collect()
}

fn scores_by_index<F: Scalar>(scores: &[ScoredSentence<F>]) -> Vec<F> {
    let n = scores.iter().map(|s| s.sentence_index + 1).max().unwrap_or(0);
    let mut out = vec![F::nan(); n];
    for s in scores {
        out[s.sentence_index] = s.score;
    }
    out
}

fn method_of<F>(scores: &[ScoredSentence<F>]) -> Method {
    scores.first().map_or(Method::Gsm, |s| s.method)
}

/// Keeps the `max(1, ceil(rate * N))` best sentences, in document order.
/// The summary text is left empty; see [`render_summary`].
pub fn select_sentences<F: Scalar>(
    doc_id: &str,
    scores: &[ScoredSentence<F>],
    compression_rate: f64,
) -> Result<Summary<F>, ExtractError> {
    if scores.is_empty() {
        return Err(ExtractError::NoSentences);
    }
    let m = selection_size(scores.len(), compression_rate)?;
    let mut selected: Vec<usize> = rank(scores).into_iter().take(m).collect();
    selected.sort_unstable();
    Ok(Summary {
        doc_id: doc_id.to_string(),
        method: method_of(scores),
        selection: Selection::Rate(compression_rate),
        selected_indices: selected,
        scores: scores_by_index(scores),
        text: String::new(),
    })
}

/// Takes sentences in rank order until the next one would push the word
/// count past `budget`; always keeps at least the top sentence.
pub fn select_by_budget<F: Scalar>(
    document: &Document,
    scores: &[ScoredSentence<F>],
    budget: usize,
) -> Result<Summary<F>, ExtractError> {
    if budget == 0 {
        return Err(ExtractError::InvalidBudget);
    }
    if scores.is_empty() {
        return Err(ExtractError::NoSentences);
    }
    let mut selected = Vec::new();
    let mut words = 0;
    for index in rank(scores) {
        let sentence = document.sentences.get(index).ok_or(ExtractError::IndexOutOfRange {
            index,
            len: document.sentences.len(),
        })?;
        let count = sentence.word_count();
        if !selected.is_empty() && words + count > budget {
            break;
        }
        words += count;
        selected.push(index);
    }
    selected.sort_unstable();
    Ok(Summary {
        doc_id: document.id.clone(),
        method: method_of(scores),
        selection: Selection::BudgetWords(budget),
        selected_indices: selected,
        scores: scores_by_index(scores),
        text: String::new(),
    })
}

/// Selected sentence texts joined by single spaces.
pub fn render_summary<F>(summary: &Summary<F>, document: &Document) -> Result<String, ExtractError> {
    let texts = summary
        .selected_indices
        .iter()
        .map(|&i| {
            document
                .sentences
                .get(i)
                .map(|s| s.text.as_str())
                .ok_or(ExtractError::IndexOutOfRange {
                    index: i,
                    len: document.sentences.len(),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(texts.join(" "))
}

/// The first `words` words of the document body.
pub fn lead_baseline<F>(document: &Document, words: usize) -> Summary<F> {
    let mut taken = Vec::new();
    let mut indices = Vec::new();
    for sentence in &document.sentences {
        if taken.len() >= words {
            break;
        }
        indices.push(sentence.index);
        taken.extend(sentence.text.split_whitespace().take(words - taken.len()));
    }
    Summary {
        doc_id: document.id.clone(),
        method: Method::Baseline,
        selection: Selection::BudgetWords(words),
        selected_indices: indices,
        scores: Vec::new(),
        text: taken.join(" "),
    }
}
