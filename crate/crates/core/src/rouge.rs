//! ROUGE-1 (clipped unigram overlap) and corpus-level averaging.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::preprocess::stem;
use crate::scalar::{ratio, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RougeError {
    #[error("candidate summary is empty")]
    EmptyCandidate,
    #[error("no non-empty reference summary")]
    EmptyReferences,
}

/// How scores against several references are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MultiReference {
    /// The triple of the reference giving the highest recall.
    #[default]
    Max,
    /// Mean precision and recall over references.
    Average,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RougeConfig {
    /// Porter-stem unigrams before matching.
    pub stem: bool,
    pub multi_reference: MultiReference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RougeScore<F> {
    pub precision: F,
    pub recall: F,
    pub f_measure: F,
    pub match_count: usize,
    pub candidate_count: usize,
    pub reference_count: usize,
}

/// Balanced F-measure; zero when `p + r == 0`.
pub fn f_measure<F: Scalar>(precision: F, recall: F) -> F {
    let sum = precision + recall;
    if sum > F::zero() {
        F::lit(2.0) * precision * recall / sum
    } else {
        F::zero()
    }
}

impl<F: Scalar> RougeScore<F> {
    pub fn from_counts(match_count: usize, candidate_count: usize, reference_count: usize) -> Self {
        let precision = ratio(F::from_count(match_count), F::from_count(candidate_count));
        let recall = ratio(F::from_count(match_count), F::from_count(reference_count));
        RougeScore {
            precision,
            recall,
            f_measure: f_measure(precision, recall),
            match_count,
            candidate_count,
            reference_count,
        }
    }
}

/// Lowercases, turns every non-alphanumeric character into a separator and
/// optionally stems.
pub fn rouge_tokens(text: &str, stem_words: bool) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(|w| if stem_words { stem(w) } else { w.to_string() })
        .collect()
}

fn counts(tokens: &[String]) -> HashMap<&str, usize> {
    let mut map = HashMap::new();
    for t in tokens {
        *map.entry(t.as_str()).or_insert(0) += 1;
    }
    map
}

fn score_pair<F: Scalar>(candidate: &[String], reference: &[String]) -> RougeScore<F> {
    let cand = counts(candidate);
    let refs = counts(reference);
    let matches = cand.iter().map(|(w, c)| refs.get(w).map_or(0, |r| (*c).min(*r))).sum();
    RougeScore::from_counts(matches, candidate.len(), reference.len())
}

/// ROUGE-1 of a candidate against one or more references.
///
/// References that tokenize to nothing are ignored. Under
/// [`MultiReference::Average`] the counts are summed over references and
/// the F-measure is taken from the mean precision and recall.
pub fn rouge_1<F: Scalar, S: AsRef<str>>(
    candidate: &str,
    references: &[S],
    config: &RougeConfig,
) -> Result<RougeScore<F>, RougeError> {
    let cand = rouge_tokens(candidate, config.stem);
    if cand.is_empty() {
        return Err(RougeError::EmptyCandidate);
    }
    let per_ref: Vec<RougeScore<F>> = references
        .iter()
        .map(|r| rouge_tokens(r.as_ref(), config.stem))
        .filter(|r| !r.is_empty())
        .map(|r| score_pair(&cand, &r))
        .collect();
    if per_ref.is_empty() {
        return Err(RougeError::EmptyReferences);
    }
    Ok(match config.multi_reference {
        MultiReference::Max => {
            let mut best = per_ref[0];
            for s in &per_ref[1..] {
                if s.recall > best.recall {
                    best = *s;
                }
            }
            best
        }
        MultiReference::Average => {
            let k = F::from_count(per_ref.len());
            let precision = per_ref.iter().map(|s| s.precision).fold(F::zero(), |a, b| a + b) / k;
            let recall = per_ref.iter().map(|s| s.recall).fold(F::zero(), |a, b| a + b) / k;
            RougeScore {
                precision,
                recall,
                f_measure: f_measure(precision, recall),
                match_count: per_ref.iter().map(|s| s.match_count).sum(),
                candidate_count: per_ref.iter().map(|s| s.candidate_count).sum(),
                reference_count: per_ref.iter().map(|s| s.reference_count).sum(),
            }
        }
    })
}

/// Row labels of the F-measure histogram.
pub const HISTOGRAM_BINS: [&str; 6] = ["<0.3", "0.3-0.4", "0.4-0.5", "0.5-0.6", "0.6-0.7", ">=0.7"];

/// Histogram bin of an F-measure: `[lo, hi)` bins of width 0.1 between 0.3
/// and 0.7, with everything below 0.3 and from 0.7 up in the end bins.
pub fn histogram_bin<F: Scalar>(f: F) -> usize {
    let edges = [0.3, 0.4, 0.5, 0.6, 0.7];
    edges.iter().take_while(|e| f >= F::lit(**e)).count()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DocumentScore<F> {
    pub doc_id: String,
    pub score: RougeScore<F>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Averages<F> {
    pub precision: F,
    pub recall: F,
    pub f_measure: F,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport<F> {
    /// Sorted by document id.
    pub documents: Vec<DocumentScore<F>>,
    pub averages: Averages<F>,
    /// Document counts per [`HISTOGRAM_BINS`] entry.
    pub histogram: [usize; 6],
}

/// Averages per-document scores (summed in document-id order) and bins their F-measures.
pub fn aggregate<F: Scalar>(mut documents: Vec<DocumentScore<F>>) -> CorpusReport<F> {
    documents.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
    let n = F::from_count(documents.len());
    let mean =
        |get: fn(&RougeScore<F>) -> F| ratio(documents.iter().map(|d| get(&d.score)).fold(F::zero(), |a, b| a + b), n);
    let averages = Averages {
        precision: mean(|s| s.precision),
        recall: mean(|s| s.recall),
        f_measure: mean(|s| s.f_measure),
    };
    let mut histogram = [0; 6];
    for d in &documents {
        histogram[histogram_bin(d.score.f_measure)] += 1;
    }
    CorpusReport {
        documents,
        averages,
        histogram,
    }
}

/// Scores each `(doc_id, candidate, references)` triple and aggregates.
pub fn evaluate_corpus<F: Scalar>(
    pairs: &[(String, String, Vec<String>)],
    config: &RougeConfig,
) -> Result<CorpusReport<F>, (String, RougeError)> {
    let documents = pairs
        .iter()
        .map(|(id, cand, refs)| {
            rouge_1(cand, refs, config)
                .map(|score| DocumentScore {
                    doc_id: id.clone(),
                    score,
                })
                .map_err(|e| (id.clone(), e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate(documents))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r1(c: &str, r: &[&str]) -> RougeScore<f64> {
        rouge_1(c, r, &RougeConfig::default()).unwrap()
    }

    #[test]
    fn identity_and_disjoint() {
        let s = r1("The cat sat.", &["the cat sat"]);
        assert_eq!((s.precision, s.recall, s.f_measure), (1.0, 1.0, 1.0));
        let s = r1("dogs bark", &["cats meow"]);
        assert_eq!((s.precision, s.recall, s.f_measure), (0.0, 0.0, 0.0));
    }

    #[test]
    fn worked_example() {
        let s = r1("the cat sat", &["the cat ran fast"]);
        assert_eq!((s.match_count, s.candidate_count, s.reference_count), (2, 3, 4));
        assert_eq!(s.precision, 2.0 / 3.0);
        assert_eq!(s.recall, 0.5);
        assert!((s.f_measure - 4.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn clipping() {
        let s = r1("cat cat cat", &["the cat"]);
        assert_eq!((s.match_count, s.candidate_count), (1, 3));
    }

    #[test]
    fn multi_reference_modes() {
        let refs = ["a b c d", "a x"];
        // recall 0.25 against the first, 0.5 against the second
        let s = r1("a", &refs);
        assert_eq!((s.recall, s.reference_count), (0.5, 2));
        let avg: RougeScore<f64> = rouge_1(
            "a",
            &refs,
            &RougeConfig {
                stem: false,
                multi_reference: MultiReference::Average,
            },
        )
        .unwrap();
        assert_eq!(avg.recall, 0.375);
        assert_eq!(avg.precision, 1.0);
        assert!((avg.f_measure - f_measure(1.0, 0.375)).abs() < 1e-15);
    }

    #[test]
    fn stemming_toggle() {
        let plain = r1("running cats", &["cat runs"]);
        assert_eq!(plain.match_count, 0);
        let stemmed: RougeScore<f64> = rouge_1(
            "running cats",
            &["cat runs"],
            &RougeConfig {
                stem: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(stemmed.match_count, 2);
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(
            rouge_1::<f64, &str>("...", &["a"], &RougeConfig::default()),
            Err(RougeError::EmptyCandidate)
        );
        assert_eq!(
            rouge_1::<f64, &str>("a", &["", "!"], &RougeConfig::default()),
            Err(RougeError::EmptyReferences)
        );
        assert_eq!(
            rouge_1::<f64, &str>("a", &[], &RougeConfig::default()),
            Err(RougeError::EmptyReferences)
        );
    }

    #[test]
    fn bins() {
        let got: Vec<usize> = [0.0, 0.29, 0.3, 0.35, 0.4, 0.45, 0.5, 0.6, 0.69, 0.7, 1.0]
            .iter()
            .map(|f| histogram_bin(*f))
            .collect();
        assert_eq!(got, [0, 0, 1, 1, 2, 2, 3, 4, 4, 5, 5]);
    }

    #[test]
    fn corpus_averages() {
        let one = aggregate(vec![DocumentScore {
            doc_id: "a".into(),
            score: RougeScore::<f64>::from_counts(3, 3, 3),
        }]);
        assert_eq!(
            one.averages,
            Averages {
                precision: 1.0,
                recall: 1.0,
                f_measure: 1.0
            }
        );
        assert_eq!(one.histogram, [0, 0, 0, 0, 0, 1]);

        let mk = |id: &str, f: f64| DocumentScore {
            doc_id: id.into(),
            score: RougeScore {
                precision: f,
                recall: f,
                f_measure: f,
                match_count: 0,
                candidate_count: 0,
                reference_count: 0,
            },
        };
        let two = aggregate(vec![mk("b", 0.45), mk("a", 0.35)]);
        assert!((two.averages.f_measure - 0.40).abs() < 1e-12);
        assert_eq!(two.histogram, [0, 1, 1, 0, 0, 0]);
        assert_eq!(two.documents[0].doc_id, "a");
    }
}
