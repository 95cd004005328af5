//! # fuzzysum
//!
//! Extractive single-document summarization. Each sentence gets eight
//! feature scores in `[0, 1]` (title overlap, length, tf·isf weight,
//! position, similarity to other sentences, proper nouns, thematic words,
//! numbers); sentences are then scored either by summing the features or by
//! a Mamdani fuzzy system, and the best ones are extracted in document
//! order. A ROUGE-1 harness compares summaries against references.
//!
//! The math is generic over the scalar type ([`Scalar`], i.e. `f32` or
//! `f64`); the `*64` aliases below fix it to `f64`.
//!
//! ```
//! use fuzzysum::{build_document, default_system, extract_features, RawDocument, Stopwords, TitleSource};
//! use fuzzysum::{score_all_fuzzy, select_sentences, render_summary};
//!
//! let text = "Tax plan\nThe government unveiled a tax plan. Critics were quick to respond. \
//!             The plan cuts taxes for 3 million families.";
//! let raw = RawDocument::new("doc", text, &TitleSource::FirstLine).unwrap();
//! let doc = build_document(&raw, &Stopwords::english()).unwrap();
//! let features = extract_features::<f64>(&doc);
//! let scores = score_all_fuzzy(&features, &default_system()).unwrap();
//! let summary = select_sentences(&doc.id, &scores, 0.2).unwrap();
//! assert_eq!(summary.selected_indices.len(), 1);
//! println!("{}", render_summary(&summary, &doc).unwrap());
//! ```

pub mod extract;
pub mod features;
pub mod fuzzy;
pub mod preprocess;
pub mod rouge;
pub mod runner;
mod scalar;
pub mod scoring;

pub use extract::{
    lead_baseline, render_summary, select_by_budget, select_sentences, selection_size, ExtractError, Selection, Summary,
};
pub use features::{
    build_term_weights, cosine_similarity, extract_features, FeatureVector, TermWeightTable, FEATURE_NAMES,
};
pub use fuzzy::{
    default_system, parse_rules, FuzzyError, FuzzyRule, FuzzySystem, LinguisticVariable, RuleBase, RuleParseError,
    TriangularMF,
};
pub use preprocess::{build_document, Document, PreprocessError, RawDocument, Sentence, Stopwords, TitleSource, Token};
pub use rouge::{rouge_1, CorpusReport, RougeConfig, RougeScore};
pub use scalar::{ratio, Scalar};
pub use scoring::{score_all_fuzzy, score_all_gsm, score_fuzzy, score_gsm, GsmWeights, Method, ScoredSentence};

pub type FeatureVector64 = FeatureVector<f64>;
pub type TermWeightTable64 = TermWeightTable<f64>;
pub type TriangularMF64 = TriangularMF<f64>;
pub type LinguisticVariable64 = LinguisticVariable<f64>;
pub type FuzzySystem64 = FuzzySystem<f64>;
pub type RuleBase64 = RuleBase<f64>;
pub type RougeScore64 = RougeScore<f64>;
pub type Summary64 = Summary<f64>;

pub type FeatureVector32 = FeatureVector<f32>;
pub type FuzzySystem32 = FuzzySystem<f32>;
