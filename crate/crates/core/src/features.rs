//! The eight per-sentence feature scores, each normalized to `[0, 1]`.
//!
//! | field            | measures                                                     |
//! |------------------|--------------------------------------------------------------|
//! | `f1_title`       | share of distinct title stems present in the sentence        |
//! | `f2_length`      | token count relative to the longest sentence                 |
//! | `f3_term_weight` | summed tf·isf weight relative to the heaviest sentence       |
//! | `f4_position`    | 5/5 .. 1/5 for the first five sentences of a paragraph       |
//! | `f5_similarity`  | summed cosine similarity to the other sentences, normalized  |
//! | `f6_proper_noun` | proper-noun tokens per token                                 |
//! | `f7_thematic`    | thematic-stem occurrences relative to the maximum            |
//! | `f8_numeric`     | numeric tokens per token                                     |

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::preprocess::{Document, Sentence};
use crate::scalar::{ratio, Scalar};

pub const FEATURE_NAMES: [&str; 8] = [
    "f1_title",
    "f2_length",
    "f3_term_weight",
    "f4_position",
    "f5_similarity",
    "f6_proper_noun",
    "f7_thematic",
    "f8_numeric",
];

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FeatureVector<F> {
    pub f1_title: F,
    pub f2_length: F,
    pub f3_term_weight: F,
    pub f4_position: F,
    pub f5_similarity: F,
    pub f6_proper_noun: F,
    pub f7_thematic: F,
    pub f8_numeric: F,
}

impl<F: Scalar> FeatureVector<F> {
    pub fn from_array(v: [F; 8]) -> Self {
        FeatureVector {
            f1_title: v[0],
            f2_length: v[1],
            f3_term_weight: v[2],
            f4_position: v[3],
            f5_similarity: v[4],
            f6_proper_noun: v[5],
            f7_thematic: v[6],
            f8_numeric: v[7],
        }
    }

    pub fn splat(v: F) -> Self {
        Self::from_array([v; 8])
    }

    pub fn to_array(&self) -> [F; 8] {
        [
            self.f1_title,
            self.f2_length,
            self.f3_term_weight,
            self.f4_position,
            self.f5_similarity,
            self.f6_proper_noun,
            self.f7_thematic,
            self.f8_numeric,
        ]
    }

    /// Every component lies in `[0, 1]` and the position score is one of the six steps.
    pub fn is_valid(&self) -> bool {
        let in_range = self.to_array().iter().all(|v| *v >= F::zero() && *v <= F::one());
        in_range && (0..=5).any(|k| self.f4_position == position_step::<F>(k))
    }
}

/// tf·isf statistics for one stem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermStats<F> {
    /// Occurrences in the whole document.
    pub tf: usize,
    /// Number of sentences containing the stem.
    pub sentence_freq: usize,
    pub isf: F,
    /// `tf * isf`
    pub weight: F,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermWeightTable<F> {
    pub sentence_count: usize,
    pub terms: BTreeMap<String, TermStats<F>>,
}

impl<F: Scalar> TermWeightTable<F> {
    pub fn get(&self, stem: &str) -> Option<&TermStats<F>> {
        self.terms.get(stem)
    }

    pub fn weight(&self, stem: &str) -> F {
        self.terms.get(stem).map_or(F::zero(), |t| t.weight)
    }

    pub fn isf(&self, stem: &str) -> F {
        self.terms.get(stem).map_or(F::zero(), |t| t.isf)
    }

    /// Multiplies every isf (and so every weight) by `factor`.
    pub fn scaled(&self, factor: F) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, t)| {
                let isf = t.isf * factor;
                let weight = F::from_count(t.tf) * isf;
                (k.clone(), TermStats { isf, weight, ..*t })
            })
            .collect();
        TermWeightTable {
            sentence_count: self.sentence_count,
            terms,
        }
    }
}

/// `w = tf * log10(N / n)` for every content stem of the document.
pub fn build_term_weights<F: Scalar>(document: &Document) -> TermWeightTable<F> {
    let n = document.sentences.len();
    let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for sentence in &document.sentences {
        let mut seen: HashSet<&str> = HashSet::new();
        for stem in &sentence.content_stems {
            let entry = counts.entry(stem).or_default();
            entry.0 += 1;
            if seen.insert(stem) {
                entry.1 += 1;
            }
        }
    }
    let total = F::from_count(n);
    let terms = counts
        .into_iter()
        .map(|(stem, (tf, sentence_freq))| {
            let isf = if sentence_freq == n {
                F::zero()
            } else {
                (total / F::from_count(sentence_freq)).log10()
            };
            let weight = F::from_count(tf) * isf;
            (
                stem.to_string(),
                TermStats {
                    tf,
                    sentence_freq,
                    isf,
                    weight,
                },
            )
        })
        .collect();
    TermWeightTable {
        sentence_count: n,
        terms,
    }
}

/// Distinct title stems found in the sentence over distinct title stems.
pub fn score_title<F: Scalar>(sentence: &Sentence, title_stems: &[String]) -> F {
    let title: BTreeSet<&str> = title_stems.iter().map(String::as_str).collect();
    if title.is_empty() {
        return F::zero();
    }
    let hits = title
        .iter()
        .filter(|t| sentence.content_stems.iter().any(|s| s == *t))
        .count();
    F::from_count(hits) / F::from_count(title.len())
}

pub fn score_length<F: Scalar>(sentence: &Sentence, longest_sentence_word_count: usize) -> F {
    ratio(
        F::from_count(sentence.tokens.len()),
        F::from_count(longest_sentence_word_count),
    )
}

/// Sum of term weights over the sentence's content-stem occurrences.
pub fn sentence_weight<F: Scalar>(sentence: &Sentence, table: &TermWeightTable<F>) -> F {
    sentence
        .content_stems
        .iter()
        .map(|s| table.weight(s))
        .fold(F::zero(), |a, b| a + b)
}

/// Sentence weight over the largest weight in `per_sentence_sums`.
pub fn score_term_weight<F: Scalar>(sentence: &Sentence, table: &TermWeightTable<F>, per_sentence_sums: &[F]) -> F {
    let max = per_sentence_sums.iter().copied().fold(F::zero(), F::max);
    ratio(sentence_weight(sentence, table), max)
}

fn position_step<F: Scalar>(k: usize) -> F {
    F::from_count(k) / F::from_count(5)
}

pub fn score_position<F: Scalar>(sentence: &Sentence) -> F {
    position_step(5usize.saturating_sub(sentence.index_in_paragraph))
}

fn term_vector<'a, F: Scalar>(sentence: &'a Sentence, table: &TermWeightTable<F>) -> BTreeMap<&'a str, F> {
    let mut tf: BTreeMap<&str, usize> = BTreeMap::new();
    for stem in &sentence.content_stems {
        *tf.entry(stem).or_default() += 1;
    }
    tf.into_iter()
        .map(|(stem, count)| (stem, F::from_count(count) * table.isf(stem)))
        .collect()
}

fn cosine<F: Scalar>(a: &BTreeMap<&str, F>, b: &BTreeMap<&str, F>) -> F {
    let dot = a
        .iter()
        .filter_map(|(k, wa)| b.get(k).map(|wb| *wa * *wb))
        .fold(F::zero(), |x, y| x + y);
    let norm = |v: &BTreeMap<&str, F>| v.values().map(|w| *w * *w).fold(F::zero(), |x, y| x + y).sqrt();
    let den = norm(a) * norm(b);
    if den > F::zero() {
        (dot / den).min(F::one())
    } else {
        F::zero()
    }
}

/// Cosine similarity of the sentences' tf·isf vectors; zero if either vector vanishes.
pub fn cosine_similarity<F: Scalar>(a: &Sentence, b: &Sentence, table: &TermWeightTable<F>) -> F {
    cosine(&term_vector(a, table), &term_vector(b, table))
}

/// For every sentence, the sum of its similarities to all other sentences.
pub fn similarity_sums<F: Scalar>(document: &Document, table: &TermWeightTable<F>) -> Vec<F> {
    let vectors: Vec<_> = document.sentences.iter().map(|s| term_vector(s, table)).collect();
    let n = vectors.len();
    let mut sums = vec![F::zero(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let sim = cosine(&vectors[i], &vectors[j]);
            sums[i] = sums[i] + sim;
            sums[j] = sums[j] + sim;
        }
    }
    sums
}

pub fn score_similarity<F: Scalar>(sentence: &Sentence, document: &Document, table: &TermWeightTable<F>) -> F {
    if document.sentences.len() < 2 {
        return F::zero();
    }
    let sums = similarity_sums(document, table);
    let max = sums.iter().copied().fold(F::zero(), F::max);
    ratio(sums[sentence.index], max)
}

/// Document-wide context for the proper-noun heuristic: the lowercase forms
/// of capitalized tokens that appear somewhere other than sentence-initially.
#[derive(Debug, Clone, Default)]
pub struct ProperNounContext {
    mid_sentence_capitalized: HashSet<String>,
}

impl ProperNounContext {
    pub fn from_document(document: &Document) -> Self {
        let mid_sentence_capitalized = document
            .sentences
            .iter()
            .flat_map(|s| s.tokens.iter().skip(1))
            .filter(|t| t.is_capitalized)
            .map(|t| t.lower.clone())
            .collect();
        ProperNounContext {
            mid_sentence_capitalized,
        }
    }

    /// Capitalized tokens count when not sentence-initial, or when
    /// sentence-initial but seen capitalized mid-sentence elsewhere.
    /// Acronyms always count.
    pub fn count(&self, sentence: &Sentence) -> usize {
        sentence
            .tokens
            .iter()
            .enumerate()
            .filter(|(i, t)| {
                t.is_acronym() || (t.is_capitalized && (*i > 0 || self.mid_sentence_capitalized.contains(&t.lower)))
            })
            .count()
    }
}

pub fn score_proper_noun<F: Scalar>(sentence: &Sentence, context: &ProperNounContext) -> F {
    ratio(
        F::from_count(context.count(sentence)),
        F::from_count(sentence.tokens.len()),
    )
}

/// Occurrences (with multiplicity) of thematic stems in the sentence.
pub fn thematic_count(sentence: &Sentence, thematic_stems: &[String]) -> usize {
    sentence
        .content_stems
        .iter()
        .filter(|s| thematic_stems.contains(s))
        .count()
}

pub fn score_thematic<F: Scalar>(sentence: &Sentence, document: &Document) -> F {
    let max = document
        .sentences
        .iter()
        .map(|s| thematic_count(s, &document.thematic_stems))
        .max()
        .unwrap_or(0);
    ratio(
        F::from_count(thematic_count(sentence, &document.thematic_stems)),
        F::from_count(max),
    )
}

pub fn score_numeric<F: Scalar>(sentence: &Sentence) -> F {
    let numeric = sentence.tokens.iter().filter(|t| t.is_numeric).count();
    ratio(F::from_count(numeric), F::from_count(sentence.tokens.len()))
}

/// Feature vectors for every sentence, computed with a prebuilt term table.
pub fn extract_features_with<F: Scalar>(document: &Document, table: &TermWeightTable<F>) -> Vec<FeatureVector<F>> {
    let sentences = &document.sentences;
    let longest = sentences.iter().map(|s| s.tokens.len()).max().unwrap_or(0);
    let weights: Vec<F> = sentences.iter().map(|s| sentence_weight(s, table)).collect();
    let max_weight = weights.iter().copied().fold(F::zero(), F::max);
    let sims = similarity_sums(document, table);
    let max_sim = sims.iter().copied().fold(F::zero(), F::max);
    let thematic: Vec<usize> = sentences
        .iter()
        .map(|s| thematic_count(s, &document.thematic_stems))
        .collect();
    let max_thematic = thematic.iter().copied().max().unwrap_or(0);
    let proper = ProperNounContext::from_document(document);

    sentences
        .iter()
        .map(|s| FeatureVector {
            f1_title: score_title(s, &document.title_stems),
            f2_length: score_length(s, longest),
            f3_term_weight: ratio(weights[s.index], max_weight),
            f4_position: score_position(s),
            f5_similarity: ratio(sims[s.index], max_sim),
            f6_proper_noun: score_proper_noun(s, &proper),
            f7_thematic: ratio(F::from_count(thematic[s.index]), F::from_count(max_thematic)),
            f8_numeric: score_numeric(s),
        })
        .collect()
}

pub fn extract_features<F: Scalar>(document: &Document) -> Vec<FeatureVector<F>> {
    extract_features_with(document, &build_term_weights(document))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::{build_document, RawDocument, Stopwords, TitleSource};

    fn doc_with(title: TitleSource, body: &str) -> Document {
        let raw = RawDocument::new("d", body, &title).unwrap();
        build_document(&raw, &Stopwords::english()).unwrap()
    }

    fn doc(text: &str) -> Document {
        doc_with(TitleSource::FirstLine, text)
    }

    fn stems(words: &[&str]) -> Vec<String> {
        words.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn title_ratio() {
        let d = doc("x\nThe tax plan passed.");
        let title = stems(&["govern", "tax", "cut", "plan"]);
        assert_eq!(score_title::<f64>(&d.sentences[0], &title), 0.5);
        assert_eq!(score_title::<f64>(&d.sentences[0], &stems(&["dog"])), 0.0);
        assert_eq!(
            score_title::<f64>(&d.sentences[0], &stems(&["tax", "plan", "tax"])),
            1.0
        );
        assert_eq!(score_title::<f64>(&d.sentences[0], &[]), 0.0);
    }

    #[test]
    fn length_ratio() {
        let d = doc("x\nOne two three four five.");
        assert_eq!(score_length::<f64>(&d.sentences[0], 20), 0.25);
        assert_eq!(score_length::<f64>(&d.sentences[0], 5), 1.0);
    }

    #[test]
    fn term_weights() {
        // ten sentences; "zebra" three times in the first only, "common" everywhere
        let mut body = String::from("x\nZebra zebra zebra common.");
        for _ in 0..9 {
            body.push_str(" Filler common.");
        }
        let d = doc(&body);
        assert_eq!(d.len(), 10);
        let t = build_term_weights::<f64>(&d);
        let zebra = t.get("zebra").unwrap();
        assert_eq!((zebra.tf, zebra.sentence_freq), (3, 1));
        assert!((zebra.weight - 3.0).abs() < 1e-12);
        assert_eq!(t.weight("common"), 0.0);
        assert_eq!(t.get("filler").unwrap().sentence_freq, 9);
    }

    #[test]
    fn term_weight_score_edges() {
        let d = doc("x\nZebras graze. It is what it is. Zebras run fast.");
        let t = build_term_weights::<f64>(&d);
        let sums: Vec<f64> = d.sentences.iter().map(|s| sentence_weight(s, &t)).collect();
        assert_eq!(score_term_weight(&d.sentences[1], &t, &sums), 0.0);
        let best = sums
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert_eq!(score_term_weight(&d.sentences[best], &t, &sums), 1.0);
    }

    #[test]
    fn position_steps() {
        let d = doc("x\nOne ran. Two ran. Three ran. Four ran. Five ran. Six ran. Seven ran.");
        let p: Vec<f64> = d.sentences.iter().map(score_position).collect();
        assert_eq!(p, [1.0, 0.8, 0.6, 0.4, 0.2, 0.0, 0.0]);
    }

    #[test]
    fn cosine_cases() {
        let d = doc("x\nCats chase mice. Mice chase cats. Dogs bark loudly. Birds sing.");
        let t = build_term_weights::<f64>(&d);
        let s = &d.sentences;
        assert!((cosine_similarity(&s[0], &s[1], &t) - 1.0).abs() < 1e-9);
        assert_eq!(cosine_similarity(&s[0], &s[2], &t), 0.0);
        assert_eq!(cosine_similarity(&s[0], &s[3], &t), cosine_similarity(&s[3], &s[0], &t));
    }

    #[test]
    fn similarity_scores() {
        let d = doc("x\nCats chase mice. Mice chase cats. Cats nap. Dogs bark.");
        let t = build_term_weights::<f64>(&d);
        let f: Vec<f64> = d.sentences.iter().map(|s| score_similarity(s, &d, &t)).collect();
        assert_eq!(f[3], 0.0);
        assert!(f.contains(&1.0));
        let single = doc("x\nOnly one here.");
        let t1 = build_term_weights::<f64>(&single);
        assert_eq!(score_similarity(&single.sentences[0], &single, &t1), 0.0);
    }

    #[test]
    fn proper_noun_heuristic() {
        let d = doc("x\nHe met Mary Smith in Paris");
        let ctx = ProperNounContext::from_document(&d);
        assert_eq!(score_proper_noun::<f64>(&d.sentences[0], &ctx), 0.5);

        let d = doc("x\nall lower case here.");
        let ctx = ProperNounContext::from_document(&d);
        assert_eq!(score_proper_noun::<f64>(&d.sentences[0], &ctx), 0.0);

        // sentence-initial "Paris" counts because it appears capitalized mid-sentence elsewhere
        let d = doc("x\nParis was calm. NATO met in Paris. Yesterday it rained.");
        let ctx = ProperNounContext::from_document(&d);
        let counts: Vec<usize> = d.sentences.iter().map(|s| ctx.count(s)).collect();
        assert_eq!(counts, [1, 2, 0]);
    }

    #[test]
    fn thematic_and_numeric() {
        let d = doc("x\nTax tax rates. Tax cuts. Nothing else matters.");
        let f: Vec<f64> = d.sentences.iter().map(|s| score_thematic(s, &d)).collect();
        assert_eq!(f[0], 1.0);
        let d2 = doc("x\nProfits rose 12 % to 30 million.");
        assert_eq!(score_numeric::<f64>(&d2.sentences[0]), 2.0 / 7.0);
        assert_eq!(score_numeric::<f64>(&d.sentences[1]), 0.0);
    }

    #[test]
    fn single_sentence_document() {
        let d = doc("Budget\nThe budget passed quickly.");
        let f = extract_features::<f64>(&d);
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].f2_length, f[0].f4_position, f[0].f5_similarity), (1.0, 1.0, 0.0));
        assert_eq!(f[0].f1_title, 1.0);
    }

    #[test]
    fn untitled_document_has_zero_title_scores() {
        let d = doc_with(TitleSource::None, "Budget talks. The budget passed.");
        assert!(extract_features::<f64>(&d).iter().all(|v| v.f1_title == 0.0));
    }

    #[test]
    fn scaling_weights_keeps_ratios() {
        let d = doc("Tax\nThe tax bill passed. Senators debated the bill. Tax cuts won. Voters cheered loudly.");
        let t = build_term_weights::<f64>(&d);
        let a = extract_features_with(&d, &t);
        let b = extract_features_with(&d, &t.scaled(std::f64::consts::LN_10));
        for (x, y) in a.iter().zip(&b) {
            assert!((x.f3_term_weight - y.f3_term_weight).abs() < 1e-9);
            assert!((x.f5_similarity - y.f5_similarity).abs() < 1e-9);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let d = doc("Tax\nThe tax bill passed. Tax cuts won in 1990.");
        let f = extract_features::<f32>(&d);
        assert!(f.iter().all(FeatureVector::is_valid));
    }
}
