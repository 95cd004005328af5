//! Synthetic documents with known token attributes, and a brute-force
//! feature calculator that works from those attributes instead of the
//! library's preprocessing output.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

const VOCABULARY: &str = include_str!("../data/porter_vocabulary.txt");

const CONTENT: &[&str] = &[
    "tax",
    "taxes",
    "plan",
    "plans",
    "river",
    "rivers",
    "cats",
    "voters",
    "government",
    "cut",
    "agreed",
    "market",
    "prices",
    "rose",
    "farmers",
    "water",
    "city",
    "council",
    "bridge",
    "school",
    "report",
    "reports",
    "growth",
    "budget",
    "vote",
    "trade",
];
const PROPER: &[&str] = &["Paris", "Mary", "Smith", "London", "Berlin"];
// Two-letter words are never changed by the stemmer.
const ACRONYMS: &[&str] = &["UK", "EU"];
const STOPWORDS: &[&str] = &["the", "of", "and", "in", "was", "it", "to", "for", "on", "with"];
const NUMBERS: &[&str] = &["12", "3.5", "1,200", "45%", "1990", "$30"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Content,
    Proper,
    Acronym,
    Stop,
    Number,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Word {
    pub surface: String,
    pub kind: Kind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthDoc {
    /// Empty means no title line.
    pub title: Vec<Word>,
    /// Paragraphs of sentences of words.
    pub paragraphs: Vec<Vec<Vec<Word>>>,
}

fn stem_table() -> &'static HashMap<&'static str, &'static str> {
    static TABLE: OnceLock<HashMap<&str, &str>> = OnceLock::new();
    TABLE.get_or_init(|| VOCABULARY.lines().filter_map(|l| l.split_once(' ')).collect())
}

fn capitalize(w: &str) -> String {
    let mut c = w.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn pick<R: Rng>(kind: Kind, rng: &mut R) -> Word {
    let list = match kind {
        Kind::Content => CONTENT,
        Kind::Proper => PROPER,
        Kind::Acronym => ACRONYMS,
        Kind::Stop => STOPWORDS,
        Kind::Number => NUMBERS,
    };
    Word {
        surface: list.choose(rng).unwrap().to_string(),
        kind,
    }
}

fn random_kind<R: Rng>(rng: &mut R) -> Kind {
    match rng.gen_range(0..20) {
        0..=9 => Kind::Content,
        10..=11 => Kind::Proper,
        12 => Kind::Acronym,
        13..=16 => Kind::Stop,
        _ => Kind::Number,
    }
}

/// A random document of at most `max_sentences` sentences and `max_tokens`
/// tokens in total (title excluded).
pub fn random_doc<R: Rng>(rng: &mut R, max_sentences: usize, max_tokens: usize) -> SynthDoc {
    let n_sentences = rng.gen_range(1..=max_sentences);
    let budget = max_tokens.max(n_sentences * 2);
    let mut lens: Vec<usize> = vec![1; n_sentences];
    let mut left = rng.gen_range(n_sentences..=budget) - n_sentences;
    while left > 0 {
        let i = rng.gen_range(0..n_sentences);
        lens[i] += 1;
        left -= 1;
    }

    let mut sentences = Vec::new();
    for len in lens {
        let mut words: Vec<Word> = (0..len).map(|_| pick(random_kind(rng), rng)).collect();
        // Stopword-only and number-only sentences are allowed but rare.
        if rng.gen_bool(0.1) {
            for w in &mut words {
                *w = pick(if rng.gen_bool(0.5) { Kind::Stop } else { Kind::Number }, rng);
            }
        } else {
            // A lowercase word of three or more letters closes the sentence
            // so the terminator is never mistaken for an abbreviation.
            *words.last_mut().unwrap() = pick(Kind::Content, rng);
        }
        if words.len() == 1 && words[0].kind != Kind::Content {
            words[0] = pick(Kind::Content, rng);
        }
        // A new sentence has to start with an uppercase letter or a digit.
        if words[0].surface.starts_with('$') {
            words[0].surface = "12".into();
        }
        if words[0].kind == Kind::Content || words[0].kind == Kind::Stop {
            words[0].surface = capitalize(&words[0].surface);
        }
        sentences.push(words);
    }

    let mut paragraphs = Vec::new();
    let mut current = Vec::new();
    for s in sentences {
        if !current.is_empty() && rng.gen_bool(0.25) {
            paragraphs.push(std::mem::take(&mut current));
        }
        current.push(s);
    }
    paragraphs.push(current);

    let title = if rng.gen_bool(0.8) {
        (0..rng.gen_range(1..=4))
            .map(|_| {
                let mut w = pick(if rng.gen_bool(0.8) { Kind::Content } else { Kind::Stop }, rng);
                w.surface = capitalize(&w.surface);
                w
            })
            .collect()
    } else {
        Vec::new()
    };
    SynthDoc { title, paragraphs }
}

impl SynthDoc {
    /// Body text only; the title goes on the first line when present.
    pub fn text(&self) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&join(&self.title));
            out.push('\n');
        }
        let paragraphs: Vec<String> = self
            .paragraphs
            .iter()
            .map(|p| p.iter().map(|s| format!("{}.", join(s))).collect::<Vec<_>>().join(" "))
            .collect();
        out.push_str(&paragraphs.join("\n\n"));
        out
    }

    pub fn sentences(&self) -> Vec<&Vec<Word>> {
        self.paragraphs.iter().flatten().collect()
    }

    pub fn has_title(&self) -> bool {
        !self.title.is_empty()
    }
}

fn join(words: &[Word]) -> String {
    words.iter().map(|w| w.surface.as_str()).collect::<Vec<_>>().join(" ")
}

fn stem_of(table: &HashMap<&str, &str>, w: &Word) -> Option<String> {
    match w.kind {
        Kind::Stop | Kind::Number => None,
        Kind::Acronym => Some(w.surface.to_lowercase()),
        Kind::Content | Kind::Proper => {
            let lower = w.surface.to_lowercase();
            Some(table.get(lower.as_str()).expect("word in vocabulary").to_string())
        }
    }
}

fn is_capitalized(w: &Word) -> bool {
    w.surface.chars().next().is_some_and(|c| c.is_uppercase())
}

/// The eight features of every sentence, straight from the definitions.
pub fn oracle_features(doc: &SynthDoc) -> Vec<[f64; 8]> {
    let table = stem_table();
    let sentences = doc.sentences();
    let n = sentences.len();
    let stems: Vec<Vec<String>> = sentences
        .iter()
        .map(|s| s.iter().filter_map(|w| stem_of(table, w)).collect())
        .collect();

    // f1
    let title: BTreeSet<String> = doc.title.iter().filter_map(|w| stem_of(table, w)).collect();
    let f1: Vec<f64> = stems
        .iter()
        .map(|s| {
            if title.is_empty() {
                0.0
            } else {
                title.iter().filter(|t| s.contains(t)).count() as f64 / title.len() as f64
            }
        })
        .collect();

    // f2
    let longest = sentences.iter().map(|s| s.len()).max().unwrap() as f64;
    let f2: Vec<f64> = sentences.iter().map(|s| s.len() as f64 / longest).collect();

    // f3: isf per stem, then summed tf*isf over occurrences
    let vocab: BTreeSet<&String> = stems.iter().flatten().collect();
    let mut isf: BTreeMap<&String, f64> = BTreeMap::new();
    let mut weight: BTreeMap<&String, f64> = BTreeMap::new();
    for t in &vocab {
        let sf = stems.iter().filter(|s| s.contains(t)).count();
        let tf = stems.iter().flatten().filter(|s| s == t).count();
        let i = (n as f64 / sf as f64).log10();
        isf.insert(t, i);
        weight.insert(t, tf as f64 * i);
    }
    let raw3: Vec<f64> = stems.iter().map(|s| s.iter().map(|t| weight[t]).sum()).collect();
    let f3 = normalize(&raw3);

    // f4
    let mut f4 = Vec::new();
    for p in &doc.paragraphs {
        for k in 0..p.len() {
            f4.push([1.0, 0.8, 0.6, 0.4, 0.2].get(k).copied().unwrap_or(0.0));
        }
    }

    // f5: dense vectors over the whole vocabulary
    let vectors: Vec<Vec<f64>> = stems
        .iter()
        .map(|s| {
            vocab
                .iter()
                .map(|t| s.iter().filter(|x| x == t).count() as f64 * isf[t])
                .collect()
        })
        .collect();
    let cos = |a: &[f64], b: &[f64]| {
        let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        if na == 0.0 || nb == 0.0 {
            0.0
        } else {
            dot / (na * nb)
        }
    };
    let raw5: Vec<f64> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).map(|j| cos(&vectors[i], &vectors[j])).sum())
        .collect();
    let f5 = normalize(&raw5);

    // f6
    let mid_caps: BTreeSet<String> = sentences
        .iter()
        .flat_map(|s| s.iter().skip(1))
        .filter(|w| is_capitalized(w))
        .map(|w| w.surface.to_lowercase())
        .collect();
    let f6: Vec<f64> = sentences
        .iter()
        .map(|s| {
            let proper = s
                .iter()
                .enumerate()
                .filter(|(i, w)| {
                    w.kind == Kind::Acronym
                        || (is_capitalized(w) && (*i > 0 || mid_caps.contains(&w.surface.to_lowercase())))
                })
                .count();
            proper as f64 / s.len() as f64
        })
        .collect();

    // f7: ten most frequent stems, ties alphabetical, counted with multiplicity
    let mut freq: Vec<(&String, usize)> = vocab
        .iter()
        .map(|t| (*t, stems.iter().flatten().filter(|s| s == t).count()))
        .collect();
    freq.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    let thematic: Vec<&String> = freq.iter().take(10).map(|(t, _)| *t).collect();
    let raw7: Vec<f64> = stems
        .iter()
        .map(|s| s.iter().filter(|t| thematic.contains(t)).count() as f64)
        .collect();
    let f7 = normalize(&raw7);

    // f8
    let f8: Vec<f64> = sentences
        .iter()
        .map(|s| s.iter().filter(|w| w.kind == Kind::Number).count() as f64 / s.len() as f64)
        .collect();

    (0..n)
        .map(|i| [f1[i], f2[i], f3[i], f4[i], f5[i], f6[i], f7[i], f8[i]])
        .collect()
}

fn normalize(raw: &[f64]) -> Vec<f64> {
    let max = raw.iter().copied().fold(0.0, f64::max);
    raw.iter().map(|x| if max > 0.0 { x / max } else { 0.0 }).collect()
}
