//! Plain text to [`Document`]: sentence segmentation, tokenization,
//! stopword removal and Porter stemming.

pub mod porter;
mod segment;
mod stopwords;
mod tokenize;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

pub use porter::stem;
pub use segment::{paragraph_breaks, segment_sentences, Segment};
pub use stopwords::Stopwords;
pub use tokenize::{is_numeric_token, split_words, tokenize, Token};

/// Number of most frequent content stems treated as thematic.
pub const THEMATIC_WORDS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreprocessError {
    #[error("document `{0}` contains no sentences")]
    EmptyDocument(String),
    #[error("document `{id}` is not valid UTF-8 (invalid byte at offset {offset})")]
    InvalidUtf8 { id: String, offset: usize },
}

/// Where a document's title comes from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum TitleSource {
    /// First non-empty line of the text.
    #[default]
    FirstLine,
    /// The whole text is body; every title score is zero.
    None,
    Explicit(String),
}

/// Unprocessed input text split into title and body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub id: String,
    pub title: String,
    pub body: String,
    pub paragraph_breaks: Vec<usize>,
}

impl RawDocument {
    pub fn new(id: impl Into<String>, text: &str, title: &TitleSource) -> Result<Self, PreprocessError> {
        let id = id.into();
        let (title, body) = match title {
            TitleSource::FirstLine => {
                let text = text.trim_start();
                match text.split_once('\n') {
                    Some((first, rest)) => (first.trim().to_string(), rest.to_string()),
                    None => (text.trim().to_string(), String::new()),
                }
            }
            TitleSource::None => (String::new(), text.to_string()),
            TitleSource::Explicit(t) => (t.clone(), text.to_string()),
        };
        if body.trim().is_empty() {
            return Err(PreprocessError::EmptyDocument(id));
        }
        let paragraph_breaks = paragraph_breaks(&body);
        Ok(RawDocument {
            id,
            title,
            body,
            paragraph_breaks,
        })
    }

    /// Decodes UTF-8 input, reporting the offset of the first invalid byte.
    pub fn from_bytes(id: impl Into<String>, bytes: &[u8], title: &TitleSource) -> Result<Self, PreprocessError> {
        let id = id.into();
        match std::str::from_utf8(bytes) {
            Ok(text) => Self::new(id, text, title),
            Err(e) => Err(PreprocessError::InvalidUtf8 {
                id,
                offset: e.valid_up_to(),
            }),
        }
    }
}

/// Removes `<...>` markup, e.g. the SGML wrappers of newswire collections.
pub fn strip_tags(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut depth = 0usize;
    for c in text.chars() {
        match c {
            '<' => depth += 1,
            '>' if depth > 0 => depth -= 1,
            _ if depth == 0 => out.push(c),
            _ => {}
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    pub index: usize,
    pub paragraph_index: usize,
    pub index_in_paragraph: usize,
    pub tokens: Vec<Token>,
    /// Stems of the non-stopword tokens that contain a letter, in order.
    pub content_stems: Vec<String>,
    /// Source text with whitespace runs collapsed to single spaces.
    pub text: String,
}

impl Sentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Whitespace-separated word count of the text.
    pub fn word_count(&self) -> usize {
        self.text.split_whitespace().count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Document {
    pub id: String,
    pub title: String,
    pub title_stems: Vec<String>,
    pub sentences: Vec<Sentence>,
    pub thematic_stems: Vec<String>,
}

impl Document {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn has_title(&self) -> bool {
        !self.title_stems.is_empty()
    }
}

fn content_stems(tokens: &[Token]) -> Vec<String> {
    tokens
        .iter()
        .filter(|t| !t.stem.is_empty())
        .map(|t| t.stem.clone())
        .collect()
}

/// Preprocesses a raw document.
///
/// Sentences without any token are dropped and the remaining ones are
/// renumbered, so paragraph indices stay dense.
pub fn build_document(raw: &RawDocument, stopwords: &Stopwords) -> Result<Document, PreprocessError> {
    let segments = segment_sentences(&raw.body, &raw.paragraph_breaks);

    let mut sentences: Vec<Sentence> = Vec::with_capacity(segments.len());
    let mut paragraph_ids: HashMap<usize, usize> = HashMap::new();
    let mut per_paragraph: Vec<usize> = Vec::new();
    for seg in segments {
        let mut tokens = tokenize(seg.text, stopwords);
        if tokens.is_empty() {
            continue;
        }
        for t in &mut tokens {
            t.char_offset += seg.offset;
        }
        let next_id = paragraph_ids.len();
        let paragraph_index = *paragraph_ids.entry(seg.paragraph_index).or_insert(next_id);
        if paragraph_index == per_paragraph.len() {
            per_paragraph.push(0);
        }
        let index_in_paragraph = per_paragraph[paragraph_index];
        per_paragraph[paragraph_index] += 1;
        sentences.push(Sentence {
            index: sentences.len(),
            paragraph_index,
            index_in_paragraph,
            content_stems: content_stems(&tokens),
            tokens,
            text: seg.text.split_whitespace().collect::<Vec<_>>().join(" "),
        });
    }
    if sentences.is_empty() {
        return Err(PreprocessError::EmptyDocument(raw.id.clone()));
    }

    let title_stems = content_stems(&tokenize(&raw.title, stopwords));
    let thematic_stems = thematic_stems(&sentences, THEMATIC_WORDS);

    Ok(Document {
        id: raw.id.clone(),
        title: raw.title.clone(),
        title_stems,
        sentences,
        thematic_stems,
    })
}

/// The `k` most frequent content stems, ties broken alphabetically.
pub fn thematic_stems(sentences: &[Sentence], k: usize) -> Vec<String> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for stem in sentences.iter().flat_map(|s| &s.content_stems) {
        *counts.entry(stem).or_default() += 1;
    }
    let mut ranked: Vec<(&str, usize)> = counts.into_iter().collect();
    // the BTreeMap already yields alphabetical order; a stable sort keeps it among ties
    ranked.sort_by_key(|&(_, n)| std::cmp::Reverse(n));
    ranked.into_iter().take(k).map(|(s, _)| s.to_string()).collect()
}
