use serde::Serialize;

use super::porter;
use super::stopwords::Stopwords;

/// A single word of a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    /// Empty for stopwords and for tokens without any alphabetic character.
    pub stem: String,
    pub is_stopword: bool,
    pub is_numeric: bool,
    pub is_capitalized: bool,
    /// Byte offset of `surface` in the text handed to [`tokenize`].
    pub char_offset: usize,
}

impl Token {
    pub fn has_alphabetic(&self) -> bool {
        self.surface.chars().any(char::is_alphabetic)
    }

    /// All-caps word of at least two letters, e.g. `NASA`.
    pub fn is_acronym(&self) -> bool {
        let letters: Vec<char> = self.surface.chars().filter(|c| c.is_alphabetic()).collect();
        letters.len() >= 2 && letters.iter().all(|c| c.is_uppercase())
    }
}

// '%' and '$' belong to the numbers they annotate and survive stripping.
fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '%' || c == '$'
}

/// A token is numeric iff, after removing commas, `%`, `$` and one decimal
/// point, at least one character remains and all remaining characters are
/// ASCII digits.
pub fn is_numeric_token(s: &str) -> bool {
    let mut seen_point = false;
    let mut digits = 0usize;
    for c in s.chars() {
        match c {
            ',' | '%' | '$' => {}
            '.' if !seen_point => seen_point = true,
            d if d.is_ascii_digit() => digits += 1,
            _ => return false,
        }
    }
    digits > 0
}

/// Splits sentence text into word fragments with their byte offsets.
///
/// Splits on whitespace, then on internal hyphens and slashes, and strips
/// leading and trailing punctuation. Internal apostrophes and decimal points
/// are kept. Fragments with nothing left are dropped.
pub fn split_words(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() || c == '-' || c == '/' || c == '\u{2013}' || c == '\u{2014}' {
            if let Some(s) = start.take() {
                push_stripped(text, s, i, &mut out);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        push_stripped(text, s, text.len(), &mut out);
    }
    out
}

fn push_stripped<'a>(text: &'a str, from: usize, to: usize, out: &mut Vec<(usize, &'a str)>) {
    let piece = &text[from..to];
    let trimmed_start = piece.trim_start_matches(|c: char| !is_word_char(c));
    let lead = piece.len() - trimmed_start.len();
    let trimmed = trimmed_start.trim_end_matches(|c: char| !is_word_char(c));
    if !trimmed.is_empty() {
        out.push((from + lead, trimmed));
    }
}

/// Tokenizes one sentence, populating every flag.
pub fn tokenize(sentence_text: &str, stopwords: &Stopwords) -> Vec<Token> {
    split_words(sentence_text)
        .into_iter()
        .map(|(offset, surface)| make_token(surface, offset, stopwords))
        .collect()
}

fn make_token(surface: &str, offset: usize, stopwords: &Stopwords) -> Token {
    let lower = surface.to_lowercase();
    let is_stopword = stopwords.contains(&lower);
    let is_numeric = is_numeric_token(surface);
    let is_capitalized = surface.chars().next().is_some_and(char::is_uppercase);
    let stem = if is_stopword || !surface.chars().any(char::is_alphabetic) {
        String::new()
    } else {
        porter::stem(&lower)
    };
    Token {
        surface: surface.to_string(),
        lower,
        stem,
        is_stopword,
        is_numeric,
        is_capitalized,
        char_offset: offset,
    }
}
