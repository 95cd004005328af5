use std::collections::BTreeSet;

const ENGLISH: &str = include_str!("../stopwords.txt");

/// A set of lowercase stopwords.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Stopwords {
    words: BTreeSet<String>,
}

impl Stopwords {
    /// The shipped English list.
    pub fn english() -> Self {
        Self::parse(ENGLISH)
    }

    /// Parses the stopword file format: one word per line, `#` starts a
    /// comment, blank lines are ignored. Words are lowercased.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::to_lowercase)
            .collect();
        Stopwords { words }
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Stopwords {
            words: words.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }

    pub fn contains(&self, lower: &str) -> bool {
        self.words.contains(lower)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}
