//! Rule-based sentence boundary detection.
//!
//! A boundary follows `.`, `!` or `?` (plus any closing quotes or brackets)
//! when the next non-space character, after optional opening quotes, is an
//! uppercase letter or a digit. A lone period after a known abbreviation or
//! a single-letter initial never ends a sentence. Sentences never cross
//! paragraph boundaries.

/// Lowercased abbreviations, without their final period.
const ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "inc", "co", "corp", "ltd", "jr", "sr", "st", "vs", "etc", "u.s", "u.k", "u.n",
    "e.g", "i.e", "gen", "gov", "sen", "rep", "rev", "lt", "col", "capt", "sgt", "mt", "ft", "jan", "feb", "aug",
    "sept", "oct", "nov", "dec", "no",
];

/// One detected sentence: a trimmed slice of the body.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment<'a> {
    pub text: &'a str,
    pub paragraph_index: usize,
    /// Byte offset of `text` within the body.
    pub offset: usize,
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201d}' | '\u{2019}')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '\u{201c}' | '\u{2018}')
}

fn is_abbreviation(word: &str) -> bool {
    let word = word.trim_start_matches(|c: char| is_opener(c) || c == '-');
    let lower = word.to_lowercase();
    let mut chars = lower.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        // single-letter initial such as the "F." in "John F. Kennedy"
        return c.is_alphabetic();
    }
    ABBREVIATIONS.contains(&lower.as_str())
}

/// Byte offsets at which blank-line runs begin.
///
/// A blank line is a line containing only whitespace. Consecutive blank
/// lines form a single break.
pub fn paragraph_breaks(body: &str) -> Vec<usize> {
    let mut breaks = Vec::new();
    let mut offset = 0;
    let mut in_blank_run = false;
    let mut seen_content = false;
    for line in body.split_inclusive('\n') {
        let blank = line.trim().is_empty();
        if blank && seen_content && !in_blank_run {
            breaks.push(offset);
        }
        in_blank_run = blank;
        seen_content |= !blank;
        offset += line.len();
    }
    breaks
}

/// Splits `body` into sentences, each tagged with its paragraph.
///
/// `breaks` are byte offsets separating paragraphs (see [`paragraph_breaks`]);
/// paragraphs that contain no text do not consume a paragraph index.
pub fn segment_sentences<'a>(body: &'a str, breaks: &[usize]) -> Vec<Segment<'a>> {
    let mut bounds: Vec<usize> = breaks
        .iter()
        .copied()
        .filter(|&b| b > 0 && b < body.len() && body.is_char_boundary(b))
        .collect();
    bounds.sort_unstable();
    bounds.dedup();

    let mut out = Vec::new();
    let mut paragraph_index = 0;
    let mut start = 0;
    for end in bounds.into_iter().chain(std::iter::once(body.len())) {
        let before = out.len();
        split_paragraph(body, start, end, paragraph_index, &mut out);
        if out.len() > before {
            paragraph_index += 1;
        }
        start = end;
    }
    out
}

fn split_paragraph<'a>(body: &'a str, start: usize, end: usize, paragraph_index: usize, out: &mut Vec<Segment<'a>>) {
    let para = &body[start..end];
    let chars: Vec<(usize, char)> = para.char_indices().collect();
    let mut sentence_start = 0;
    let mut i = 0;
    while i < chars.len() {
        if !is_terminator(chars[i].1) {
            i += 1;
            continue;
        }
        let term_start = i;
        while i < chars.len() && is_terminator(chars[i].1) {
            i += 1;
        }
        let single_period = i - term_start == 1 && chars[term_start].1 == '.';
        while i < chars.len() && is_closer(chars[i].1) {
            i += 1;
        }
        let cut = i;
        let mut k = i;
        while k < chars.len() && chars[k].1.is_whitespace() {
            k += 1;
        }
        if k == cut || k == chars.len() {
            continue;
        }
        while k < chars.len() && is_opener(chars[k].1) {
            k += 1;
        }
        let next_starts_sentence = k < chars.len() && (chars[k].1.is_uppercase() || chars[k].1.is_ascii_digit());
        if !next_starts_sentence {
            continue;
        }
        if single_period {
            let term_byte = chars[term_start].0;
            let word_start = para[..term_byte]
                .rfind(char::is_whitespace)
                .map_or(0, |p| p + para[p..].chars().next().map_or(1, char::len_utf8));
            if is_abbreviation(&para[word_start..term_byte]) {
                continue;
            }
        }
        let cut_byte = chars.get(cut).map_or(para.len(), |c| c.0);
        push_trimmed(para, start, sentence_start, cut_byte, paragraph_index, out);
        sentence_start = cut_byte;
    }
    push_trimmed(para, start, sentence_start, para.len(), paragraph_index, out);
}

fn push_trimmed<'a>(
    para: &'a str,
    base: usize,
    from: usize,
    to: usize,
    paragraph_index: usize,
    out: &mut Vec<Segment<'a>>,
) {
    let raw = &para[from..to];
    let text = raw.trim();
    if text.is_empty() {
        return;
    }
    let lead = raw.len() - raw.trim_start().len();
    out.push(Segment {
        text,
        paragraph_index,
        offset: base + from + lead,
    });
}
