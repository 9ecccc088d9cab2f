//! Text normalization, sentence splitting and tokenization.
//!
//! All offsets are counted in Unicode scalar values of the *original* text, so
//! spans stay meaningful regardless of how a renderer encodes or shapes the
//! text.

use std::ops::Range;

use serde::{Deserialize, Serialize};

const TATWEEL: char = '\u{0640}';
const BARE_ALEF: char = '\u{0627}';

/// Characters that end a sentence.
pub const SENTENCE_TERMINATORS: [char; 7] = ['.', ':', '\u{061B}', ';', '!', '\u{061F}', '?'];

/// Arabic short vowels, tanween, shadda, sukun and the other combining marks
/// of the Arabic block, plus the superscript alef.
pub fn is_arabic_diacritic(c: char) -> bool {
    matches!(c, '\u{064B}'..='\u{065F}' | '\u{0670}')
}

fn fold_hamza(c: char) -> char {
    match c {
        // alef with madda, hamza above, hamza below; alef wasla
        '\u{0622}' | '\u{0623}' | '\u{0625}' | '\u{0671}' => BARE_ALEF,
        _ => c,
    }
}

pub fn is_terminator(c: char) -> bool {
    SENTENCE_TERMINATORS.contains(&c)
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_arabic_diacritic(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationOptions {
    pub fold_hamza: bool,
    pub keep_diacritics: bool,
}

impl Default for NormalizationOptions {
    fn default() -> Self {
        Self {
            fold_hamza: true,
            keep_diacritics: false,
        }
    }
}

/// Text after diacritic/tatweel stripping, with a map back to the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedText {
    pub original: String,
    pub normalized: String,
    /// For every character of `normalized`, its char index in `original`.
    pub offset_map: Vec<usize>,
    original_len: usize,
}

impl NormalizedText {
    /// Length of the original text in characters.
    pub fn original_len(&self) -> usize {
        self.original_len
    }

    pub fn is_empty(&self) -> bool {
        self.offset_map.is_empty()
    }

    /// Maps a range of normalized characters back to the original text.
    ///
    /// The end is exclusive and points one past the last mapped character.
    fn original_span(&self, normalized: Range<usize>) -> Range<usize> {
        debug_assert!(normalized.start < normalized.end);
        let start = self.offset_map[normalized.start];
        let end = self.offset_map[normalized.end - 1] + 1;
        start..end
    }
}

pub fn normalize(text: &str, options: NormalizationOptions) -> NormalizedText {
    let mut normalized = String::with_capacity(text.len());
    let mut offset_map = Vec::with_capacity(text.len() / 2);
    let mut original_len = 0;
    for (idx, c) in text.chars().enumerate() {
        original_len = idx + 1;
        if c == TATWEEL || (!options.keep_diacritics && is_arabic_diacritic(c)) {
            continue;
        }
        let c = if options.fold_hamza { fold_hamza(c) } else { c };
        normalized.push(c);
        offset_map.push(idx);
    }
    NormalizedText {
        original: text.to_owned(),
        normalized,
        offset_map,
        original_len,
    }
}

/// Normalizes a single word or affix, without keeping the offset map.
pub fn normalize_word(word: &str, options: NormalizationOptions) -> String {
    word.chars()
        .filter(|&c| c != TATWEEL && (options.keep_diacritics || !is_arabic_diacritic(c)))
        .map(|c| if options.fold_hamza { fold_hamza(c) } else { c })
        .collect()
}

/// Half-open character range into the original text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// Slices `text` by character offsets.
    pub fn slice<'a>(&self, text: &'a str) -> &'a str {
        let mut indices = text.char_indices().map(|(i, _)| i).chain(std::iter::once(text.len()));
        let start = indices.nth(self.start).unwrap_or(text.len());
        let end = if self.end > self.start {
            indices.nth(self.end - self.start - 1).unwrap_or(text.len())
        } else {
            start
        };
        &text[start..end]
    }
}

impl From<Range<usize>> for Span {
    fn from(r: Range<usize>) -> Self {
        Span::new(r.start, r.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// Normalized form.
    pub surface: String,
    pub span: Span,
    pub sentence_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub index: usize,
    pub tokens: Vec<Token>,
    pub terminator: Option<char>,
}

impl Sentence {
    /// Span from the first token start to the last token end.
    pub fn span(&self) -> Option<Span> {
        let first = self.tokens.first()?;
        let last = self.tokens.last()?;
        Some(Span::new(first.span.start, last.span.end))
    }
}

/// Splits normalized text at terminators and blank lines.
///
/// Segments without any token are dropped and the remaining sentences are
/// numbered consecutively.
pub fn split_sentences(nt: &NormalizedText) -> Vec<Sentence> {
    let chars: Vec<char> = nt.normalized.chars().collect();
    let mut sentences = Vec::new();
    let mut seg_start = 0;
    let mut i = 0;

    let flush = |range: Range<usize>, terminator: Option<char>, sentences: &mut Vec<Sentence>| {
        let index = sentences.len();
        let tokens = tokenize_range(nt, &chars, range, index);
        if !tokens.is_empty() {
            sentences.push(Sentence {
                index,
                tokens,
                terminator,
            });
        }
    };

    while i < chars.len() {
        let c = chars[i];
        if is_terminator(c) {
            flush(seg_start..i, Some(c), &mut sentences);
            i += 1;
            seg_start = i;
        } else if c.is_whitespace() {
            let run_start = i;
            let mut newlines = 0;
            while i < chars.len() && chars[i].is_whitespace() {
                if chars[i] == '\n' {
                    newlines += 1;
                }
                i += 1;
            }
            if newlines >= 2 {
                flush(seg_start..run_start, None, &mut sentences);
                seg_start = i;
            }
        } else {
            i += 1;
        }
    }
    flush(seg_start..chars.len(), None, &mut sentences);
    sentences
}

fn tokenize_range(
    nt: &NormalizedText,
    chars: &[char],
    range: Range<usize>,
    sentence_index: usize,
) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut word_start: Option<usize> = None;
    for i in range.clone() {
        if is_word_char(chars[i]) {
            word_start.get_or_insert(i);
        } else if let Some(start) = word_start.take() {
            tokens.push(make_token(nt, chars, start..i, sentence_index));
        }
    }
    if let Some(start) = word_start {
        tokens.push(make_token(nt, chars, start..range.end, sentence_index));
    }
    tokens
}

fn make_token(nt: &NormalizedText, chars: &[char], range: Range<usize>, sentence_index: usize) -> Token {
    Token {
        surface: chars[range.clone()].iter().collect(),
        span: nt.original_span(range).into(),
        sentence_index,
    }
}

/// Tokenizes a text segment that contains no sentence terminators.
///
/// Whitespace and punctuation separate tokens and never become tokens.
pub fn tokenize(segment: &str, options: NormalizationOptions) -> Vec<Token> {
    let nt = normalize(segment, options);
    let chars: Vec<char> = nt.normalized.chars().collect();
    tokenize_range(&nt, &chars, 0..chars.len(), 0)
}
