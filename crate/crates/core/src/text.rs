//! Tokenization, sentence segmentation, and detokenization.
//!
//! The tokenizer keeps hyphenated words and contractions as single tokens
//! and emits punctuation as one-character tokens. Offsets are character
//! offsets into the source string.

use serde::{Deserialize, Serialize};

/// Half-open token index range `[start, end)` within a token sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSpan {
    pub start: usize,
    pub end: usize,
}

impl TokenSpan {
    pub fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }
}

/// A token together with its character offsets in the source string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    /// Inclusive character offset of the first character.
    pub start: usize,
    /// Exclusive character offset past the last character.
    pub end: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\'' || c == '\u{2019}' || c == '-'
}

/// Splits `text` into tokens with character offsets.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    let mut word_start = 0usize;
    let mut pos = 0usize;
    for c in text.chars() {
        if is_word_char(c) {
            if word.is_empty() {
                word_start = pos;
            }
            word.push(c);
        } else {
            if !word.is_empty() {
                tokens.push(Token {
                    text: std::mem::take(&mut word),
                    start: word_start,
                    end: pos,
                });
            }
            if !c.is_whitespace() {
                tokens.push(Token {
                    text: c.to_string(),
                    start: pos,
                    end: pos + 1,
                });
            }
        }
        pos += 1;
    }
    if !word.is_empty() {
        tokens.push(Token {
            text: word,
            start: word_start,
            end: pos,
        });
    }
    tokens
}

/// Token texts only.
pub fn token_strings(text: &str) -> Vec<String> {
    tokenize(text).into_iter().map(|t| t.text).collect()
}

const NO_SPACE_BEFORE: &[&str] = &[".", ",", "!", "?", ";", ":", ")", "%", "\u{2019}"];

/// Joins tokens back into a sentence with normalized spacing: no space
/// before closing punctuation, no space after an opening parenthesis.
pub fn detokenize(tokens: &[String]) -> String {
    let mut out = String::new();
    for t in tokens {
        let glue = NO_SPACE_BEFORE.contains(&t.as_str());
        if !out.is_empty() && !glue && !out.ends_with('(') {
            out.push(' ');
        }
        out.push_str(t);
    }
    out
}

/// Tokens that end a clause: comma and sentence terminators.
pub fn is_clause_boundary(token: &str) -> bool {
    matches!(token, "," | "." | "!" | "?" | ";" | ":")
}

/// Abbreviations whose trailing period does not end a sentence.
const ABBREVIATIONS: &[&str] = &[
    "dr", "mr", "mrs", "ms", "prof", "sr", "jr", "st", "etc", "vs", "fig", "vol", "inc", "ltd",
    "co", "mt", "capt", "sgt", "col", "gen", "rev", "hon", "approx",
];

/// Splits raw text into sentences.
///
/// `.`, `!`, and `?` terminate a sentence unless the period belongs to a
/// known abbreviation or sits between alphanumeric characters (decimals,
/// "e.g."). Closing quotes directly after a terminator stay attached to
/// the sentence. The concatenation of the returned sentences equals the
/// input modulo whitespace; empty input yields an empty list.
pub fn segment_sentences(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut buf = String::new();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        buf.push(c);
        if c == '.' || c == '!' || c == '?' {
            let next = chars.get(i + 1).copied();
            let splits = match c {
                '.' => {
                    let inside_token = next.is_some_and(|n| n.is_alphanumeric());
                    !inside_token && !preceded_by_abbreviation(&chars, i)
                }
                _ => true,
            };
            if splits {
                // keep closing quotes/brackets with the sentence they end
                while let Some(&n) = chars.get(i + 1) {
                    if n == '"' || n == '\'' || n == ')' || n == '\u{2019}' || n == '\u{201d}' {
                        buf.push(n);
                        i += 1;
                    } else {
                        break;
                    }
                }
                let s = buf.trim();
                if !s.is_empty() {
                    sentences.push(s.to_string());
                }
                buf.clear();
            }
        }
        i += 1;
    }
    let tail = buf.trim();
    if !tail.is_empty() {
        sentences.push(tail.to_string());
    }
    sentences
}

fn preceded_by_abbreviation(chars: &[char], dot: usize) -> bool {
    let mut start = dot;
    while start > 0 && chars[start - 1].is_alphabetic() {
        start -= 1;
    }
    if start == dot {
        return false;
    }
    let word: String = chars[start..dot].iter().collect::<String>().to_lowercase();
    ABBREVIATIONS.contains(&word.as_str())
}
