//! Idiom lexicon loading and exact token-sequence matching.

use std::collections::HashMap;
use std::path::Path;

use super::CorpusError;
use crate::tagger::TaggedSentence;
use crate::text::{TokenSpan, token_strings};

/// One lexicon entry: a lowercase token sequence plus its definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdiomLexiconEntry {
    pub expression: Vec<String>,
    pub definition: String,
}

impl IdiomLexiconEntry {
    /// Expression as one space-joined string (the grouping key for splits).
    pub fn expression_text(&self) -> String {
        self.expression.join(" ")
    }
}

/// A validated idiom lexicon: every expression has at least two tokens and
/// is unique. Matching is case-insensitive exact token-sequence matching;
/// inflectional variants are deliberately not expanded.
#[derive(Debug, Clone, Default)]
pub struct IdiomLexicon {
    entries: Vec<IdiomLexiconEntry>,
    // first token -> entry indices, to avoid scanning the whole lexicon per position
    first_token: HashMap<String, Vec<usize>>,
}

impl IdiomLexicon {
    pub fn new(entries: Vec<IdiomLexiconEntry>) -> Result<Self, CorpusError> {
        if entries.is_empty() {
            return Err(CorpusError::EmptyLexicon);
        }
        let mut seen = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            if e.expression.len() < 2 {
                return Err(CorpusError::ShortExpression {
                    line: i + 1,
                    expression: e.expression_text(),
                });
            }
            if seen.insert(e.expression_text(), i).is_some() {
                return Err(CorpusError::DuplicateExpression {
                    line: i + 1,
                    expression: e.expression_text(),
                });
            }
        }
        let mut first_token: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            first_token.entry(e.expression[0].clone()).or_default().push(i);
        }
        Ok(Self { entries, first_token })
    }

    /// Parses TSV content: `expression<TAB>definition` per line. Blank lines
    /// and lines starting with `#` are skipped. Expressions are lowercased
    /// and tokenized with the shared tokenizer.
    pub fn from_tsv_str(content: &str) -> Result<Self, CorpusError> {
        let mut entries = Vec::new();
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (expr, def) = line
                .split_once('\t')
                .ok_or(CorpusError::LexiconFormat { line: lineno + 1 })?;
            let tokens = token_strings(&expr.to_lowercase());
            if tokens.len() < 2 {
                return Err(CorpusError::ShortExpression {
                    line: lineno + 1,
                    expression: expr.to_string(),
                });
            }
            entries.push(IdiomLexiconEntry {
                expression: tokens,
                definition: def.trim().to_string(),
            });
        }
        Self::new(entries)
    }

    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        Self::from_tsv_str(&std::fs::read_to_string(path)?)
    }

    pub fn entries(&self) -> &[IdiomLexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn candidates(&self, first_token_lower: &str) -> &[usize] {
        self.first_token
            .get(first_token_lower)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

/// A lexicon hit: which entry matched and the token span it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpressionMatch {
    pub entry_index: usize,
    pub span: TokenSpan,
}

/// Finds every lexicon expression occurring in `sentence` as a contiguous
/// token sequence, case-insensitively. Overlapping matches are all
/// returned, sorted by start position (then end, then entry order).
pub fn match_expressions(
    sentence: &TaggedSentence,
    lexicon: &IdiomLexicon,
) -> Vec<ExpressionMatch> {
    let lowered: Vec<String> = sentence.tokens.iter().map(|t| t.to_lowercase()).collect();
    let mut matches = Vec::new();
    for start in 0..lowered.len() {
        for &entry_index in lexicon.candidates(&lowered[start]) {
            let expr = &lexicon.entries[entry_index].expression;
            let end = start + expr.len();
            if end <= lowered.len() && lowered[start..end] == expr[..] {
                matches.push(ExpressionMatch {
                    entry_index,
                    span: TokenSpan::new(start, end),
                });
            }
        }
    }
    matches.sort_by_key(|m| (m.span.start, m.span.end, m.entry_index));
    matches
}
