//! Narrative windowing and benchmark instance types.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExpressionKind {
    #[serde(rename = "idiom")]
    Idiom,
    #[serde(rename = "simile")]
    Simile,
}

impl std::fmt::Display for ExpressionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExpressionKind::Idiom => write!(f, "idiom"),
            ExpressionKind::Simile => write!(f, "simile"),
        }
    }
}

/// A short narrative: the sentences preceding a figurative expression plus
/// the sentence containing it. Field order matches the dataset JSONL lines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Narrative {
    pub kind: ExpressionKind,
    /// The sentences immediately preceding `final_sentence`, in source order.
    pub context_sentences: Vec<String>,
    pub final_sentence: String,
    /// The matched idiom or the `like <vehicle>` phrase of the simile.
    pub expression: String,
    /// Character span of `expression` within `final_sentence`.
    pub expression_char_span: (usize, usize),
    /// Idioms: the lexicon definition. Similes: the removed property.
    pub gloss: String,
}

impl Narrative {
    /// Context sentences joined with a single space (the knowledge-model
    /// subject for context bundles; excludes the final sentence).
    pub fn context_text(&self) -> String {
        self.context_sentences.join(" ")
    }

    /// Full narrative text: context sentences followed by the final
    /// sentence.
    pub fn full_text(&self) -> String {
        let mut s = self.context_text();
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str(&self.final_sentence);
        s
    }

    pub fn word_count(&self) -> usize {
        self.full_text().split_whitespace().count()
    }
}

/// Expression metadata attached to a narrative when it is built.
#[derive(Debug, Clone)]
pub struct ExpressionInfo {
    pub text: String,
    pub char_span: (usize, usize),
    pub kind: ExpressionKind,
    pub gloss: String,
}

/// Builds a narrative ending at `doc_sentences[index]`, prepending the
/// `window` preceding sentences. Returns `None` when fewer than `window`
/// sentences precede the match (such instances are dropped, not padded).
///
/// The caller supplies the final sentence text separately because simile
/// narratives end in the converted implicit form rather than the source
/// sentence.
pub fn build_narrative(
    doc_sentences: &[String],
    index: usize,
    window: usize,
    final_sentence: String,
    info: ExpressionInfo,
) -> Option<Narrative> {
    if index >= doc_sentences.len() || index < window {
        return None;
    }
    Some(Narrative {
        kind: info.kind,
        context_sentences: doc_sentences[index - window..index].to_vec(),
        final_sentence,
        expression: info.text,
        expression_char_span: info.char_span,
        gloss: info.gloss,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "plausible")]
    Plausible,
    #[serde(rename = "implausible")]
    Implausible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Continuation {
    pub text: String,
    pub label: Label,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Split {
    #[serde(rename = "train")]
    Train,
    #[serde(rename = "validation")]
    Validation,
    #[serde(rename = "test")]
    Test,
}

impl std::fmt::Display for Split {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Split::Train => write!(f, "train"),
            Split::Validation => write!(f, "validation"),
            Split::Test => write!(f, "test"),
        }
    }
}

/// One benchmark instance as written to the dataset JSONL file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetInstance {
    pub id: String,
    #[serde(flatten)]
    pub narrative: Narrative,
    pub continuations: Vec<Continuation>,
    pub split: Split,
}

impl DatasetInstance {
    /// The grouping key for expression-disjoint splits.
    pub fn expression_key(&self) -> &str {
        &self.narrative.expression
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentences(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("Sentence {i}.")).collect()
    }

    fn info() -> ExpressionInfo {
        ExpressionInfo {
            text: "chicken feed".into(),
            char_span: (0, 12),
            kind: ExpressionKind::Idiom,
            gloss: "a small sum".into(),
        }
    }

    #[test]
    fn exact_fit_window() {
        let docs = sentences(6);
        let n = build_narrative(&docs, 4, 4, docs[4].clone(), info()).unwrap();
        assert_eq!(n.context_sentences, &docs[0..4]);
        assert_eq!(n.final_sentence, docs[4]);
    }

    #[test]
    fn insufficient_context_dropped() {
        let docs = sentences(6);
        assert!(build_narrative(&docs, 2, 4, docs[2].clone(), info()).is_none());
    }

    #[test]
    fn index_out_of_range() {
        let docs = sentences(3);
        assert!(build_narrative(&docs, 9, 4, "x".into(), info()).is_none());
    }

    #[test]
    fn full_text_joins_context_and_final() {
        let docs = sentences(5);
        let n = build_narrative(&docs, 4, 4, docs[4].clone(), info()).unwrap();
        assert_eq!(
            n.full_text(),
            "Sentence 0. Sentence 1. Sentence 2. Sentence 3. Sentence 4."
        );
        assert!(!n.context_text().contains("Sentence 4"));
    }
}
