//! Explicit simile detection and explicit-to-implicit conversion.
//!
//! Two syntactic patterns are mined: `as ADJ/ADV as <vehicle>` and
//! `ADJ/ADV [,] like <vehicle>`, with the vehicle required to be a noun
//! phrase. The vehicle runs from the token after the comparator to the
//! clause boundary (comma or sentence terminator).

use serde::{Deserialize, Serialize};

use super::CorpusError;
use crate::tagger::{PosTag, TaggedSentence, cuts_noun_phrase};
use crate::text::{TokenSpan, detokenize, is_clause_boundary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparator {
    #[serde(rename = "like")]
    Like,
    #[serde(rename = "as…as")]
    AsAs,
}

/// An explicit simile located inside a tagged sentence. All spans are token
/// index ranges into that sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExplicitSimile {
    /// Everything before the pattern; may be empty when the simile opens
    /// the sentence.
    pub topic: TokenSpan,
    /// The stated property (a single ADJ or ADV token).
    pub property: TokenSpan,
    pub comparator: Comparator,
    pub vehicle: TokenSpan,
}

fn clause_end(sentence: &TaggedSentence, from: usize) -> usize {
    (from..sentence.len())
        .find(|&i| is_clause_boundary(&sentence.tokens[i]))
        .unwrap_or(sentence.len())
}

/// Noun-phrase test for a vehicle span: the head — the last token of the
/// prefix that precedes the first prepositional or relative modifier — must
/// be tagged NOUN, and the span must not be a bare pronoun.
fn is_noun_phrase(sentence: &TaggedSentence, span: TokenSpan) -> bool {
    if span.is_empty() {
        return false;
    }
    if span.len() == 1 && sentence.tags[span.start] == PosTag::Pron {
        return false;
    }
    let mut head_end = span.end;
    for i in span.start..span.end {
        if cuts_noun_phrase(&sentence.tokens[i]) {
            head_end = i;
            break;
        }
    }
    if head_end == span.start {
        return false;
    }
    sentence.tags[head_end - 1] == PosTag::Noun
}

fn is_property(tag: PosTag) -> bool {
    matches!(tag, PosTag::Adj | PosTag::Adv)
}

/// Scans for the first explicit simile in the sentence, trying the
/// `as ADJ/ADV as` pattern and the `ADJ/ADV [,] like` pattern at each
/// position. Returns `None` when neither pattern matches with a
/// noun-phrase vehicle.
pub fn detect_explicit_simile(sentence: &TaggedSentence) -> Option<ExplicitSimile> {
    let n = sentence.len();
    for i in 0..n {
        // as ADJ/ADV as <vehicle>
        if i + 3 <= n
            && sentence.tokens[i].eq_ignore_ascii_case("as")
            && is_property(sentence.tags[i + 1])
            && sentence.tokens[i + 2].eq_ignore_ascii_case("as")
        {
            let vehicle = TokenSpan::new(i + 3, clause_end(sentence, i + 3));
            if is_noun_phrase(sentence, vehicle) {
                return Some(ExplicitSimile {
                    topic: TokenSpan::new(0, i),
                    property: TokenSpan::new(i + 1, i + 2),
                    comparator: Comparator::AsAs,
                    vehicle,
                });
            }
        }
        // ADJ/ADV like <vehicle>  and  ADJ/ADV , like <vehicle>
        if is_property(sentence.tags[i]) {
            let like_at = if i + 1 < n && sentence.tokens[i + 1].eq_ignore_ascii_case("like") {
                Some(i + 1)
            } else if i + 2 < n
                && sentence.tokens[i + 1] == ","
                && sentence.tokens[i + 2].eq_ignore_ascii_case("like")
            {
                Some(i + 2)
            } else {
                None
            };
            if let Some(like) = like_at {
                let vehicle = TokenSpan::new(like + 1, clause_end(sentence, like + 1));
                if is_noun_phrase(sentence, vehicle) {
                    return Some(ExplicitSimile {
                        topic: TokenSpan::new(0, i),
                        property: TokenSpan::new(i, i + 1),
                        comparator: Comparator::Like,
                        vehicle,
                    });
                }
            }
        }
    }
    None
}

/// Rewrites the sentence with the property removed: `as P as V` becomes
/// `like V`, and `P like V` / `P, like V` become `like V`. Errors when the
/// rewrite would leave `like` sentence-initial with no topic.
pub fn to_implicit(
    simile: &ExplicitSimile,
    sentence: &TaggedSentence,
) -> Result<String, CorpusError> {
    if simile.vehicle.end > sentence.len() || simile.property.end > sentence.len() {
        return Err(CorpusError::SpanMismatch);
    }
    if simile.topic.is_empty() {
        return Err(CorpusError::DanglingComparator);
    }
    let tokens = &sentence.tokens;
    let mut out: Vec<String> = Vec::with_capacity(tokens.len());
    match simile.comparator {
        Comparator::AsAs => {
            // topic .. [as P as] vehicle.. -> topic .. like vehicle..
            let pattern_start = simile.property.start - 1;
            out.extend_from_slice(&tokens[..pattern_start]);
            out.push("like".to_string());
            out.extend_from_slice(&tokens[simile.vehicle.start..]);
        }
        Comparator::Like => {
            // topic .. [P [,]] like vehicle.. -> topic .. like vehicle..
            out.extend_from_slice(&tokens[..simile.property.start]);
            let mut rest = simile.property.end;
            if tokens.get(rest).map(String::as_str) == Some(",") {
                rest += 1;
            }
            out.extend_from_slice(&tokens[rest..]);
        }
    }
    Ok(detokenize(&out))
}

/// Detects an explicit simile and converts it in one step. Errors with
/// [`CorpusError::NoExplicitSimile`] when the sentence has no property to
/// remove (e.g. it is already implicit).
pub fn implicitize(sentence: &TaggedSentence) -> Result<String, CorpusError> {
    let simile = detect_explicit_simile(sentence).ok_or(CorpusError::NoExplicitSimile)?;
    to_implicit(&simile, sentence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagger::RuleTagger;
    use crate::text::token_strings;

    fn tagged(text: &str) -> TaggedSentence {
        TaggedSentence::from_tokens(token_strings(text), &RuleTagger)
    }

    const EXPLICIT_AS: &str = "He feels as calm as a high mountain lake without a wind stirring it.";
    const EXPLICIT_LIKE: &str = "He feels calm, like a high mountain lake without a wind stirring it.";
    const IMPLICIT: &str = "He feels like a high mountain lake without a wind stirring it.";

    #[test]
    fn detects_as_adj_as_pattern() {
        let s = tagged(EXPLICIT_AS);
        let sim = detect_explicit_simile(&s).expect("should detect");
        assert_eq!(sim.comparator, Comparator::AsAs);
        assert_eq!(&s.tokens[sim.property.start..sim.property.end], &["calm"]);
        let vehicle = detokenize(&s.tokens[sim.vehicle.start..sim.vehicle.end]);
        assert_eq!(vehicle, "a high mountain lake without a wind stirring it");
    }

    #[test]
    fn detects_adj_comma_like_pattern() {
        let s = tagged(EXPLICIT_LIKE);
        let sim = detect_explicit_simile(&s).expect("should detect");
        assert_eq!(sim.comparator, Comparator::Like);
        assert_eq!(&s.tokens[sim.property.start..sim.property.end], &["calm"]);
    }

    #[test]
    fn rejects_pronoun_vehicle() {
        assert!(detect_explicit_simile(&tagged("I worked as hard as him.")).is_none());
    }

    #[test]
    fn no_comparator_no_match() {
        assert!(detect_explicit_simile(&tagged("He ran home.")).is_none());
    }

    #[test]
    fn converts_both_explicit_forms_verbatim() {
        for text in [EXPLICIT_AS, EXPLICIT_LIKE] {
            let s = tagged(text);
            let sim = detect_explicit_simile(&s).unwrap();
            assert_eq!(to_implicit(&sim, &s).unwrap(), IMPLICIT);
        }
    }

    #[test]
    fn implicit_sentence_is_an_error() {
        let s = tagged(IMPLICIT);
        assert!(matches!(implicitize(&s), Err(CorpusError::NoExplicitSimile)));
    }

    #[test]
    fn sentence_initial_pattern_rejected() {
        let s = tagged("As calm as a lake.");
        let sim = detect_explicit_simile(&s).expect("pattern itself matches");
        assert!(sim.topic.is_empty());
        assert!(matches!(to_implicit(&sim, &s), Err(CorpusError::DanglingComparator)));
    }

    #[test]
    fn vehicle_head_must_be_noun() {
        // head of "as white as snow melting" prefix before no preposition
        // is "melting" (OTHER) -> reject
        assert!(detect_explicit_simile(&tagged("It was as white as melting.")).is_none());
        assert!(detect_explicit_simile(&tagged("It was as white as snow.")).is_some());
    }

    #[test]
    fn clause_boundary_caps_vehicle() {
        let s = tagged("She was graceful like a swan, and she knew it.");
        let sim = detect_explicit_simile(&s).unwrap();
        let vehicle = detokenize(&s.tokens[sim.vehicle.start..sim.vehicle.end]);
        assert_eq!(vehicle, "a swan");
        assert_eq!(
            to_implicit(&sim, &s).unwrap(),
            "She was like a swan, and she knew it."
        );
    }
}
