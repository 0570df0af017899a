//! Building inference bundles: subject selection and the fixed query
//! schedule that down-selects candidates to K entries.

use super::backend::KnowledgeModel;
use super::relation::{CONCEPT_RELATIONS, EVENT_RELATIONS, Relation};
use super::verbalize::verbalize;
use super::{BundleSource, Inference, InferenceBundle, KnowledgeError};
use crate::corpus::{ExpressionKind, Narrative};
use crate::par::try_map_ordered;
use crate::tagger::is_determiner;
use crate::text::{detokenize, is_clause_boundary, token_strings};

pub const DEFAULT_BUNDLE_SIZE: usize = 12;

/// Closed-class stopword list used to pick the content words of an idiom.
const STOPWORDS: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "i", "you", "he", "she", "it", "we",
    "they", "me", "him", "her", "us", "them", "my", "your", "his", "its", "our", "their", "mine",
    "yours", "hers", "ours", "theirs", "myself", "yourself", "himself", "herself", "itself",
    "ourselves", "themselves", "who", "whom", "whose", "which", "what", "where", "when", "why",
    "how", "am", "is", "are", "was", "were", "be", "been", "being", "have", "has", "had",
    "having", "do", "does", "did", "doing", "will", "would", "shall", "should", "can", "could",
    "may", "might", "must", "of", "in", "on", "at", "by", "with", "without", "from", "to", "for",
    "over", "under", "about", "into", "onto", "through", "during", "against", "between", "among",
    "up", "down", "out", "off", "and", "or", "but", "nor", "so", "yet", "if", "then",
    "than", "as", "because", "while", "until", "not", "no", "only", "own", "same", "such",
    "too", "very", "just", "also", "there", "here", "all", "any", "both", "each", "few", "more",
    "most", "other", "some", "now", "once", "again", "further", "before", "after", "above",
    "below",
];

fn is_stopword(token: &str) -> bool {
    STOPWORDS.contains(&token.to_lowercase().as_str())
}

/// Content words of an idiom: stopwords and punctuation removed, original
/// order preserved. Errors when nothing survives.
pub fn content_words(idiom_tokens: &[String]) -> Result<Vec<String>, KnowledgeError> {
    let words: Vec<String> = idiom_tokens
        .iter()
        .filter(|t| t.chars().any(char::is_alphanumeric))
        .filter(|t| !is_stopword(t))
        .cloned()
        .collect();
    if words.is_empty() {
        Err(KnowledgeError::AllStopwords)
    } else {
        Ok(words)
    }
}

/// The vehicle of an implicit simile: tokens after `like` up to the clause
/// boundary, with leading determiners stripped.
pub fn vehicle_phrase(sentence: &str) -> Result<String, KnowledgeError> {
    let tokens = token_strings(sentence);
    let like = tokens
        .iter()
        .position(|t| t.eq_ignore_ascii_case("like"))
        .ok_or(KnowledgeError::NoComparator)?;
    let end = tokens[like + 1..]
        .iter()
        .position(|t| is_clause_boundary(t))
        .map(|p| like + 1 + p)
        .unwrap_or(tokens.len());
    let mut start = like + 1;
    while start < end && is_determiner(&tokens[start]) {
        start += 1;
    }
    if start >= end {
        return Err(KnowledgeError::NoComparator);
    }
    Ok(detokenize(&tokens[start..end]))
}

/// Queries the backend for every `(subject, relation)` pair — possibly in
/// parallel — then emits candidates in the fixed round-robin schedule:
/// rank 1 before rank 2, subjects in order, relations cycling fastest. The
/// schedule guarantees relation diversity regardless of how many subjects
/// there are.
fn scheduled_candidates(
    subjects: &[String],
    relations: &[Relation],
    per_query_k: usize,
    model: &dyn KnowledgeModel,
) -> Result<Vec<Inference>, KnowledgeError> {
    let queries: Vec<(String, Relation)> = subjects
        .iter()
        .flat_map(|s| relations.iter().map(|r| (s.clone(), *r)))
        .collect();
    let results: Vec<Vec<String>> = try_map_ordered(&queries, |(s, r)| {
        model.generate(s, *r, per_query_k).map(|tails| {
            tails
                .into_iter()
                .filter(|t| !t.trim().is_empty())
                .collect()
        })
    })?;
    let mut out = Vec::new();
    for rank in 1..=per_query_k {
        for (si, subject) in subjects.iter().enumerate() {
            for (ri, relation) in relations.iter().enumerate() {
                let tails = &results[si * relations.len() + ri];
                if let Some(tail) = tails.get(rank - 1) {
                    out.push(Inference {
                        subject: subject.clone(),
                        relation: *relation,
                        tail: tail.clone(),
                        verbalized: verbalize(subject, *relation, tail),
                        rank,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn finish_bundle(
    instance_id: &str,
    source: BundleSource,
    mut candidates: Vec<Inference>,
    k: usize,
    fallback_subject: &str,
    fallback_relation: Relation,
) -> Result<InferenceBundle, KnowledgeError> {
    if candidates.is_empty() {
        return Err(KnowledgeError::EmptyTails {
            subject: fallback_subject.to_string(),
            relation: fallback_relation,
        });
    }
    candidates.truncate(k);
    let mut padded = false;
    while candidates.len() < k {
        let last = candidates.last().unwrap().clone();
        candidates.push(last);
        padded = true;
    }
    InferenceBundle::new(instance_id.to_string(), source, padded, candidates)
}

/// Literal inferences for a figurative expression.
///
/// Similes query the vehicle's `HasProperty` relation for the top K tails.
/// Idioms query every content word across the six concept relations, top 2
/// per pair, then down-select to K through the round-robin schedule.
pub fn literal_inferences(
    expression: &str,
    kind: ExpressionKind,
    model: &dyn KnowledgeModel,
    k: usize,
    instance_id: &str,
) -> Result<InferenceBundle, KnowledgeError> {
    match kind {
        ExpressionKind::Simile => {
            let vehicle = vehicle_phrase(expression)?;
            let subjects = vec![vehicle.clone()];
            let candidates =
                scheduled_candidates(&subjects, &[Relation::HasProperty], k, model)?;
            finish_bundle(
                instance_id,
                BundleSource::Literal,
                candidates,
                k,
                &vehicle,
                Relation::HasProperty,
            )
        }
        ExpressionKind::Idiom => {
            let tokens = token_strings(expression);
            let words = content_words(&tokens)?;
            let candidates = scheduled_candidates(&words, &CONCEPT_RELATIONS, 2, model)?;
            let fallback = words[0].clone();
            finish_bundle(
                instance_id,
                BundleSource::Literal,
                candidates,
                k,
                &fallback,
                Relation::UsedFor,
            )
        }
    }
}

/// Context inferences: the subject is the narrative's context sentences
/// joined together — the expression-bearing final sentence is excluded —
/// queried across the six event relations, top 2 each.
pub fn context_inferences(
    narrative: &Narrative,
    model: &dyn KnowledgeModel,
    k: usize,
    instance_id: &str,
) -> Result<InferenceBundle, KnowledgeError> {
    let subject = narrative.context_text();
    let subjects = vec![subject.clone()];
    let candidates = scheduled_candidates(&subjects, &EVENT_RELATIONS, 2, model)?;
    finish_bundle(
        instance_id,
        BundleSource::Context,
        candidates,
        k,
        &subject,
        Relation::XIntent,
    )
}
