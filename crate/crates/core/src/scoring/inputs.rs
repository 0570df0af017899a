//! Multiple-choice input assembly and encoder-based scoring routes.

use super::{Encoder, ScoreHead, ScoringError};
use crate::knowledge::InferenceBundle;

/// Segment list for the encoder: `[N, C]`, or `[Inf, N, C]` when an
/// inference is attached.
pub fn build_mc_input(
    narrative_text: &str,
    continuation: &str,
    inference: Option<&str>,
) -> Vec<String> {
    match inference {
        None => vec![narrative_text.to_string(), continuation.to_string()],
        Some(inf) => vec![
            inf.to_string(),
            narrative_text.to_string(),
            continuation.to_string(),
        ],
    }
}

/// Deterministic two-way argmax; exact ties choose index 0.
pub fn choose_index(s0: f64, s1: f64) -> usize {
    usize::from(s1 > s0)
}

/// Supervised score: `head(encode([N, C]))`.
pub fn supervised_score(
    encoder: &dyn Encoder,
    head: &ScoreHead,
    narrative_text: &str,
    continuation: &str,
) -> Result<f64, ScoringError> {
    head.score(&encoder.encode(&build_mc_input(narrative_text, continuation, None)))
}

/// Knowledge-enhanced score: the exact sum over the bundle of per-inference
/// scores `head(encode([Inf_j, N, C]))`. No averaging.
pub fn knowledge_choice_score(
    encoder: &dyn Encoder,
    head: &ScoreHead,
    narrative_text: &str,
    continuation: &str,
    bundle: &InferenceBundle,
) -> Result<f64, ScoringError> {
    if bundle.is_empty() {
        return Err(ScoringError::EmptyBundle);
    }
    let mut total = 0.0;
    for inference in &bundle.inferences {
        let segments = build_mc_input(narrative_text, continuation, Some(&inference.verbalized));
        total += head.score(&encoder.encode(&segments))?;
    }
    Ok(total)
}

/// Continuation-only bias baseline: `head(encode([C]))`; the narrative is
/// never part of the input.
pub fn continuation_only_score(
    encoder: &dyn Encoder,
    head: &ScoreHead,
    continuation: &str,
) -> Result<f64, ScoringError> {
    head.score(&encoder.encode(&[continuation.to_string()]))
}
