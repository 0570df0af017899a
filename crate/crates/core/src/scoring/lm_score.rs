//! Zero-shot plausibility from language-model likelihood.

use super::ScoringError;
use crate::decoding::{LanguageModel, log_softmax};
use crate::scoring::MultipleChoiceInstance;

/// How the continuation log-likelihood is normalized. The default is the
/// mean per-token log-probability; total and length^alpha are available
/// for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Normalization {
    #[default]
    Mean,
    Total,
    LengthAlpha(f64),
}

/// Mean per-token log-probability of `continuation` conditioned on
/// `narrative`. Higher is more plausible.
pub fn lm_choice_score(
    lm: &dyn LanguageModel,
    narrative: &str,
    continuation: &str,
) -> Result<f64, ScoringError> {
    lm_choice_score_with(lm, narrative, continuation, Normalization::Mean)
}

/// Like [`lm_choice_score`] with an explicit normalization.
pub fn lm_choice_score_with(
    lm: &dyn LanguageModel,
    narrative: &str,
    continuation: &str,
    normalization: Normalization,
) -> Result<f64, ScoringError> {
    let cont_tokens = lm.encode(continuation)?;
    if cont_tokens.is_empty() {
        return Err(ScoringError::EmptyContinuation);
    }
    let mut prefix = lm.encode(narrative)?;
    let mut total = 0.0;
    for &tok in &cont_tokens {
        let log_probs = log_softmax(&lm.next_logits(&prefix));
        total += log_probs[tok as usize];
        prefix.push(tok);
    }
    let n = cont_tokens.len() as f64;
    Ok(match normalization {
        Normalization::Mean => total / n,
        Normalization::Total => total,
        Normalization::LengthAlpha(alpha) => total / n.powf(alpha),
    })
}

/// Picks the candidate with the higher LM score; exact ties go to index 0.
pub fn zero_shot_choose(
    lm: &dyn LanguageModel,
    instance: &MultipleChoiceInstance,
) -> Result<usize, ScoringError> {
    let narrative = instance.narrative.full_text();
    let s0 = lm_choice_score(lm, &narrative, &instance.candidates[0])?;
    let s1 = lm_choice_score(lm, &narrative, &instance.candidates[1])?;
    Ok(super::inputs::choose_index(s0, s1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoding::ToyLm;

    fn uniform_lm() -> ToyLm {
        ToyLm::from_json_str(r#"{"vocab": ["a", "b", "c", "d"], "table": {}}"#).unwrap()
    }

    #[test]
    fn uniform_lm_scores_ln_quarter() {
        let lm = uniform_lm();
        let s = lm_choice_score(&lm, "a", "b c").unwrap();
        assert!((s - 0.25f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn empty_continuation_is_an_error() {
        let lm = uniform_lm();
        assert!(matches!(
            lm_choice_score(&lm, "a", "  "),
            Err(ScoringError::EmptyContinuation)
        ));
    }

    #[test]
    fn fixture_table_mean_log_prob() {
        // rows are ln(p) vectors: P(b | n) = 0.5, P(c | n b) = 0.25
        let ln = |p: f64| p.ln();
        let fixture = serde_json::json!({
            "vocab": ["n", "b", "c", "d"],
            "table": {
                "n": [-100.0, ln(0.5), ln(0.25), ln(0.25)],
                "n\u{23B5}b": [-100.0, ln(0.375), ln(0.25), ln(0.375)],
            }
        });
        let lm = ToyLm::from_json_str(&fixture.to_string()).unwrap();
        let s = lm_choice_score(&lm, "n", "b c").unwrap();
        let expected = (0.5f64.ln() + 0.25f64.ln()) / 2.0;
        assert!((s - expected).abs() < 1e-9, "{s} vs {expected}");
    }

    #[test]
    fn total_normalization_scales_with_length() {
        let lm = uniform_lm();
        let mean = lm_choice_score_with(&lm, "a", "b c d", Normalization::Mean).unwrap();
        let total = lm_choice_score_with(&lm, "a", "b c d", Normalization::Total).unwrap();
        assert!((total - 3.0 * mean).abs() < 1e-12);
        let alpha =
            lm_choice_score_with(&lm, "a", "b c d", Normalization::LengthAlpha(1.0)).unwrap();
        assert!((alpha - mean).abs() < 1e-12);
    }
}
