//! The generation loops: single-prompt sampling and ensemble-logit
//! decoding across inference-conditioned prompts.

use rand::Rng;

use super::sampling::{filtered_distribution, sample_index};
use super::{DecodingConfig, DecodingError, LanguageModel, TokenId};
use crate::knowledge::InferenceBundle;
use crate::par::map_ordered;

/// Builds the generation prompt `Inf <sep1> N <sep2>` as token ids.
pub fn build_gen_prompt(
    inference_text: &str,
    narrative_text: &str,
    lm: &dyn LanguageModel,
) -> Result<Vec<TokenId>, DecodingError> {
    if inference_text.trim().is_empty() {
        return Err(DecodingError::EmptyInference);
    }
    let (sep1, sep2) = lm.sep_ids().ok_or(DecodingError::MissingSeparators)?;
    let mut tokens = lm.encode(inference_text)?;
    tokens.push(sep1);
    tokens.extend(lm.encode(narrative_text)?);
    tokens.push(sep2);
    Ok(tokens)
}

/// K prompts sharing the same narrative suffix, one per inference.
#[derive(Debug, Clone)]
pub struct EnsemblePromptSet {
    prompts: Vec<Vec<TokenId>>,
}

impl EnsemblePromptSet {
    /// Validates that the set is non-empty and every prompt ends with
    /// `<sep2>`.
    pub fn new(prompts: Vec<Vec<TokenId>>, lm: &dyn LanguageModel) -> Result<Self, DecodingError> {
        if prompts.is_empty() {
            return Err(DecodingError::EmptyPromptSet);
        }
        let (_, sep2) = lm.sep_ids().ok_or(DecodingError::MissingSeparators)?;
        for p in &prompts {
            if p.last() != Some(&sep2) {
                return Err(DecodingError::PromptNotTerminated);
            }
        }
        Ok(Self { prompts })
    }

    /// One prompt per inference in bundle order.
    pub fn from_bundle(
        bundle: &InferenceBundle,
        narrative_text: &str,
        lm: &dyn LanguageModel,
    ) -> Result<Self, DecodingError> {
        if bundle.is_empty() {
            return Err(DecodingError::EmptyPromptSet);
        }
        let prompts = bundle
            .inferences
            .iter()
            .map(|inf| build_gen_prompt(&inf.verbalized, narrative_text, lm))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(prompts, lm)
    }

    pub fn len(&self) -> usize {
        self.prompts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prompts.is_empty()
    }

    pub fn prompts(&self) -> &[Vec<TokenId>] {
        &self.prompts
    }
}

fn is_sentence_terminator(lm: &dyn LanguageModel, token: TokenId) -> bool {
    matches!(lm.decode(&[token]).as_str(), "." | "!" | "?")
}

enum StepOutcome {
    Continue,
    Stop,
}

/// Shared post-sampling bookkeeping: eos stops and is excluded from the
/// output; when the model has no eos, a sentence terminator stops after
/// being kept.
fn push_sampled(
    lm: &dyn LanguageModel,
    token: TokenId,
    out: &mut Vec<TokenId>,
) -> StepOutcome {
    if lm.eos_id() == Some(token) {
        return StepOutcome::Stop;
    }
    out.push(token);
    if lm.eos_id().is_none() && is_sentence_terminator(lm, token) {
        return StepOutcome::Stop;
    }
    StepOutcome::Continue
}

/// Samples a continuation of up to `config.max_tokens` tokens after
/// `prompt`. The output excludes the prompt.
pub fn generate(
    lm: &dyn LanguageModel,
    prompt: &[TokenId],
    config: &DecodingConfig,
    rng: &mut impl Rng,
) -> Result<Vec<TokenId>, DecodingError> {
    if prompt.is_empty() {
        return Err(DecodingError::EmptyPrompt);
    }
    config.validate(lm.vocab_size())?;
    let mut prefix = prompt.to_vec();
    let mut out = Vec::new();
    for _ in 0..config.max_tokens {
        let logits = lm.next_logits(&prefix);
        let probs = filtered_distribution(&logits, config)?;
        let token = sample_index(&probs, rng) as TokenId;
        match push_sampled(lm, token, &mut out) {
            StepOutcome::Stop => break,
            StepOutcome::Continue => prefix.push(token),
        }
    }
    Ok(out)
}

/// Ensemble-logit decoding: at every step the next-token logits are
/// computed for each prompt followed by the shared generated suffix, the K
/// logit vectors are summed (in fixed prompt order, so the result is
/// bit-reproducible), and the next token is sampled from the configured
/// filter applied to the sum. The sampled token extends the shared suffix,
/// hence effectively every prompt.
pub fn ensemble_generate(
    lm: &dyn LanguageModel,
    prompt_set: &EnsemblePromptSet,
    config: &DecodingConfig,
    rng: &mut impl Rng,
) -> Result<Vec<TokenId>, DecodingError> {
    if prompt_set.is_empty() {
        return Err(DecodingError::EmptyPromptSet);
    }
    config.validate(lm.vocab_size())?;
    let mut suffix: Vec<TokenId> = Vec::new();
    for _ in 0..config.max_tokens {
        let rows: Vec<Vec<f64>> = map_ordered(prompt_set.prompts(), |prompt| {
            let mut prefix = Vec::with_capacity(prompt.len() + suffix.len());
            prefix.extend_from_slice(prompt);
            prefix.extend_from_slice(&suffix);
            lm.next_logits(&prefix)
        });
        let mut summed = vec![0.0; lm.vocab_size()];
        for row in &rows {
            for (acc, z) in summed.iter_mut().zip(row.iter()) {
                *acc += z;
            }
        }
        let probs = filtered_distribution(&summed, config)?;
        let token = sample_index(&probs, rng) as TokenId;
        if let StepOutcome::Stop = push_sampled(lm, token, &mut suffix) {
            break;
        }
    }
    Ok(suffix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoding::{Strategy, ToyLm};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn greedy() -> DecodingConfig {
        DecodingConfig {
            strategy: Strategy::TopK,
            k: 1,
            temperature: 1.0,
            ..Default::default()
        }
    }

    fn sep_lm() -> ToyLm {
        ToyLm::from_json_str(
            r#"{"vocab": ["x", "y", "<sep1>", "<sep2>", "a", "b"], "table": {}}"#,
        )
        .unwrap()
    }

    #[test]
    fn gen_prompt_layout_and_round_trip() {
        let lm = sep_lm();
        let prompt = build_gen_prompt("x", "y", &lm).unwrap();
        assert_eq!(prompt, vec![0, 2, 1, 3]);
        assert_eq!(lm.decode(&prompt), "x <sep1> y <sep2>");
    }

    #[test]
    fn empty_inference_text_is_an_error() {
        let lm = sep_lm();
        assert!(matches!(
            build_gen_prompt("  ", "y", &lm),
            Err(DecodingError::EmptyInference)
        ));
    }

    #[test]
    fn missing_separators_is_an_error() {
        let lm = ToyLm::from_json_str(r#"{"vocab": ["x", "y"], "table": {}}"#).unwrap();
        assert!(matches!(
            build_gen_prompt("x", "y", &lm),
            Err(DecodingError::MissingSeparators)
        ));
    }

    #[test]
    fn eos_first_model_generates_empty_continuation() {
        let lm = ToyLm::from_json_str(
            r#"{"vocab": ["a", "<eos>"], "eos": 1,
                "table": {"a": [-100.0, 100.0]}}"#,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = generate(&lm, &[0], &greedy(), &mut rng).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let lm = ToyLm::from_json_str(
            r#"{"vocab": ["a", "b", "c", "d"], "table": {"a": [0.5, 1.0, 0.2, 0.1]}}"#,
        )
        .unwrap();
        let cfg = DecodingConfig { max_tokens: 8, k: 4, ..Default::default() };
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            generate(&lm, &[0], &cfg, &mut rng).unwrap()
        };
        assert_eq!(run(7), run(7));
    }

    #[test]
    fn greedy_follows_hand_traced_path() {
        // a -> argmax b; a b -> argmax c; a b c -> argmax "." (terminator, kept, stops)
        let lm = ToyLm::from_json_str(
            r#"{"vocab": ["a", "b", "c", "."],
                "table": {
                  "a": [0.0, 2.0, 1.0, -1.0],
                  "a⎵b": [0.0, 0.0, 3.0, 1.0],
                  "a⎵b⎵c": [0.0, 0.0, 0.0, 4.0]
                }}"#,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = generate(&lm, &[0], &greedy(), &mut rng).unwrap();
        assert_eq!(lm.decode(&out), "b c .");
    }

    #[test]
    fn single_prompt_ensemble_matches_generate() {
        let lm = ToyLm::from_json_str(
            r#"{"vocab": ["x", "y", "<sep1>", "<sep2>", "a", "b"],
                "table": {"x⎵<sep1>⎵y⎵<sep2>": [0.1, 0.2, -9.0, -9.0, 1.0, 0.9]}}"#,
        )
        .unwrap();
        let prompt = build_gen_prompt("x", "y", &lm).unwrap();
        let set = EnsemblePromptSet::new(vec![prompt.clone()], &lm).unwrap();
        let cfg = DecodingConfig { max_tokens: 6, ..Default::default() };
        for seed in 0..20 {
            let mut r1 = ChaCha8Rng::seed_from_u64(seed);
            let mut r2 = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(
                generate(&lm, &prompt, &cfg, &mut r1).unwrap(),
                ensemble_generate(&lm, &set, &cfg, &mut r2).unwrap()
            );
        }
    }

    #[test]
    fn identical_prompts_greedy_matches_single_prompt() {
        let lm = ToyLm::from_json_str(
            r#"{"vocab": ["x", "y", "<sep1>", "<sep2>", "a", "b"],
                "table": {"x⎵<sep1>⎵y⎵<sep2>": [0.1, 0.2, -9.0, -9.0, 1.0, 0.9]}}"#,
        )
        .unwrap();
        let prompt = build_gen_prompt("x", "y", &lm).unwrap();
        let set = EnsemblePromptSet::new(vec![prompt.clone(); 4], &lm).unwrap();
        let cfg = DecodingConfig { max_tokens: 5, ..greedy() };
        let mut r1 = ChaCha8Rng::seed_from_u64(3);
        let mut r2 = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(
            generate(&lm, &prompt, &cfg, &mut r1).unwrap(),
            ensemble_generate(&lm, &set, &cfg, &mut r2).unwrap()
        );
    }

    #[test]
    fn empty_prompt_set_is_an_error() {
        let lm = sep_lm();
        assert!(matches!(
            EnsemblePromptSet::new(vec![], &lm),
            Err(DecodingError::EmptyPromptSet)
        ));
    }

    #[test]
    fn prompts_must_end_with_sep2() {
        let lm = sep_lm();
        assert!(matches!(
            EnsemblePromptSet::new(vec![vec![0, 1]], &lm),
            Err(DecodingError::PromptNotTerminated)
        ));
    }
}
