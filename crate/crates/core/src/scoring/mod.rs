//! Discriminative continuation scoring.
//!
//! Three scoring routes share one shape — encode an input, apply a linear
//! score head, pick the candidate with the higher score:
//!
//! * zero-shot: LM log-likelihood of the continuation given the narrative,
//! * supervised: `head(encode([N, C]))`,
//! * knowledge-enhanced: the sum of per-inference scores
//!   `Σ_j head(encode([Inf_j, N, C]))`.
//!
//! The continuation-only baseline (`head(encode([C]))`) diagnoses
//! annotation artifacts: anything it learns beyond chance comes from the
//! continuations alone, not the narrative.

mod encoders;
mod inputs;
mod lm_score;
mod prompt;
mod train;

pub use encoders::{FixtureEncoder, ToyEncoder};
pub use inputs::{
    build_mc_input, choose_index, continuation_only_score, knowledge_choice_score,
    supervised_score,
};
pub use lm_score::{Normalization, lm_choice_score, lm_choice_score_with, zero_shot_choose};
pub use prompt::{
    DEFAULT_PROMPT_TOKEN_BUDGET, DiscriminativeExample, GenerativeExample,
    MAX_DISCRIMINATIVE_EXAMPLES, fewshot_discriminative_prompt, fewshot_generative_prompt,
};
pub use train::{ScoringMode, TrainOutcome, predict_choice, score_candidates, train_pairwise};

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corpus::{DatasetInstance, Label, Narrative};
use crate::decoding::DecodingError;

#[derive(Debug, Error)]
pub enum ScoringError {
    #[error("continuation is empty")]
    EmptyContinuation,
    #[error("encoder produced {got} dimensions, head expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("inference bundle is empty")]
    EmptyBundle,
    #[error("discriminative few-shot prompts allow at most {max} examples, got {got}")]
    TooManyExamples { got: usize, max: usize },
    #[error("prompt is {tokens} tokens, budget is {budget}")]
    PromptOverBudget { tokens: usize, budget: usize },
    #[error("instance `{id}` needs exactly one plausible and one implausible continuation")]
    BadContinuationPair { id: String },
    #[error("no inference bundle for instance `{id}`")]
    MissingBundle { id: String },
    #[error(transparent)]
    Lm(#[from] DecodingError),
}

/// A pooled-vector text encoder. `encode` receives ordered segments which
/// the backend joins with its own separator token; the returned vector has
/// a fixed dimension and is deterministic in evaluation mode.
///
/// Implementations must be safe for concurrent read-only use: scoring
/// parallelizes across instances.
pub trait Encoder: Send + Sync {
    fn dim(&self) -> usize;
    fn separator(&self) -> &str;
    fn encode(&self, segments: &[String]) -> Vec<f64>;

    /// The exact string an encoder sees: segments joined by its separator.
    fn joined_input(&self, segments: &[String]) -> String {
        segments.join(&format!(" {} ", self.separator()))
    }
}

/// Dropout followed by a linear map to a single score. Dropout is active
/// only during training; evaluation scoring is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreHead {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub dropout_rate: f64,
}

impl ScoreHead {
    /// Small random initialization.
    pub fn new(dim: usize, dropout_rate: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights = (0..dim).map(|_| (rng.random::<f64>() - 0.5) * 0.2).collect();
        Self { weights, bias: 0.0, dropout_rate }
    }

    pub fn with_weights(weights: Vec<f64>, bias: f64) -> Self {
        Self { weights, bias, dropout_rate: 0.1 }
    }

    /// Evaluation-mode score: `w · v + b`, no dropout.
    pub fn score(&self, v: &[f64]) -> Result<f64, ScoringError> {
        if v.len() != self.weights.len() {
            return Err(ScoringError::DimensionMismatch {
                expected: self.weights.len(),
                got: v.len(),
            });
        }
        Ok(self.weights.iter().zip(v).map(|(w, x)| w * x).sum::<f64>() + self.bias)
    }

    /// Training-mode score with inverted dropout. Returns the score and the
    /// rescaled dropout mask (0 or `1/keep` per dimension) so the backward
    /// pass can reproduce exactly what the forward pass used:
    /// `score = Σ_k w_k · v_k · mask_k + bias`.
    pub(crate) fn score_train(
        &self,
        v: &[f64],
        rng: &mut impl Rng,
    ) -> Result<(f64, Vec<f64>), ScoringError> {
        if v.len() != self.weights.len() {
            return Err(ScoringError::DimensionMismatch {
                expected: self.weights.len(),
                got: v.len(),
            });
        }
        let keep = 1.0 - self.dropout_rate;
        let mask: Vec<f64> = v
            .iter()
            .map(|_| if rng.random::<f64>() < keep { 1.0 / keep } else { 0.0 })
            .collect();
        let s = self
            .weights
            .iter()
            .zip(v)
            .zip(&mask)
            .map(|((w, x), m)| w * x * m)
            .sum::<f64>()
            + self.bias;
        Ok((s, mask))
    }
}

/// A narrative paired with exactly two candidate continuations and the
/// index of the plausible one.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipleChoiceInstance {
    pub id: String,
    pub narrative: Narrative,
    pub candidates: [String; 2],
    pub gold: usize,
}

impl MultipleChoiceInstance {
    /// Converts a dataset instance; it must carry exactly one plausible and
    /// one implausible continuation.
    pub fn from_dataset(instance: &DatasetInstance) -> Result<Self, ScoringError> {
        let plausible = instance
            .continuations
            .iter()
            .filter(|c| c.label == Label::Plausible)
            .count();
        if plausible != 1 || instance.continuations.len() != 2 {
            return Err(ScoringError::BadContinuationPair { id: instance.id.clone() });
        }
        let gold = instance
            .continuations
            .iter()
            .position(|c| c.label == Label::Plausible)
            .unwrap();
        let candidates = [
            instance.continuations[0].text.clone(),
            instance.continuations[1].text.clone(),
        ];
        Ok(Self {
            id: instance.id.clone(),
            narrative: instance.narrative.clone(),
            candidates,
            gold,
        })
    }
}

/// Training hyperparameters. Defaults mirror the reference supervised
/// setup (10 epochs, lr 1e-5, batch size 8, best-validation-accuracy
/// checkpoint selection); the desk-scale toy encoder wants a far larger
/// learning rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self { epochs: 10, learning_rate: 1e-5, batch_size: 8 }
    }
}
