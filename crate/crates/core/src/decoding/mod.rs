//! Generation: top-k / nucleus sampling and ensemble-logit decoding.

mod generate;
mod sampling;
mod toy_lm;

pub use generate::{EnsemblePromptSet, build_gen_prompt, ensemble_generate, generate};
pub use sampling::{
    apply_temperature, filtered_distribution, log_softmax, nucleus_filter, sample_index, softmax,
    top_k_filter,
};
pub use toy_lm::ToyLm;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type TokenId = u32;

#[derive(Debug, Error)]
pub enum DecodingError {
    #[error("temperature must be positive, got {0}")]
    BadTemperature(f64),
    #[error("k must be in 1..=|V| ({vocab}), got {k}")]
    BadK { k: usize, vocab: usize },
    #[error("p must be in (0, 1], got {0}")]
    BadP(f64),
    #[error("token `{0}` is not in the vocabulary")]
    UnknownToken(String),
    #[error("language model does not register <sep1>/<sep2> special tokens")]
    MissingSeparators,
    #[error("inference text is empty")]
    EmptyInference,
    #[error("prompt is empty")]
    EmptyPrompt,
    #[error("ensemble prompt set is empty")]
    EmptyPromptSet,
    #[error("prompt does not end with <sep2>")]
    PromptNotTerminated,
    #[error("invalid language model fixture: {0}")]
    BadFixture(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A next-token-logits provider over a fixed vocabulary.
///
/// `next_logits` must be deterministic for a fixed prefix and return one
/// finite value per vocabulary entry.
pub trait LanguageModel: Send + Sync {
    fn vocab_size(&self) -> usize;
    fn next_logits(&self, prefix: &[TokenId]) -> Vec<f64>;
    fn eos_id(&self) -> Option<TokenId>;
    /// The `<sep1>` / `<sep2>` special tokens, when registered.
    fn sep_ids(&self) -> Option<(TokenId, TokenId)>;
    fn encode(&self, text: &str) -> Result<Vec<TokenId>, DecodingError>;
    fn decode(&self, tokens: &[TokenId]) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "top_k")]
    TopK,
    #[serde(rename = "nucleus")]
    Nucleus,
}

/// Decoding parameters. Defaults: top-k with `k = 5`, temperature 0.7,
/// nucleus mass 0.9, and a 20-token cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecodingConfig {
    pub strategy: Strategy,
    pub k: usize,
    pub temperature: f64,
    pub p: f64,
    pub max_tokens: usize,
    pub seed: u64,
}

impl Default for DecodingConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::TopK,
            k: 5,
            temperature: 0.7,
            p: 0.9,
            max_tokens: 20,
            seed: 0,
        }
    }
}

impl DecodingConfig {
    pub fn validate(&self, vocab_size: usize) -> Result<(), DecodingError> {
        if self.temperature <= 0.0 {
            return Err(DecodingError::BadTemperature(self.temperature));
        }
        if self.k < 1 || self.k > vocab_size {
            return Err(DecodingError::BadK { k: self.k, vocab: vocab_size });
        }
        if self.p <= 0.0 || self.p > 1.0 {
            return Err(DecodingError::BadP(self.p));
        }
        Ok(())
    }
}
