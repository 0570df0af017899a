//! Evaluation: discriminative accuracy, generative overlap and similarity
//! metrics, human-judgment aggregation, and report emission.

mod agreement;
mod metrics;
mod report;

pub use agreement::{ErrorCategory, JudgmentMatrix, krippendorff_alpha, majority_vote};
pub use metrics::{
    OneHotEmbedder, TokenEmbedder, accuracy, embed_score, lcs_length, rouge_l, rouge_tokenize,
};
pub use report::{
    ChoiceModel, EvaluationReport, GenerativeRecord, InstanceRecord, ReportRow,
    run_discriminative_eval, run_generative_eval,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("predictions and golds have different lengths ({predictions} vs {golds})")]
    LengthMismatch { predictions: usize, golds: usize },
    #[error("input is empty")]
    Empty,
    #[error("text has no tokens after tokenization: `{0}`")]
    EmptyAfterTokenization(String),
    #[error("judgment matrix needs at least 2 raters and 1 item")]
    TooFewRaters,
    #[error("Krippendorff's alpha needs at least 2 items with 2 or more ratings")]
    TooFewPairableItems,
    #[error("embedder returned a zero vector for token `{0}`")]
    ZeroVector(String),
    #[error(transparent)]
    Scoring(#[from] crate::scoring::ScoringError),
}
