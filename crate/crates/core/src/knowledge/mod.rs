//! Commonsense inference bundles from pluggable knowledge-model backends.
//!
//! Literal bundles target the constituents of a figurative expression
//! (content words of an idiom, or the simile vehicle); context bundles
//! target the narrative leading up to the expression. Every bundle holds
//! exactly K verbalized inferences (default 12) so the downstream scorer
//! and ensemble decoder see a fixed-size input.

mod backend;
mod extract;
mod relation;
mod verbalize;

pub use backend::{FixtureBackend, HttpBackend, HttpBackendConfig, KnowledgeModel};
pub use extract::{
    DEFAULT_BUNDLE_SIZE, content_words, context_inferences, literal_inferences, vehicle_phrase,
};
pub use relation::{CONCEPT_RELATIONS, EVENT_RELATIONS, Relation};
pub use verbalize::{TEMPLATES, verbalize};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KnowledgeError {
    #[error("idiom consists entirely of stopwords")]
    AllStopwords,
    #[error("sentence contains no `like` comparator")]
    NoComparator,
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("fixture has no entry for key `{key}`")]
    MissingFixtureKey { key: String },
    #[error("backend returned no usable tails for subject `{subject}`, relation {relation}")]
    EmptyTails { subject: String, relation: Relation },
    #[error("backend request failed for subject `{subject}`, relation {relation}: {message}")]
    Backend {
        subject: String,
        relation: Relation,
        message: String,
    },
    #[error("bundle mixes {0} and {1} relations")]
    MixedRelations(Relation, Relation),
    #[error("invalid fixture file: {0}")]
    BadFixture(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A single verbalized commonsense inference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inference {
    pub subject: String,
    pub relation: Relation,
    pub tail: String,
    pub verbalized: String,
    /// Beam position the tail came from, 1-based.
    pub rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BundleSource {
    #[serde(rename = "literal")]
    Literal,
    #[serde(rename = "context")]
    Context,
}

/// Exactly K inferences for one instance, all from the same source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferenceBundle {
    pub instance_id: String,
    pub source: BundleSource,
    /// True when the backend returned fewer than K tails and the last
    /// inference was repeated to keep the fixed-K contract.
    pub padded: bool,
    pub inferences: Vec<Inference>,
}

impl InferenceBundle {
    /// Validates relation homogeneity: literal bundles carry only concept
    /// relations, context bundles only event relations.
    pub fn new(
        instance_id: String,
        source: BundleSource,
        padded: bool,
        inferences: Vec<Inference>,
    ) -> Result<Self, KnowledgeError> {
        let expect_concept = source == BundleSource::Literal;
        if let Some(bad) = inferences
            .iter()
            .find(|i| i.relation.is_concept() != expect_concept)
        {
            let good = inferences
                .iter()
                .find(|i| i.relation.is_concept() == expect_concept)
                .map(|i| i.relation)
                .unwrap_or(bad.relation);
            return Err(KnowledgeError::MixedRelations(good, bad.relation));
        }
        Ok(Self {
            instance_id,
            source,
            padded,
            inferences,
        })
    }

    pub fn len(&self) -> usize {
        self.inferences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inferences.is_empty()
    }
}
