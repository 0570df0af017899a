//! Corpus mining: idiom matching, simile detection, narrative windowing,
//! and expression-disjoint dataset splits.

mod lexicon;
mod narrative;
mod pipeline;
mod simile;
mod split;

pub use lexicon::{ExpressionMatch, IdiomLexicon, IdiomLexiconEntry, match_expressions};
pub use narrative::{
    Continuation, DatasetInstance, ExpressionInfo, ExpressionKind, Label, Narrative, Split,
    build_narrative,
};
pub use pipeline::{
    CorpusStats, MiningConfig, TaskKind, attach_continuations, mine_document, mine_documents,
};
pub use simile::{Comparator, ExplicitSimile, detect_explicit_simile, implicitize, to_implicit};
pub use split::{SplitRatios, split_assignment, split_dataset};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("lexicon line {line}: expected `expression<TAB>definition`")]
    LexiconFormat { line: usize },
    #[error("lexicon line {line}: expression `{expression}` has fewer than 2 tokens")]
    ShortExpression { line: usize, expression: String },
    #[error("lexicon line {line}: duplicate expression `{expression}`")]
    DuplicateExpression { line: usize, expression: String },
    #[error("lexicon is empty")]
    EmptyLexicon,
    #[error("split ratios must be non-negative and sum to 1 (got {0}, {1}, {2})")]
    BadRatios(f64, f64, f64),
    #[error("need at least 3 distinct expressions to build disjoint splits, found {found}")]
    TooFewExpressions { found: usize },
    #[error("sentence has no explicit simile to convert")]
    NoExplicitSimile,
    #[error("removing the property would leave `like` sentence-initial with no topic")]
    DanglingComparator,
    #[error("simile spans do not fit the sentence")]
    SpanMismatch,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
