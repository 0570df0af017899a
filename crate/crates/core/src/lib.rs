//! Figurative-language narrative continuation benchmark toolkit.
//!
//! The crate is organized around the benchmark pipeline:
//!
//! * [`text`] / [`tagger`] — sentence segmentation, tokenization, and a
//!   rule-based POS fallback used by the mining heuristics.
//! * [`corpus`] — mines narratives containing idioms or implicit similes
//!   from raw text and assigns expression-disjoint splits.
//! * [`knowledge`] — produces fixed-size commonsense inference bundles via
//!   pluggable knowledge-model backends and verbalizes them.
//! * [`scoring`] — discriminative continuation scoring: zero-shot LM
//!   likelihood, supervised encoder scoring, knowledge-enhanced summed
//!   scoring, bias baselines, and few-shot prompt builders.
//! * [`decoding`] — top-k / nucleus sampling and ensemble-logit decoding
//!   over inference-conditioned prompts.
//! * [`eval`] — accuracy, Rouge-L, embedding-based scores, majority voting,
//!   and Krippendorff's alpha, with report emission.
//! * [`schema`] — lightweight validators for the JSONL file formats the
//!   pipeline reads and writes.
//!
//! Inner loops that map independent items (documents, instances, prompts)
//! run on rayon when the default `parallel` feature is enabled and fall
//! back to sequential iteration otherwise; outputs are deterministic in
//! both configurations.

pub mod corpus;
pub mod decoding;
pub mod eval;
pub mod knowledge;
pub mod par;
pub mod schema;
pub mod scoring;
pub mod seed;
pub mod tagger;
pub mod text;
