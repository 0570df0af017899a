//! Document mining: segments documents, finds expressions, and emits
//! dataset instances with stats.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::lexicon::{IdiomLexicon, match_expressions};
use super::narrative::{
    Continuation, DatasetInstance, ExpressionInfo, ExpressionKind, Narrative, Split,
    build_narrative,
};
use super::simile::{detect_explicit_simile, to_implicit};
use super::split::{SplitRatios, split_dataset};
use super::CorpusError;
use crate::par::map_ordered;
use crate::tagger::{PosTagger, TaggedSentence};
use crate::text::{detokenize, segment_sentences, tokenize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TaskKind {
    #[serde(rename = "idiom")]
    Idiom,
    #[serde(rename = "simile")]
    Simile,
}

#[derive(Debug, Clone)]
pub struct MiningConfig {
    /// Number of context sentences to prepend (instances with fewer are dropped).
    pub window: usize,
    pub ratios: SplitRatios,
    pub seed: u64,
    /// Instance ids to drop (e.g. flagged literal usages of an idiom).
    pub exclusions: HashSet<String>,
}

impl Default for MiningConfig {
    fn default() -> Self {
        Self {
            window: 4,
            ratios: SplitRatios::default(),
            seed: 0,
            exclusions: HashSet::new(),
        }
    }
}

/// Summary statistics for a mined dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusStats {
    pub task: TaskKind,
    pub documents: usize,
    pub instances: usize,
    pub distinct_expressions: usize,
    pub mean_narrative_words: f64,
    pub train: usize,
    pub validation: usize,
    pub test: usize,
    pub seed: u64,
}

/// Mines one document. Returned instances carry a provisional `Train`
/// split; [`mine_documents`] assigns real splits over the merged set.
pub fn mine_document(
    doc_index: usize,
    doc: &str,
    task: TaskKind,
    lexicon: Option<&IdiomLexicon>,
    tagger: &dyn PosTagger,
    window: usize,
) -> Vec<DatasetInstance> {
    let sentences = segment_sentences(doc);
    let mut out = Vec::new();
    for (sent_index, sentence) in sentences.iter().enumerate() {
        let tokens = tokenize(sentence);
        let tagged = TaggedSentence::from_tokens(
            tokens.iter().map(|t| t.text.clone()).collect(),
            tagger,
        );
        match task {
            TaskKind::Idiom => {
                let Some(lexicon) = lexicon else { continue };
                for (match_index, m) in match_expressions(&tagged, lexicon).iter().enumerate() {
                    let entry = &lexicon.entries()[m.entry_index];
                    let char_span = (tokens[m.span.start].start, tokens[m.span.end - 1].end);
                    let info = ExpressionInfo {
                        text: entry.expression_text(),
                        char_span,
                        kind: ExpressionKind::Idiom,
                        gloss: entry.definition.clone(),
                    };
                    if let Some(narrative) =
                        build_narrative(&sentences, sent_index, window, sentence.clone(), info)
                    {
                        out.push(instance(doc_index, sent_index, match_index, narrative));
                    }
                }
            }
            TaskKind::Simile => {
                let Some(simile) = detect_explicit_simile(&tagged) else { continue };
                let Ok(implicit) = to_implicit(&simile, &tagged) else { continue };
                let property = detokenize(
                    &tagged.tokens[simile.property.start..simile.property.end],
                );
                let vehicle =
                    detokenize(&tagged.tokens[simile.vehicle.start..simile.vehicle.end]);
                let expression = format!("like {vehicle}");
                let Some(char_span) = expression_span(&implicit, &expression) else {
                    continue;
                };
                let info = ExpressionInfo {
                    text: expression,
                    char_span,
                    kind: ExpressionKind::Simile,
                    gloss: property,
                };
                if let Some(narrative) =
                    build_narrative(&sentences, sent_index, window, implicit, info)
                {
                    out.push(instance(doc_index, sent_index, 0, narrative));
                }
            }
        }
    }
    out
}

fn instance(
    doc_index: usize,
    sent_index: usize,
    match_index: usize,
    narrative: Narrative,
) -> DatasetInstance {
    DatasetInstance {
        id: format!(
            "{}-{doc_index:04}-{sent_index:04}-{match_index}",
            narrative.kind
        ),
        narrative,
        continuations: Vec::new(),
        split: Split::Train,
    }
}

/// Character span of `needle` within `haystack`, in characters.
fn expression_span(haystack: &str, needle: &str) -> Option<(usize, usize)> {
    let byte_start = haystack.find(needle)?;
    let char_start = haystack[..byte_start].chars().count();
    Some((char_start, char_start + needle.chars().count()))
}

/// Mines all documents (in parallel when the `parallel` feature is on),
/// merges results in document order, drops excluded ids, and assigns
/// expression-disjoint splits.
pub fn mine_documents(
    docs: &[String],
    task: TaskKind,
    lexicon: Option<&IdiomLexicon>,
    tagger: &dyn PosTagger,
    config: &MiningConfig,
) -> Result<(Vec<DatasetInstance>, CorpusStats), CorpusError> {
    if task == TaskKind::Idiom {
        match lexicon {
            None => return Err(CorpusError::EmptyLexicon),
            Some(l) if l.is_empty() => return Err(CorpusError::EmptyLexicon),
            _ => {}
        }
    }
    let per_doc: Vec<Vec<DatasetInstance>> = {
        let indexed: Vec<(usize, &String)> = docs.iter().enumerate().collect();
        map_ordered(&indexed, |(i, doc)| {
            mine_document(*i, doc, task, lexicon, tagger, config.window)
        })
    };
    let mut instances: Vec<DatasetInstance> = per_doc
        .into_iter()
        .flatten()
        .filter(|inst| !config.exclusions.contains(&inst.id))
        .collect();
    split_dataset(&mut instances, &config.ratios, config.seed)?;

    let distinct: HashSet<&str> = instances.iter().map(|i| i.expression_key()).collect();
    let total_words: usize = instances.iter().map(|i| i.narrative.word_count()).sum();
    let count = |s: Split| instances.iter().filter(|i| i.split == s).count();
    let stats = CorpusStats {
        task,
        documents: docs.len(),
        instances: instances.len(),
        distinct_expressions: distinct.len(),
        mean_narrative_words: if instances.is_empty() {
            0.0
        } else {
            total_words as f64 / instances.len() as f64
        },
        train: count(Split::Train),
        validation: count(Split::Validation),
        test: count(Split::Test),
        seed: config.seed,
    };
    Ok((instances, stats))
}

/// Attaches externally collected continuations (id -> continuation list)
/// to mined instances. Instances without an entry keep an empty list.
pub fn attach_continuations(
    instances: &mut [DatasetInstance],
    continuations: &std::collections::HashMap<String, Vec<Continuation>>,
) {
    for inst in instances.iter_mut() {
        if let Some(c) = continuations.get(&inst.id) {
            inst.continuations = c.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagger::RuleTagger;

    fn doc_with_idiom() -> String {
        [
            "Maya counted the coins twice before breakfast.",
            "The landlord wanted more than she had saved.",
            "Her brother offered to help with the rent money.",
            "She shook her head at the tiny amount in the jar.",
            "To the landlord it was chicken feed and nothing more.",
            "Maya promised herself it would be different next year.",
        ]
        .join(" ")
    }

    fn lexicon() -> IdiomLexicon {
        IdiomLexicon::from_tsv_str("chicken feed\ta ridiculously small sum of money\n").unwrap()
    }

    #[test]
    fn mines_idiom_with_four_sentence_context() {
        let docs = [doc_with_idiom()];
        let lex = lexicon();
        let out = mine_document(0, &docs[0], TaskKind::Idiom, Some(&lex), &RuleTagger, 4);
        assert_eq!(out.len(), 1);
        let inst = &out[0];
        assert_eq!(inst.narrative.context_sentences.len(), 4);
        assert_eq!(inst.narrative.expression, "chicken feed");
        assert_eq!(inst.narrative.gloss, "a ridiculously small sum of money");
        let (a, b) = inst.narrative.expression_char_span;
        let span_text: String = inst
            .narrative
            .final_sentence
            .chars()
            .skip(a)
            .take(b - a)
            .collect();
        assert_eq!(span_text, "chicken feed");
    }

    #[test]
    fn early_match_without_context_is_dropped() {
        let doc = "It was chicken feed. More text follows here. And more. And more. And more.";
        let lex = lexicon();
        let out = mine_document(0, doc, TaskKind::Idiom, Some(&lex), &RuleTagger, 4);
        assert!(out.is_empty());
    }

    #[test]
    fn mines_simile_and_converts_to_implicit() {
        let doc = [
            "The exam had gone badly for everyone else.",
            "Jonas walked out of the hall with a blank face.",
            "Nobody could read what he was thinking just then.",
            "His sister asked him how it went for him.",
            "He feels as calm as a high mountain lake without a wind stirring it.",
        ]
        .join(" ");
        let out = mine_document(0, &doc, TaskKind::Simile, None, &RuleTagger, 4);
        assert_eq!(out.len(), 1);
        let inst = &out[0];
        assert_eq!(
            inst.narrative.final_sentence,
            "He feels like a high mountain lake without a wind stirring it."
        );
        assert_eq!(inst.narrative.gloss, "calm");
        assert!(inst.narrative.expression.starts_with("like a high mountain lake"));
    }

    #[test]
    fn idiom_task_requires_lexicon() {
        let docs = [doc_with_idiom()];
        let err = mine_documents(&docs, TaskKind::Idiom, None, &RuleTagger, &MiningConfig::default());
        assert!(matches!(err, Err(CorpusError::EmptyLexicon)));
    }

    #[test]
    fn exclusion_list_drops_instances() {
        let docs = [doc_with_idiom()];
        let lex = lexicon();
        let mined = mine_document(0, &docs[0], TaskKind::Idiom, Some(&lex), &RuleTagger, 4);
        let mut config = MiningConfig::default();
        config.exclusions.insert(mined[0].id.clone());
        // only one expression left -> split fails, so check exclusion earlier
        let per_doc = mine_document(0, &docs[0], TaskKind::Idiom, Some(&lex), &RuleTagger, 4);
        let kept: Vec<_> = per_doc
            .into_iter()
            .filter(|i| !config.exclusions.contains(&i.id))
            .collect();
        assert!(kept.is_empty());
    }
}
