//! Golden tests against hand-built fixture files.

use std::path::{Path, PathBuf};

use figbench::corpus::{
    ExpressionKind, IdiomLexicon, MiningConfig, SplitRatios, TaskKind, mine_documents,
};
use figbench::knowledge::{Relation, TEMPLATES, verbalize};
use figbench::tagger::RuleTagger;
use figbench::text::segment_sentences;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

fn corpus_docs() -> Vec<String> {
    ["corpus/ebook1.txt", "corpus/ebook2.txt", "corpus/ebook3.txt"]
        .iter()
        .map(|n| read(n))
        .collect()
}

#[test]
fn segmentation_matches_hand_segmented_fixture() {
    let input = read("segmentation_input.txt");
    let expected: Vec<String> =
        serde_json::from_str(&read("segmentation_expected.json")).unwrap();
    assert_eq!(segment_sentences(&input), expected);
}

#[test]
fn idiom_mining_finds_all_six_lexicon_entries() {
    let lexicon = IdiomLexicon::from_tsv_str(&read("corpus/lexicon.tsv")).unwrap();
    let config = MiningConfig {
        ratios: SplitRatios::new(0.5, 0.2, 0.3).unwrap(),
        ..Default::default()
    };
    let (instances, stats) = mine_documents(
        &corpus_docs(),
        TaskKind::Idiom,
        Some(&lexicon),
        &RuleTagger,
        &config,
    )
    .unwrap();
    assert_eq!(instances.len(), 6);
    assert_eq!(stats.distinct_expressions, 6);
    let mut expressions: Vec<&str> = instances.iter().map(|i| i.expression_key()).collect();
    expressions.sort();
    assert_eq!(
        expressions,
        vec![
            "any port in a storm",
            "chicken feed",
            "cold turkey",
            "curry favour",
            "slap on the wrist",
            "walk the plank",
        ]
    );
    for inst in &instances {
        assert_eq!(inst.narrative.context_sentences.len(), 4);
        assert_eq!(inst.narrative.kind, ExpressionKind::Idiom);
        let (a, b) = inst.narrative.expression_char_span;
        let span: String = inst.narrative.final_sentence.chars().skip(a).take(b - a).collect();
        assert_eq!(span.to_lowercase(), inst.narrative.expression);
    }
}

#[test]
fn fixture_narratives_average_near_eighty_words() {
    let lexicon = IdiomLexicon::from_tsv_str(&read("corpus/lexicon.tsv")).unwrap();
    let config = MiningConfig {
        ratios: SplitRatios::new(0.5, 0.2, 0.3).unwrap(),
        ..Default::default()
    };
    let (_, stats) = mine_documents(
        &corpus_docs(),
        TaskKind::Idiom,
        Some(&lexicon),
        &RuleTagger,
        &config,
    )
    .unwrap();
    assert!(
        (stats.mean_narrative_words - 80.0).abs() <= 30.0,
        "mean narrative length {} words",
        stats.mean_narrative_words
    );
}

#[test]
fn simile_mining_converts_to_implicit_forms() {
    let config = MiningConfig {
        ratios: SplitRatios::new(0.5, 0.2, 0.3).unwrap(),
        ..Default::default()
    };
    let (instances, stats) =
        mine_documents(&corpus_docs(), TaskKind::Simile, None, &RuleTagger, &config).unwrap();
    assert_eq!(instances.len(), 3);
    assert_eq!(stats.distinct_expressions, 3);
    let glosses: Vec<&str> = instances.iter().map(|i| i.narrative.gloss.as_str()).collect();
    assert_eq!(glosses, vec!["calm", "cheap", "thick"]);
    for inst in &instances {
        assert_eq!(inst.narrative.kind, ExpressionKind::Simile);
        assert!(inst.narrative.expression.starts_with("like "));
        assert!(inst.narrative.final_sentence.contains("like"));
        // property removed from the final sentence
        assert!(!inst.narrative.final_sentence.contains(&inst.narrative.gloss));
    }
    // the comma form loses its comma in conversion
    assert!(
        instances[0]
            .narrative
            .final_sentence
            .contains("Her face was like a high mountain lake")
    );
}

#[test]
fn mining_is_deterministic() {
    let lexicon = IdiomLexicon::from_tsv_str(&read("corpus/lexicon.tsv")).unwrap();
    let config = MiningConfig::default();
    let run = || {
        let (instances, _) = mine_documents(
            &corpus_docs(),
            TaskKind::Idiom,
            Some(&lexicon),
            &RuleTagger,
            &config,
        )
        .unwrap();
        serde_json::to_string(&instances).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn verbalization_template_table_golden() {
    let expected = [
        (Relation::UsedFor, "rope is used for tying knots"),
        (Relation::Desires, "rope desires tying knots"),
        (Relation::HasProperty, "rope has the property of tying knots"),
        (Relation::MadeUpOf, "rope is made up of tying knots"),
        (Relation::AtLocation, "rope is located at tying knots"),
        (Relation::CapableOf, "rope is capable of tying knots"),
        (Relation::XIntent, "PersonX intends tying knots"),
        (Relation::XNeed, "PersonX needs tying knots"),
        (Relation::XAttr, "PersonX is tying knots"),
        (Relation::XWant, "PersonX wants tying knots"),
        (Relation::XEffect, "PersonX then tying knots"),
        (Relation::XReact, "PersonX feels tying knots"),
    ];
    assert_eq!(TEMPLATES.len(), expected.len());
    for (relation, want) in expected {
        assert_eq!(verbalize("rope", relation, "tying knots"), want, "{relation}");
    }
}
