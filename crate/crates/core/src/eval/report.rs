//! Evaluation runners and the report table.

use serde::{Deserialize, Serialize};

use super::metrics::{embed_score, rouge_l, TokenEmbedder};
use super::EvalError;
use crate::par::try_map_ordered;
use crate::scoring::{MultipleChoiceInstance, ScoringError, choose_index};

/// Per-instance discriminative record, one JSONL line in the predictions
/// file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub instance_id: String,
    pub scores: Vec<f64>,
    pub chosen: usize,
    pub gold: usize,
}

/// Per-instance generative record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenerativeRecord {
    pub instance_id: String,
    pub rouge_l: f64,
    pub embed_score: f64,
    pub missing: bool,
}

/// One row of the report table: a model name and its ordered metric
/// columns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportRow {
    pub model: String,
    pub metrics: Vec<(String, f64)>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub rows: Vec<ReportRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<InstanceRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generative_records: Vec<GenerativeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl EvaluationReport {
    /// Tab-separated table: header from the first row's metric names,
    /// values rendered with four decimals.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        if let Some(first) = self.rows.first() {
            out.push_str("model");
            for (name, _) in &first.metrics {
                out.push('\t');
                out.push_str(name);
            }
            out.push('\n');
        }
        for row in &self.rows {
            out.push_str(&row.model);
            for (_, value) in &row.metrics {
                out.push_str(&format!("\t{value:.4}"));
            }
            out.push('\n');
        }
        out
    }
}

/// A discriminative model: candidate scores for an instance. Implementations
/// must be safe for concurrent use; instances are scored in parallel with
/// deterministic aggregation order.
pub trait ChoiceModel: Send + Sync {
    fn name(&self) -> &str;
    fn score_candidates(&self, instance: &MultipleChoiceInstance)
    -> Result<(f64, f64), ScoringError>;
}

/// Scores every instance and reports accuracy plus per-instance records.
pub fn run_discriminative_eval(
    model: &dyn ChoiceModel,
    instances: &[MultipleChoiceInstance],
) -> Result<EvaluationReport, EvalError> {
    if instances.is_empty() {
        return Err(EvalError::Empty);
    }
    let records: Vec<InstanceRecord> = try_map_ordered(instances, |inst| {
        let (s0, s1) = model.score_candidates(inst)?;
        Ok::<_, ScoringError>(InstanceRecord {
            instance_id: inst.id.clone(),
            scores: vec![s0, s1],
            chosen: choose_index(s0, s1),
            gold: inst.gold,
        })
    })?;
    let correct = records.iter().filter(|r| r.chosen == r.gold).count();
    let accuracy = correct as f64 / records.len() as f64;
    Ok(EvaluationReport {
        rows: vec![ReportRow {
            model: model.name().to_string(),
            metrics: vec![("accuracy".to_string(), accuracy)],
        }],
        records,
        ..Default::default()
    })
}

/// Corpus-mean Rouge-L F1 and embedding-score F1 over `(id, reference)`
/// pairs. A missing or empty generation scores 0 for both metrics and adds
/// a warning.
pub fn run_generative_eval(
    model_name: &str,
    generations: &std::collections::HashMap<String, String>,
    references: &[(String, String)],
    embedder: &dyn TokenEmbedder,
) -> Result<EvaluationReport, EvalError> {
    if references.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut records = Vec::with_capacity(references.len());
    let mut warnings = Vec::new();
    for (id, reference) in references {
        let generated = generations.get(id).map(String::as_str).unwrap_or("");
        if super::metrics::rouge_tokenize(generated).is_empty() {
            warnings.push(format!("instance {id}: missing or empty generation, scored 0"));
            records.push(GenerativeRecord {
                instance_id: id.clone(),
                rouge_l: 0.0,
                embed_score: 0.0,
                missing: true,
            });
            continue;
        }
        let (_, _, rouge_f1) = rouge_l(generated, reference)?;
        let (_, _, embed_f1) = embed_score(generated, reference, embedder)?;
        records.push(GenerativeRecord {
            instance_id: id.clone(),
            rouge_l: rouge_f1,
            embed_score: embed_f1,
            missing: false,
        });
    }
    let n = records.len() as f64;
    let mean_rouge = records.iter().map(|r| r.rouge_l).sum::<f64>() / n;
    let mean_embed = records.iter().map(|r| r.embed_score).sum::<f64>() / n;
    Ok(EvaluationReport {
        rows: vec![ReportRow {
            model: model_name.to_string(),
            metrics: vec![
                ("rouge_l".to_string(), mean_rouge),
                ("embed_score".to_string(), mean_embed),
            ],
        }],
        generative_records: records,
        warnings,
        ..Default::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{ExpressionKind, Narrative};
    use crate::eval::OneHotEmbedder;
    use std::collections::HashMap;

    fn instance(id: &str, gold: usize) -> MultipleChoiceInstance {
        MultipleChoiceInstance {
            id: id.into(),
            narrative: Narrative {
                kind: ExpressionKind::Idiom,
                context_sentences: vec!["A.".into(); 4],
                final_sentence: "F.".into(),
                expression: "x y".into(),
                expression_char_span: (0, 1),
                gloss: "g".into(),
            },
            candidates: ["left".into(), "right".into()],
            gold,
        }
    }

    struct Oracle;
    impl ChoiceModel for Oracle {
        fn name(&self) -> &str {
            "oracle"
        }
        fn score_candidates(
            &self,
            instance: &MultipleChoiceInstance,
        ) -> Result<(f64, f64), ScoringError> {
            Ok(if instance.gold == 0 { (1.0, 0.0) } else { (0.0, 1.0) })
        }
    }

    struct Constant;
    impl ChoiceModel for Constant {
        fn name(&self) -> &str {
            "constant"
        }
        fn score_candidates(
            &self,
            _instance: &MultipleChoiceInstance,
        ) -> Result<(f64, f64), ScoringError> {
            Ok((1.0, 0.0))
        }
    }

    #[test]
    fn oracle_scores_one() {
        let instances: Vec<_> = (0..10).map(|i| instance(&format!("i{i}"), i % 2)).collect();
        let report = run_discriminative_eval(&Oracle, &instances).unwrap();
        assert_eq!(report.rows[0].metrics[0].1, 1.0);
        assert_eq!(report.records.len(), 10);
    }

    #[test]
    fn constant_model_on_balanced_data_scores_half() {
        let instances: Vec<_> = (0..10).map(|i| instance(&format!("i{i}"), i % 2)).collect();
        let report = run_discriminative_eval(&Constant, &instances).unwrap();
        assert!((report.rows[0].metrics[0].1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn generative_perfect_match_scores_one() {
        let references = vec![("a".to_string(), "the cat sat".to_string())];
        let mut generations = HashMap::new();
        generations.insert("a".to_string(), "the cat sat".to_string());
        let embedder = OneHotEmbedder::from_texts(["the cat sat"]);
        let report =
            run_generative_eval("m", &generations, &references, &embedder).unwrap();
        assert_eq!(report.rows[0].metrics[0].1, 1.0);
        assert_eq!(report.rows[0].metrics[1].1, 1.0);
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn missing_generation_scores_zero_with_warning() {
        let references = vec![
            ("a".to_string(), "the cat sat".to_string()),
            ("b".to_string(), "a dog ran".to_string()),
        ];
        let mut generations = HashMap::new();
        generations.insert("a".to_string(), "the cat sat".to_string());
        let embedder = OneHotEmbedder::from_texts(["the cat sat", "a dog ran"]);
        let report =
            run_generative_eval("m", &generations, &references, &embedder).unwrap();
        assert_eq!(report.warnings.len(), 1);
        assert!((report.rows[0].metrics[0].1 - 0.5).abs() < 1e-12);
        assert!(report.generative_records[1].missing);
    }

    #[test]
    fn generative_fixture_pair_hand_computed() {
        // candidate "the cat sat" vs reference "the cat sat down":
        // LCS = 3, P = 1, R = 0.75, F1 = 6/7; the one-hot embedding score
        // gives the same numbers since every candidate token is matched
        let references = vec![
            ("a".to_string(), "the cat sat down".to_string()),
            ("b".to_string(), "a dog ran far".to_string()),
        ];
        let mut generations = HashMap::new();
        generations.insert("a".to_string(), "the cat sat".to_string());
        generations.insert("b".to_string(), "a dog ran far".to_string());
        let embedder =
            OneHotEmbedder::from_texts(["the cat sat down", "a dog ran far"]);
        let report = run_generative_eval("m", &generations, &references, &embedder).unwrap();
        let f1_first = 6.0 / 7.0;
        let expected_mean = (f1_first + 1.0) / 2.0;
        assert!((report.rows[0].metrics[0].1 - expected_mean).abs() < 1e-12);
        assert!((report.rows[0].metrics[1].1 - expected_mean).abs() < 1e-12);
        assert!((report.generative_records[0].rouge_l - f1_first).abs() < 1e-12);
    }

    #[test]
    fn tsv_format_is_pinned() {
        let report = EvaluationReport {
            rows: vec![ReportRow {
                model: "toy".into(),
                metrics: vec![("accuracy".into(), 0.875)],
            }],
            ..Default::default()
        };
        assert_eq!(report.to_tsv(), "model\taccuracy\ntoy\t0.8750\n");
    }
}
