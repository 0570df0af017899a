//! `figbench evaluate`

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result, bail};
use serde::{Deserialize, Serialize};

use figbench::corpus::{DatasetInstance, Label, Split};
use figbench::eval::{
    EvaluationReport, InstanceRecord, JudgmentMatrix, OneHotEmbedder, ReportRow, accuracy,
    krippendorff_alpha, majority_vote, run_generative_eval,
};
use figbench::schema::{dataset_schema, generations_schema, predictions_schema};

use super::load_config;
use crate::io::{read_jsonl, write_jsonl};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Predictions JSONL from `score`.
    #[arg(long)]
    predictions: Option<PathBuf>,
    /// Generations JSONL from `generate`; requires --dataset for
    /// references.
    #[arg(long)]
    generations: Option<PathBuf>,
    /// Dataset JSONL providing reference continuations.
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Human judgments CSV: `item_id,rater_id,label`.
    #[arg(long)]
    judgments: Option<PathBuf>,
    /// Label that wins majority-vote ties.
    #[arg(long, default_value = "implausible")]
    tie_label: String,
    /// Model name for report rows.
    #[arg(long, default_value = "model")]
    model_name: String,
    /// Output prefix; writes `<out>.tsv` and `<out>.records.jsonl`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Deserialize)]
struct GenerationLine {
    instance_id: String,
    continuation_text: String,
}

#[derive(Serialize)]
struct VoteRecord {
    item_id: String,
    majority: String,
    ratings: usize,
}

fn write_report(out: &Path, report: &EvaluationReport) -> Result<()> {
    let tsv_path = out.with_extension("tsv");
    std::fs::write(&tsv_path, report.to_tsv())
        .with_context(|| format!("writing {}", tsv_path.display()))?;
    if !report.records.is_empty() {
        write_jsonl(&out.with_extension("records.jsonl"), &report.records)?;
    }
    if !report.generative_records.is_empty() {
        write_jsonl(&out.with_extension("records.jsonl"), &report.generative_records)?;
    }
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(())
}

pub fn run(args: Args) -> Result<i32> {
    let _config = load_config(args.config.as_deref())?;
    let mut ran = false;

    if let Some(path) = &args.predictions {
        let records: Vec<InstanceRecord> = read_jsonl(path, &predictions_schema())?;
        if records.is_empty() {
            bail!("predictions file {} is empty", path.display());
        }
        let chosen: Vec<usize> = records.iter().map(|r| r.chosen).collect();
        let golds: Vec<usize> = records.iter().map(|r| r.gold).collect();
        let acc = accuracy(&chosen, &golds)?;
        let report = EvaluationReport {
            rows: vec![ReportRow {
                model: args.model_name.clone(),
                metrics: vec![("accuracy".into(), acc)],
            }],
            records,
            ..Default::default()
        };
        write_report(&args.out, &report)?;
        println!("{}", report.to_tsv().trim_end());
        ran = true;
    }

    if let Some(path) = &args.generations {
        let dataset_path = args
            .dataset
            .as_ref()
            .context("--generations needs --dataset for references")?;
        let lines: Vec<GenerationLine> = read_jsonl(path, &generations_schema())?;
        let generations: HashMap<String, String> = lines
            .into_iter()
            .map(|l| (l.instance_id, l.continuation_text))
            .collect();
        let instances: Vec<DatasetInstance> = read_jsonl(dataset_path, &dataset_schema())?;
        let references: Vec<(String, String)> = instances
            .iter()
            .filter(|i| i.split == Split::Test)
            .filter_map(|i| {
                i.continuations
                    .iter()
                    .find(|c| c.label == Label::Plausible)
                    .map(|c| (i.id.clone(), c.text.clone()))
            })
            .collect();
        if references.is_empty() {
            bail!("dataset has no test-split instances with a plausible continuation");
        }
        let embedder = OneHotEmbedder::from_texts(
            references
                .iter()
                .map(|(_, r)| r.as_str())
                .chain(generations.values().map(String::as_str)),
        );
        let report =
            run_generative_eval(&args.model_name, &generations, &references, &embedder)?;
        write_report(&args.out, &report)?;
        println!("{}", report.to_tsv().trim_end());
        ran = true;
    }

    if let Some(path) = &args.judgments {
        let content = std::fs::read_to_string(path)
            .with_context(|| format!("reading judgments {}", path.display()))?;
        let mut records: Vec<(String, String, String)> = Vec::new();
        for (i, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.eq_ignore_ascii_case("item_id,rater_id,label")) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                bail!("{} line {}: expected item_id,rater_id,label", path.display(), i + 1);
            }
            records.push((fields[0].into(), fields[1].into(), fields[2].into()));
        }
        let matrix = JudgmentMatrix::from_records(&records)?;
        let alpha = krippendorff_alpha(&matrix)?;

        let mut votes = Vec::new();
        let item_ids: Vec<String> = {
            let mut seen = Vec::new();
            for (item, ..) in &records {
                if !seen.contains(item) {
                    seen.push(item.clone());
                }
            }
            seen
        };
        for (idx, item_id) in item_ids.iter().enumerate() {
            let labels = matrix.item_labels(idx);
            votes.push(VoteRecord {
                item_id: item_id.clone(),
                majority: majority_vote(&labels, &args.tie_label).to_string(),
                ratings: labels.len(),
            });
        }
        let tsv = format!("metric\tvalue\nkrippendorff_alpha\t{alpha:.4}\n");
        let tsv_path = args.out.with_extension("tsv");
        std::fs::write(&tsv_path, &tsv)
            .with_context(|| format!("writing {}", tsv_path.display()))?;
        write_jsonl(&args.out.with_extension("votes.jsonl"), &votes)?;
        println!("{}", tsv.trim_end());
        ran = true;
    }

    if !ran {
        bail!("nothing to evaluate: pass --predictions, --generations, or --judgments");
    }
    Ok(0)
}
