//! `figbench score`

use std::collections::HashMap;
use std::path::PathBuf;

use anyhow::{Context, Result, bail};
use clap::ValueEnum;
use serde::Serialize;

use figbench::corpus::{DatasetInstance, Split};
use figbench::decoding::{LanguageModel, ToyLm};
use figbench::eval::InstanceRecord;
use figbench::knowledge::{BundleSource, InferenceBundle};
use figbench::schema::{bundles_schema, dataset_schema};
use figbench::scoring::{
    DiscriminativeExample, MultipleChoiceInstance, Normalization, ScoreHead, ScoringMode,
    TrainConfig, ToyEncoder, choose_index, fewshot_discriminative_prompt, lm_choice_score_with,
    score_candidates, train_pairwise, DEFAULT_PROMPT_TOKEN_BUDGET,
};
use figbench::seed::stage_seed;

use super::{load_config, require_seed};
use crate::config::Config;
use crate::io::{read_jsonl, write_json_pretty, write_jsonl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    ZeroShot,
    FewShot,
    Supervised,
    KnowledgeLiteral,
    KnowledgeContext,
}

impl ModeArg {
    fn name(&self) -> &'static str {
        match self {
            ModeArg::ZeroShot => "zero-shot",
            ModeArg::FewShot => "few-shot",
            ModeArg::Supervised => "supervised",
            ModeArg::KnowledgeLiteral => "knowledge-literal",
            ModeArg::KnowledgeContext => "knowledge-context",
        }
    }

}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SplitArg {
    Train,
    Validation,
    Test,
    All,
}

impl SplitArg {
    fn keeps(&self, split: Split) -> bool {
        match self {
            SplitArg::Train => split == Split::Train,
            SplitArg::Validation => split == Split::Validation,
            SplitArg::Test => split == Split::Test,
            SplitArg::All => true,
        }
    }
}

/// Model backend family. The shipped backend is the toy fixture LM and
/// toy trainable encoder; full-scale backends attach through the library
/// traits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Toy,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "toy")]
    backend: BackendArg,
    /// Toy LM fixture (zero-shot and few-shot modes).
    #[arg(long)]
    lm: Option<PathBuf>,
    /// Inference bundles JSONL (knowledge modes).
    #[arg(long)]
    bundles: Option<PathBuf>,
    /// Which split to score.
    #[arg(long, value_enum, default_value = "test")]
    split: SplitArg,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
}

impl BackendArg {
    fn name(&self) -> &'static str {
        match self {
            BackendArg::Toy => "toy",
        }
    }
}

#[derive(Serialize)]
struct Meta {
    stage: &'static str,
    mode: &'static str,
    backend: &'static str,
    seed: u64,
    stage_seed: u64,
    scored_instances: usize,
}

fn normalization(config: &Config) -> Result<Normalization> {
    Ok(match config.get("scoring.normalization") {
        None | Some("mean") => Normalization::Mean,
        Some("total") => Normalization::Total,
        Some(other) => match other.strip_prefix("alpha:") {
            Some(a) => Normalization::LengthAlpha(
                a.parse().with_context(|| format!("bad normalization `{other}`"))?,
            ),
            None => bail!("scoring.normalization must be mean, total, or alpha:<x>"),
        },
    })
}

fn load_lm(args_lm: Option<PathBuf>, config: &Config) -> Result<ToyLm> {
    let path = args_lm
        .or_else(|| config.get("paths.lm_fixture").map(PathBuf::from))
        .context("this mode needs --lm or paths.lm_fixture")?;
    Ok(ToyLm::load(&path)?)
}

fn mc_instances(instances: &[DatasetInstance], filter: impl Fn(Split) -> bool)
-> Result<Vec<MultipleChoiceInstance>> {
    instances
        .iter()
        .filter(|i| filter(i.split))
        .map(|i| MultipleChoiceInstance::from_dataset(i).map_err(anyhow::Error::from))
        .collect()
}

fn load_bundles(
    args_bundles: Option<PathBuf>,
    config: &Config,
    source: BundleSource,
) -> Result<HashMap<String, InferenceBundle>> {
    let path = args_bundles
        .or_else(|| config.get("paths.bundles").map(PathBuf::from))
        .context("knowledge modes need --bundles or paths.bundles")?;
    let all: Vec<InferenceBundle> = read_jsonl(&path, &bundles_schema())?;
    Ok(all
        .into_iter()
        .filter(|b| b.source == source)
        .map(|b| (b.instance_id.clone(), b))
        .collect())
}

fn toy_train_config(config: &Config) -> Result<(TrainConfig, usize, usize)> {
    let train = TrainConfig {
        epochs: config.get_usize("toy.epochs", 12)?,
        learning_rate: config.get_f64("toy.learning_rate", 0.3)?,
        batch_size: config.get_usize("toy.batch_size", 8)?,
    };
    let dim = config.get_usize("toy.dim", 16)?;
    let buckets = config.get_usize("toy.buckets", 2048)?;
    Ok((train, dim, buckets))
}

pub fn run(args: Args) -> Result<i32> {
    let config = load_config(args.config.as_deref())?;
    let instances: Vec<DatasetInstance> = read_jsonl(&args.dataset, &dataset_schema())?;
    let scored = mc_instances(&instances, |s| args.split.keeps(s))?;
    if scored.is_empty() {
        bail!("no instances in the requested split");
    }

    let (records, seed, stage) = match args.mode {
        ModeArg::ZeroShot => {
            let lm = load_lm(args.lm, &config)?;
            let norm = normalization(&config)?;
            let records = score_zero_shot(&lm, &scored, norm)?;
            (records, 0, 0)
        }
        ModeArg::FewShot => {
            let lm = load_lm(args.lm, &config)?;
            let examples = mc_instances(&instances, |s| s == Split::Train)?;
            let n = config
                .get_usize("scoring.few_shot_examples", 6)?
                .min(examples.len());
            let budget =
                config.get_usize("scoring.prompt_token_budget", DEFAULT_PROMPT_TOKEN_BUDGET)?;
            let records = score_few_shot(&lm, &examples[..n], &scored, budget)?;
            (records, 0, 0)
        }
        mode => {
            let seed = require_seed(args.seed, &config)?;
            let stage = stage_seed(seed, "score");
            let train = mc_instances(&instances, |s| s == Split::Train)?;
            let validation = mc_instances(&instances, |s| s == Split::Validation)?;
            if train.is_empty() {
                bail!("{} mode needs a non-empty train split", mode.name());
            }
            let bundles = match mode {
                ModeArg::KnowledgeLiteral => {
                    Some(load_bundles(args.bundles, &config, BundleSource::Literal)?)
                }
                ModeArg::KnowledgeContext => {
                    Some(load_bundles(args.bundles, &config, BundleSource::Context)?)
                }
                _ => None,
            };
            let scoring_mode = match &bundles {
                Some(map) => ScoringMode::Knowledge(map),
                None => ScoringMode::Supervised,
            };
            let (train_cfg, dim, buckets) = toy_train_config(&config)?;
            let mut encoder = ToyEncoder::new(dim, buckets, stage);
            let mut head = ScoreHead::new(dim, config.get_f64("toy.dropout", 0.1)?, stage ^ 1);
            train_pairwise(
                &mut encoder,
                &mut head,
                &train,
                &validation,
                &scoring_mode,
                &train_cfg,
                stage,
            )?;
            let records = scored
                .iter()
                .map(|inst| {
                    let (s0, s1) = score_candidates(&encoder, &head, inst, &scoring_mode)?;
                    Ok(InstanceRecord {
                        instance_id: inst.id.clone(),
                        scores: vec![s0, s1],
                        chosen: choose_index(s0, s1),
                        gold: inst.gold,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (records, seed, stage)
        }
    };

    write_jsonl(&args.out, &records)?;
    write_json_pretty(
        &args.out.with_extension("meta.json"),
        &Meta {
            stage: "score",
            mode: args.mode.name(),
            backend: args.backend.name(),
            seed,
            stage_seed: stage,
            scored_instances: records.len(),
        },
    )?;
    eprintln!("scored {} instances in {} mode", records.len(), args.mode.name());
    Ok(0)
}

fn score_zero_shot(
    lm: &ToyLm,
    instances: &[MultipleChoiceInstance],
    norm: Normalization,
) -> Result<Vec<InstanceRecord>> {
    instances
        .iter()
        .map(|inst| {
            let narrative = inst.narrative.full_text();
            let s0 = lm_choice_score_with(lm, &narrative, &inst.candidates[0], norm)?;
            let s1 = lm_choice_score_with(lm, &narrative, &inst.candidates[1], norm)?;
            Ok(InstanceRecord {
                instance_id: inst.id.clone(),
                scores: vec![s0, s1],
                chosen: choose_index(s0, s1),
                gold: inst.gold,
            })
        })
        .collect()
}

/// Desk-scale few-shot choice: build the prompting text, then compare the
/// LM likelihood of the two answer markers given that prompt.
fn score_few_shot(
    lm: &dyn LanguageModel,
    examples: &[MultipleChoiceInstance],
    instances: &[MultipleChoiceInstance],
    budget: usize,
) -> Result<Vec<InstanceRecord>> {
    let prompt_examples: Vec<DiscriminativeExample> = examples
        .iter()
        .map(|e| DiscriminativeExample {
            narrative: e.narrative.full_text(),
            first: e.candidates[0].clone(),
            second: e.candidates[1].clone(),
            gold: Some(e.gold),
        })
        .collect();
    instances
        .iter()
        .map(|inst| {
            let test = DiscriminativeExample {
                narrative: inst.narrative.full_text(),
                first: inst.candidates[0].clone(),
                second: inst.candidates[1].clone(),
                gold: None,
            };
            let prompt = fewshot_discriminative_prompt(&prompt_examples, &test, budget)?;
            let s0 = lm_choice_score_with(lm, &prompt, "(1)", Normalization::Mean)?;
            let s1 = lm_choice_score_with(lm, &prompt, "(2)", Normalization::Mean)?;
            Ok(InstanceRecord {
                instance_id: inst.id.clone(),
                scores: vec![s0, s1],
                chosen: choose_index(s0, s1),
                gold: inst.gold,
            })
        })
        .collect()
}
