//! `figbench generate`

use std::collections::HashMap;
use std::path::PathBuf;

use anyhow::{Context, Result, bail};
use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use figbench::corpus::{DatasetInstance, Label, Split};
use figbench::decoding::{
    DecodingConfig, EnsemblePromptSet, LanguageModel, Strategy, ToyLm, ensemble_generate,
    generate,
};
use figbench::knowledge::{BundleSource, InferenceBundle};
use figbench::schema::{bundles_schema, dataset_schema};
use figbench::scoring::{DEFAULT_PROMPT_TOKEN_BUDGET, GenerativeExample, fewshot_generative_prompt};
use figbench::seed::{instance_seed, stage_seed};

use super::{load_config, require_seed};
use crate::config::Config;
use crate::io::{read_jsonl, write_json_pretty, write_jsonl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    ZeroShot,
    FewShot,
    KnowledgeLiteral,
    KnowledgeContext,
}

impl ModeArg {
    fn name(&self) -> &'static str {
        match self {
            ModeArg::ZeroShot => "zero-shot",
            ModeArg::FewShot => "few-shot",
            ModeArg::KnowledgeLiteral => "knowledge-literal",
            ModeArg::KnowledgeContext => "knowledge-context",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    TopK,
    Nucleus,
}

/// Model backend family; the shipped backend is the toy fixture LM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Toy,
}

impl BackendArg {
    fn name(&self) -> &'static str {
        match self {
            BackendArg::Toy => "toy",
        }
    }
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
    /// Toy LM fixture file.
    #[arg(long)]
    lm: Option<PathBuf>,
    /// Inference bundles JSONL (knowledge modes).
    #[arg(long)]
    bundles: Option<PathBuf>,
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    temperature: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    max_tokens: Option<usize>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
}

/// One generation output line.
#[derive(Serialize)]
struct GenerationRecord {
    instance_id: String,
    model: String,
    continuation_text: String,
    tokens: Vec<u32>,
    seed: u64,
}

#[derive(Serialize)]
struct Meta {
    stage: &'static str,
    mode: &'static str,
    seed: u64,
    stage_seed: u64,
    strategy: &'static str,
    k: usize,
    temperature: f64,
    p: f64,
    max_tokens: usize,
    instances: usize,
}

fn decoding_config(args: &Args, config: &Config) -> Result<DecodingConfig> {
    let defaults = DecodingConfig::default();
    let strategy = match args.strategy {
        Some(StrategyArg::TopK) => Strategy::TopK,
        Some(StrategyArg::Nucleus) => Strategy::Nucleus,
        None => match config.get("decoding.strategy") {
            None | Some("top_k") => Strategy::TopK,
            Some("nucleus") => Strategy::Nucleus,
            Some(other) => bail!("decoding.strategy must be top_k or nucleus, got `{other}`"),
        },
    };
    Ok(DecodingConfig {
        strategy,
        k: match args.k {
            Some(k) => k,
            None => config.get_usize("decoding.k", defaults.k)?,
        },
        temperature: match args.temperature {
            Some(t) => t,
            None => config.get_f64("decoding.temperature", defaults.temperature)?,
        },
        p: match args.p {
            Some(p) => p,
            None => config.get_f64("decoding.p", defaults.p)?,
        },
        max_tokens: match args.max_tokens {
            Some(m) => m,
            None => config.get_usize("decoding.max_tokens", defaults.max_tokens)?,
        },
        seed: 0,
    })
}

pub fn run(args: Args) -> Result<i32> {
    let config = load_config(args.config.as_deref())?;
    let seed = require_seed(args.seed, &config)?;
    let stage = stage_seed(seed, "generate");
    let decoding = decoding_config(&args, &config)?;

    let lm_path = args
        .lm
        .clone()
        .or_else(|| config.get("paths.lm_fixture").map(PathBuf::from))
        .context("generate needs --lm or paths.lm_fixture")?;
    let lm = ToyLm::load(&lm_path)?;

    let instances: Vec<DatasetInstance> = read_jsonl(&args.dataset, &dataset_schema())?;
    let targets: Vec<&DatasetInstance> =
        instances.iter().filter(|i| i.split == Split::Test).collect();
    if targets.is_empty() {
        bail!("dataset has no test-split instances");
    }

    let bundles: Option<HashMap<String, InferenceBundle>> = match args.mode {
        ModeArg::KnowledgeLiteral | ModeArg::KnowledgeContext => {
            let path = args
                .bundles
                .clone()
                .or_else(|| config.get("paths.bundles").map(PathBuf::from))
                .context("knowledge modes need --bundles or paths.bundles")?;
            let source = if args.mode == ModeArg::KnowledgeLiteral {
                BundleSource::Literal
            } else {
                BundleSource::Context
            };
            let all: Vec<InferenceBundle> = read_jsonl(&path, &bundles_schema())?;
            Some(
                all.into_iter()
                    .filter(|b| b.source == source)
                    .map(|b| (b.instance_id.clone(), b))
                    .collect(),
            )
        }
        _ => None,
    };

    // few-shot prompting examples: train-split instances with a plausible
    // continuation, in file order
    let few_shot_examples: Vec<GenerativeExample> = if args.mode == ModeArg::FewShot {
        let n = config.get_usize("generate.few_shot_examples", 4)?;
        instances
            .iter()
            .filter(|i| i.split == Split::Train)
            .filter_map(|i| {
                i.continuations
                    .iter()
                    .find(|c| c.label == Label::Plausible)
                    .map(|c| GenerativeExample {
                        narrative: i.narrative.full_text(),
                        continuation: Some(c.text.clone()),
                    })
            })
            .take(n)
            .collect()
    } else {
        Vec::new()
    };
    let budget = config.get_usize("scoring.prompt_token_budget", DEFAULT_PROMPT_TOKEN_BUDGET)?;

    let model_name = format!("{}:{}", args.backend.name(), args.mode.name());
    let mut records = Vec::with_capacity(targets.len());
    for instance in &targets {
        let narrative = instance.narrative.full_text();
        let inst_seed = instance_seed(stage, &instance.id);
        let mut rng = ChaCha8Rng::seed_from_u64(inst_seed);
        let tokens = match args.mode {
            ModeArg::ZeroShot => {
                let prompt = lm.encode(&narrative)?;
                generate(&lm, &prompt, &decoding, &mut rng)?
            }
            ModeArg::FewShot => {
                let prompt_text =
                    fewshot_generative_prompt(&few_shot_examples, &narrative, budget)?;
                let prompt = lm.encode(&prompt_text)?;
                generate(&lm, &prompt, &decoding, &mut rng)?
            }
            ModeArg::KnowledgeLiteral | ModeArg::KnowledgeContext => {
                let bundles = bundles.as_ref().unwrap();
                let bundle = bundles
                    .get(&instance.id)
                    .with_context(|| format!("no bundle for instance {}", instance.id))?;
                let prompt_set = EnsemblePromptSet::from_bundle(bundle, &narrative, &lm)?;
                ensemble_generate(&lm, &prompt_set, &decoding, &mut rng)?
            }
        };
        records.push(GenerationRecord {
            instance_id: instance.id.clone(),
            model: model_name.clone(),
            continuation_text: lm.decode(&tokens),
            tokens,
            seed: inst_seed,
        });
    }

    write_jsonl(&args.out, &records)?;
    write_json_pretty(
        &args.out.with_extension("meta.json"),
        &Meta {
            stage: "generate",
            mode: args.mode.name(),
            seed,
            stage_seed: stage,
            strategy: match decoding.strategy {
                Strategy::TopK => "top_k",
                Strategy::Nucleus => "nucleus",
            },
            k: decoding.k,
            temperature: decoding.temperature,
            p: decoding.p,
            max_tokens: decoding.max_tokens,
            instances: records.len(),
        },
    )?;
    eprintln!("generated {} continuations in {} mode", records.len(), args.mode.name());
    Ok(0)
}
