//! `figbench build-dataset`

use std::collections::{HashMap, HashSet};
use std::path::PathBuf;

use anyhow::{Context, Result, bail};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use figbench::corpus::{
    Continuation, IdiomLexicon, MiningConfig, SplitRatios, TaskKind, attach_continuations,
    mine_documents,
};
use figbench::seed::stage_seed;
use figbench::tagger::RuleTagger;

use super::{load_config, read_corpus, require_seed};
use crate::io::{write_json_pretty, write_jsonl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TaskArg {
    Idiom,
    Simile,
}

impl From<TaskArg> for TaskKind {
    fn from(t: TaskArg) -> Self {
        match t {
            TaskArg::Idiom => TaskKind::Idiom,
            TaskArg::Simile => TaskKind::Simile,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Corpus file or directory of files.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Treat every line of the corpus file(s) as its own document.
    #[arg(long)]
    per_line: bool,
    #[arg(long, value_enum)]
    task: TaskArg,
    /// Idiom lexicon TSV (`expression<TAB>definition`). Required for the
    /// idiom task.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Plain-text exclusion list, one instance id per line.
    #[arg(long)]
    exclusions: Option<PathBuf>,
    /// JSONL continuations to merge: `{"id": ..., "continuations": [...]}`.
    #[arg(long)]
    continuations: Option<PathBuf>,
    /// Context window in sentences.
    #[arg(long)]
    window: Option<usize>,
    /// Split ratios as `train,validation,test`.
    #[arg(long)]
    ratios: Option<String>,
    /// Output directory for dataset.jsonl and stats.json.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct ContinuationsRecord {
    id: String,
    continuations: Vec<Continuation>,
}

#[derive(Serialize)]
struct StatsFile {
    #[serde(flatten)]
    stats: figbench::corpus::CorpusStats,
    root_seed: u64,
}

fn parse_ratios(spec: &str) -> Result<SplitRatios> {
    let parts: Vec<f64> = spec
        .split(',')
        .map(|p| p.trim().parse().with_context(|| format!("bad ratio `{p}`")))
        .collect::<Result<_>>()?;
    if parts.len() != 3 {
        bail!("--ratios expects three comma-separated numbers");
    }
    Ok(SplitRatios::new(parts[0], parts[1], parts[2])?)
}

pub fn run(args: Args) -> Result<i32> {
    let config = load_config(args.config.as_deref())?;
    let seed = require_seed(args.seed, &config)?;
    let task: TaskKind = args.task.into();

    let corpus_path = args
        .corpus
        .or_else(|| config.get("paths.corpus").map(PathBuf::from))
        .context("no corpus: pass --corpus or set paths.corpus")?;
    let per_line = args.per_line
        || config.get("pipeline.per_line").map(|v| v == "true").unwrap_or(false);
    let docs = read_corpus(&corpus_path, per_line)?;

    let lexicon = match (
        task,
        args.lexicon.or_else(|| config.get("paths.lexicon").map(PathBuf::from)),
    ) {
        (TaskKind::Idiom, Some(path)) => Some(IdiomLexicon::load(&path)?),
        (TaskKind::Idiom, None) => bail!("the idiom task needs --lexicon or paths.lexicon"),
        (TaskKind::Simile, _) => None,
    };

    let exclusions: HashSet<String> = match args
        .exclusions
        .or_else(|| config.get("paths.exclusions").map(PathBuf::from))
    {
        Some(path) => std::fs::read_to_string(&path)
            .with_context(|| format!("reading exclusions {}", path.display()))?
            .lines()
            .map(|l| l.trim().to_string())
            .filter(|l| !l.is_empty())
            .collect(),
        None => HashSet::new(),
    };

    let ratios = match args.ratios {
        Some(spec) => parse_ratios(&spec)?,
        None => match config.get("pipeline.ratios") {
            Some(spec) => parse_ratios(spec)?,
            None => SplitRatios::default(),
        },
    };

    let mining = MiningConfig {
        window: match args.window {
            Some(w) => w,
            None => config.get_usize("pipeline.window", 4)?,
        },
        ratios,
        seed: stage_seed(seed, "build-dataset"),
        exclusions,
    };

    let (mut instances, stats) =
        mine_documents(&docs, task, lexicon.as_ref(), &RuleTagger, &mining)?;

    if let Some(path) = args.continuations {
        let content = std::fs::read_to_string(&path)
            .with_context(|| format!("reading continuations {}", path.display()))?;
        let mut map: HashMap<String, Vec<Continuation>> = HashMap::new();
        for (i, line) in content.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let record: ContinuationsRecord = serde_json::from_str(line)
                .with_context(|| format!("{} line {}", path.display(), i + 1))?;
            map.insert(record.id, record.continuations);
        }
        attach_continuations(&mut instances, &map);
    }

    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    write_jsonl(&args.out.join("dataset.jsonl"), &instances)?;
    write_json_pretty(
        &args.out.join("stats.json"),
        &StatsFile { stats, root_seed: seed },
    )?;

    eprintln!(
        "mined {} instances ({} expressions) from {} documents",
        instances.len(),
        instances
            .iter()
            .map(|i| i.expression_key())
            .collect::<HashSet<_>>()
            .len(),
        docs.len()
    );
    Ok(0)
}
