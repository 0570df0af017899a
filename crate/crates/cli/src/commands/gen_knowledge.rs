//! `figbench gen-knowledge`

use std::path::PathBuf;
use std::time::Duration;

use anyhow::{Context, Result, bail};
use clap::ValueEnum;
use serde::Serialize;

use figbench::corpus::DatasetInstance;
use figbench::knowledge::{
    DEFAULT_BUNDLE_SIZE, FixtureBackend, HttpBackend, HttpBackendConfig, InferenceBundle,
    KnowledgeModel, context_inferences, literal_inferences,
};
use figbench::schema::dataset_schema;

use super::load_config;
use crate::io::{read_jsonl, write_jsonl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Fixture,
    Http,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Literal,
    Context,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long, value_enum, default_value = "fixture")]
    backend: BackendArg,
    /// Fixture backend JSON file (`{"subject|relation": [tails...]}`).
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// HTTP backend endpoint, e.g. `http://host:8080/generate`.
    #[arg(long)]
    endpoint: Option<String>,
    #[arg(long, value_enum, default_value = "both")]
    source: SourceArg,
    /// Inferences per bundle.
    #[arg(short, long)]
    k: Option<usize>,
    /// Output bundles JSONL; failures go to `<out>.errors.jsonl`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
struct ErrorRecord {
    instance_id: String,
    source: String,
    error: String,
}

pub fn run(args: Args) -> Result<i32> {
    let config = load_config(args.config.as_deref())?;
    let k = match args.k {
        Some(k) => k,
        None => config.get_usize("knowledge.k", DEFAULT_BUNDLE_SIZE)?,
    };

    let backend: Box<dyn KnowledgeModel> = match args.backend {
        BackendArg::Fixture => {
            let path = args
                .fixture
                .or_else(|| config.get("paths.knowledge_fixture").map(PathBuf::from))
                .context("fixture backend needs --fixture or paths.knowledge_fixture")?;
            Box::new(FixtureBackend::load(&path)?)
        }
        BackendArg::Http => {
            let endpoint = args
                .endpoint
                .or_else(|| config.get("knowledge.endpoint").map(String::from))
                .context("http backend needs --endpoint or knowledge.endpoint")?;
            let timeout_ms = config.get_usize("knowledge.timeout_ms", 10_000)?;
            let retries = config.get_usize("knowledge.retries", 2)? as u32;
            Box::new(HttpBackend::new(HttpBackendConfig {
                endpoint,
                timeout: Duration::from_millis(timeout_ms as u64),
                retries,
            }))
        }
    };

    let instances: Vec<DatasetInstance> = read_jsonl(&args.dataset, &dataset_schema())?;
    if instances.is_empty() {
        bail!("dataset {} is empty", args.dataset.display());
    }

    let want_literal = matches!(args.source, SourceArg::Literal | SourceArg::Both);
    let want_context = matches!(args.source, SourceArg::Context | SourceArg::Both);

    let mut bundles: Vec<InferenceBundle> = Vec::new();
    let mut errors: Vec<ErrorRecord> = Vec::new();
    for instance in &instances {
        if want_literal {
            match literal_inferences(
                &instance.narrative.expression,
                instance.narrative.kind,
                backend.as_ref(),
                k,
                &instance.id,
            ) {
                Ok(b) => bundles.push(b),
                Err(e) => errors.push(ErrorRecord {
                    instance_id: instance.id.clone(),
                    source: "literal".into(),
                    error: e.to_string(),
                }),
            }
        }
        if want_context {
            match context_inferences(&instance.narrative, backend.as_ref(), k, &instance.id) {
                Ok(b) => bundles.push(b),
                Err(e) => errors.push(ErrorRecord {
                    instance_id: instance.id.clone(),
                    source: "context".into(),
                    error: e.to_string(),
                }),
            }
        }
    }

    write_jsonl(&args.out, &bundles)?;
    let errors_path = args.out.with_extension("errors.jsonl");
    if !errors.is_empty() {
        write_jsonl(&errors_path, &errors)?;
    } else if errors_path.exists() {
        std::fs::remove_file(&errors_path)?;
    }

    eprintln!(
        "wrote {} bundles for {} instances; {} failures",
        bundles.len(),
        instances.len(),
        errors.len()
    );
    if errors.is_empty() { Ok(0) } else { Ok(2) }
}
