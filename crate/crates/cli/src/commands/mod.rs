pub mod build_dataset;
pub mod evaluate;
pub mod gen_knowledge;
pub mod generate;
pub mod score;

use std::path::Path;

use anyhow::{Context, Result, bail};

use crate::config::Config;

pub fn load_config(path: Option<&Path>) -> Result<Config> {
    match path {
        Some(p) => Config::load(p),
        None => Ok(Config::default()),
    }
}

/// Stochastic commands must receive a seed, either as `--seed` or as the
/// config key `run.seed`.
pub fn require_seed(flag: Option<u64>, config: &Config) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    if let Some(seed) = config.get_u64("run.seed")? {
        return Ok(seed);
    }
    bail!("this command is stochastic: pass --seed or set run.seed in the config");
}

/// Reads corpus documents: a directory (files in name order) or a single
/// file; with `per_line` every non-empty line is its own document.
pub fn read_corpus(path: &Path, per_line: bool) -> Result<Vec<String>> {
    let mut files = Vec::new();
    if path.is_dir() {
        for entry in std::fs::read_dir(path)
            .with_context(|| format!("reading corpus directory {}", path.display()))?
        {
            let p = entry?.path();
            if p.is_file() {
                files.push(p);
            }
        }
        files.sort();
    } else {
        files.push(path.to_path_buf());
    }
    if files.is_empty() {
        bail!("corpus {} contains no files", path.display());
    }
    let mut docs = Vec::new();
    for file in files {
        let content = std::fs::read_to_string(&file)
            .with_context(|| format!("reading corpus file {}", file.display()))?;
        if per_line {
            docs.extend(content.lines().filter(|l| !l.trim().is_empty()).map(String::from));
        } else {
            docs.push(content);
        }
    }
    Ok(docs)
}
