//! An explicit conditional-table language model for tests and desk-scale
//! runs. The JSON fixture format is:
//!
//! ```json
//! {
//!   "vocab": ["he", "ran", ".", "<eos>"],
//!   "eos": 3,
//!   "table": { "he": [0.1, 2.0, -1.0, 0.0], "he⎵ran": [0.0, 0.0, 3.0, 1.0] }
//! }
//! ```
//!
//! Table keys are prefix tokens joined by `⎵`; prefixes absent from the
//! table fall back to a uniform distribution (all-zero logits). When the
//! vocabulary contains `<unk>`, unknown words encode to it; otherwise they
//! are an error so hand-traced fixtures stay strict.

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;

use super::{DecodingError, LanguageModel, TokenId};

const PREFIX_JOIN: char = '\u{23B5}'; // ⎵
const MAX_VOCAB: usize = 32;
pub(crate) const UNK_TOKEN: &str = "<unk>";
pub(crate) const SEP1_TOKEN: &str = "<sep1>";
pub(crate) const SEP2_TOKEN: &str = "<sep2>";

#[derive(Deserialize)]
struct ToyLmFile {
    vocab: Vec<String>,
    #[serde(default)]
    eos: Option<TokenId>,
    #[serde(default)]
    table: HashMap<String, Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct ToyLm {
    vocab: Vec<String>,
    ids: HashMap<String, TokenId>,
    eos: Option<TokenId>,
    table: HashMap<String, Vec<f64>>,
}

impl ToyLm {
    pub fn from_json_str(content: &str) -> Result<Self, DecodingError> {
        let file: ToyLmFile =
            serde_json::from_str(content).map_err(|e| DecodingError::BadFixture(e.to_string()))?;
        if file.vocab.is_empty() {
            return Err(DecodingError::BadFixture("empty vocabulary".into()));
        }
        if file.vocab.len() > MAX_VOCAB {
            return Err(DecodingError::BadFixture(format!(
                "vocabulary has {} tokens, limit is {MAX_VOCAB}",
                file.vocab.len()
            )));
        }
        let mut ids = HashMap::new();
        for (i, tok) in file.vocab.iter().enumerate() {
            if tok.contains(PREFIX_JOIN) || tok.contains(char::is_whitespace) {
                return Err(DecodingError::BadFixture(format!(
                    "token `{tok}` contains a separator character"
                )));
            }
            if ids.insert(tok.clone(), i as TokenId).is_some() {
                return Err(DecodingError::BadFixture(format!("duplicate token `{tok}`")));
            }
        }
        if let Some(eos) = file.eos
            && eos as usize >= file.vocab.len()
        {
            return Err(DecodingError::BadFixture(format!("eos id {eos} out of range")));
        }
        for (key, row) in &file.table {
            if row.len() != file.vocab.len() {
                return Err(DecodingError::BadFixture(format!(
                    "row `{key}` has {} logits for a {}-token vocabulary",
                    row.len(),
                    file.vocab.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(DecodingError::BadFixture(format!("row `{key}` has non-finite logits")));
            }
        }
        Ok(Self {
            vocab: file.vocab,
            ids,
            eos: file.eos,
            table: file.table,
        })
    }

    pub fn load(path: &Path) -> Result<Self, DecodingError> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn token_id(&self, token: &str) -> Option<TokenId> {
        self.ids.get(token).copied()
    }

    fn prefix_key(&self, prefix: &[TokenId]) -> String {
        prefix
            .iter()
            .map(|&id| self.vocab[id as usize].as_str())
            .collect::<Vec<_>>()
            .join(&PREFIX_JOIN.to_string())
    }
}

impl LanguageModel for ToyLm {
    fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    fn next_logits(&self, prefix: &[TokenId]) -> Vec<f64> {
        match self.table.get(&self.prefix_key(prefix)) {
            Some(row) => row.clone(),
            None => vec![0.0; self.vocab.len()],
        }
    }

    fn eos_id(&self) -> Option<TokenId> {
        self.eos
    }

    fn sep_ids(&self) -> Option<(TokenId, TokenId)> {
        Some((self.token_id(SEP1_TOKEN)?, self.token_id(SEP2_TOKEN)?))
    }

    fn encode(&self, text: &str) -> Result<Vec<TokenId>, DecodingError> {
        let unk = self.token_id(UNK_TOKEN);
        text.split_whitespace()
            .map(|tok| {
                self.token_id(tok)
                    .or(unk)
                    .ok_or_else(|| DecodingError::UnknownToken(tok.to_string()))
            })
            .collect()
    }

    fn decode(&self, tokens: &[TokenId]) -> String {
        tokens
            .iter()
            .filter_map(|&id| self.vocab.get(id as usize).map(String::as_str))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
