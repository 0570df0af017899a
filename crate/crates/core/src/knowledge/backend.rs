//! Knowledge-model backends: a deterministic JSON fixture for tests and
//! reproducible runs, and an HTTP client for an external inference service.

use std::collections::HashMap;
use std::path::Path;
use std::time::Duration;

use serde::Deserialize;

use super::relation::Relation;
use super::KnowledgeError;

/// A generator of ranked tail phrases for a `(subject, relation)` query.
/// Implementations must be safe for concurrent use; queries for one bundle
/// may be issued in parallel.
pub trait KnowledgeModel: Send + Sync {
    /// Returns at most `k` tail phrases in rank order (best first).
    fn generate(
        &self,
        subject: &str,
        relation: Relation,
        k: usize,
    ) -> Result<Vec<String>, KnowledgeError>;
}

/// Reads a JSON map `{"subject|relation": [tails...]}`. Lookups are exact;
/// a missing key is an error so that fixture gaps surface per instance
/// instead of silently producing empty bundles.
#[derive(Debug, Clone, Default)]
pub struct FixtureBackend {
    map: HashMap<String, Vec<String>>,
}

impl FixtureBackend {
    pub fn new(map: HashMap<String, Vec<String>>) -> Self {
        Self { map }
    }

    pub fn from_json_str(content: &str) -> Result<Self, KnowledgeError> {
        let map: HashMap<String, Vec<String>> = serde_json::from_str(content)
            .map_err(|e| KnowledgeError::BadFixture(e.to_string()))?;
        Ok(Self { map })
    }

    pub fn load(path: &Path) -> Result<Self, KnowledgeError> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn key(subject: &str, relation: Relation) -> String {
        format!("{subject}|{relation}")
    }
}

impl KnowledgeModel for FixtureBackend {
    fn generate(
        &self,
        subject: &str,
        relation: Relation,
        k: usize,
    ) -> Result<Vec<String>, KnowledgeError> {
        let key = Self::key(subject, relation);
        let tails = self
            .map
            .get(&key)
            .ok_or(KnowledgeError::MissingFixtureKey { key })?;
        Ok(tails.iter().take(k).cloned().collect())
    }
}

#[derive(Debug, Clone)]
pub struct HttpBackendConfig {
    /// Full URL of the generation endpoint, e.g. `http://host:port/generate`.
    pub endpoint: String,
    pub timeout: Duration,
    /// Additional attempts after the first failure.
    pub retries: u32,
}

/// POSTs `{"subject", "relation", "k"}` to an inference service and expects
/// `{"tails": [...]}` back. Transport errors and 5xx responses are retried
/// up to the configured count before failing.
pub struct HttpBackend {
    agent: ureq::Agent,
    config: HttpBackendConfig,
}

#[derive(Deserialize)]
struct TailsResponse {
    tails: Vec<String>,
}

impl HttpBackend {
    pub fn new(config: HttpBackendConfig) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(config.timeout))
            .build()
            .into();
        Self { agent, config }
    }

    fn request(&self, subject: &str, relation: Relation, k: usize) -> Result<Vec<String>, String> {
        let body = serde_json::json!({
            "subject": subject,
            "relation": relation.name(),
            "k": k,
        });
        let mut response = self
            .agent
            .post(&self.config.endpoint)
            .send_json(&body)
            .map_err(|e| e.to_string())?;
        let parsed: TailsResponse = response
            .body_mut()
            .read_json()
            .map_err(|e| format!("bad response body: {e}"))?;
        Ok(parsed.tails)
    }
}

impl KnowledgeModel for HttpBackend {
    fn generate(
        &self,
        subject: &str,
        relation: Relation,
        k: usize,
    ) -> Result<Vec<String>, KnowledgeError> {
        let attempts = self.config.retries + 1;
        let mut last_error = String::new();
        for _ in 0..attempts {
            match self.request(subject, relation, k) {
                Ok(mut tails) => {
                    tails.truncate(k);
                    return Ok(tails);
                }
                Err(e) => last_error = e,
            }
        }
        Err(KnowledgeError::Backend {
            subject: subject.to_string(),
            relation,
            message: last_error,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_returns_ranked_tails_truncated_to_k() {
        let backend = FixtureBackend::from_json_str(
            r#"{"gauntlet|UsedFor": ["punishment", "protection", "testing"]}"#,
        )
        .unwrap();
        let tails = backend.generate("gauntlet", Relation::UsedFor, 2).unwrap();
        assert_eq!(tails, vec!["punishment", "protection"]);
    }

    #[test]
    fn fixture_missing_key_is_an_error() {
        let backend = FixtureBackend::from_json_str("{}").unwrap();
        let err = backend.generate("run", Relation::Desires, 2).unwrap_err();
        assert!(matches!(err, KnowledgeError::MissingFixtureKey { .. }));
    }

    #[test]
    fn fixture_is_deterministic() {
        let backend =
            FixtureBackend::from_json_str(r#"{"lake|HasProperty": ["calm", "deep"]}"#).unwrap();
        let a = backend.generate("lake", Relation::HasProperty, 2).unwrap();
        let b = backend.generate("lake", Relation::HasProperty, 2).unwrap();
        assert_eq!(a, b);
    }
}
