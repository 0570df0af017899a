//! Accuracy, Rouge-L, and the embedding-based similarity score.

use super::EvalError;

/// Exact fraction of predictions equal to gold.
pub fn accuracy(predictions: &[usize], golds: &[usize]) -> Result<f64, EvalError> {
    if predictions.len() != golds.len() {
        return Err(EvalError::LengthMismatch {
            predictions: predictions.len(),
            golds: golds.len(),
        });
    }
    if predictions.is_empty() {
        return Err(EvalError::Empty);
    }
    let correct = predictions.iter().zip(golds).filter(|(p, g)| p == g).count();
    Ok(correct as f64 / predictions.len() as f64)
}

/// Longest-common-subsequence length, two-row dynamic programming.
pub fn lcs_length<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut curr = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            curr[j + 1] = if x == y {
                prev[j] + 1
            } else {
                prev[j + 1].max(curr[j])
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// Metric tokenization: lowercase, punctuation stripped.
pub fn rouge_tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split_whitespace()
        .map(|t| t.chars().filter(|c| c.is_alphanumeric()).collect::<String>())
        .filter(|t| !t.is_empty())
        .collect()
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 { 2.0 * p * r / (p + r) } else { 0.0 }
}

/// Sentence-level Rouge-L: `P = LCS/|candidate|`, `R = LCS/|reference|`,
/// balanced F1. Errors when either side tokenizes to nothing.
pub fn rouge_l(candidate: &str, reference: &str) -> Result<(f64, f64, f64), EvalError> {
    let cand = rouge_tokenize(candidate);
    let reference_tokens = rouge_tokenize(reference);
    if cand.is_empty() {
        return Err(EvalError::EmptyAfterTokenization(candidate.to_string()));
    }
    if reference_tokens.is_empty() {
        return Err(EvalError::EmptyAfterTokenization(reference.to_string()));
    }
    let lcs = lcs_length(&cand, &reference_tokens) as f64;
    let p = lcs / cand.len() as f64;
    let r = lcs / reference_tokens.len() as f64;
    Ok((p, r, f1(p, r)))
}

/// Per-token embedding provider for the similarity score.
pub trait TokenEmbedder: Send + Sync {
    fn embed(&self, token: &str) -> Vec<f64>;
}

/// One-hot vectors over an explicit vocabulary; distinct known tokens are
/// orthogonal. Tokens outside the vocabulary embed to the zero vector,
/// which [`embed_score`] rejects, so build it over the evaluation corpus.
#[derive(Debug, Clone)]
pub struct OneHotEmbedder {
    index: std::collections::HashMap<String, usize>,
}

impl OneHotEmbedder {
    pub fn new<S: AsRef<str>>(vocab: impl IntoIterator<Item = S>) -> Self {
        let mut index = std::collections::HashMap::new();
        for token in vocab {
            let next = index.len();
            index.entry(token.as_ref().to_string()).or_insert(next);
        }
        Self { index }
    }

    /// Vocabulary harvested from the metric tokenization of `texts`.
    pub fn from_texts<'a>(texts: impl IntoIterator<Item = &'a str>) -> Self {
        Self::new(texts.into_iter().flat_map(rouge_tokenize))
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }
}

impl TokenEmbedder for OneHotEmbedder {
    fn embed(&self, token: &str) -> Vec<f64> {
        let mut v = vec![0.0; self.index.len()];
        if let Some(&i) = self.index.get(token) {
            v[i] = 1.0;
        }
        v
    }
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}

/// Greedy-matching embedding similarity: recall is the mean over reference
/// tokens of the best cosine against candidate tokens, precision is the
/// symmetric direction, F1 the harmonic mean. No idf weighting.
pub fn embed_score(
    candidate: &str,
    reference: &str,
    embedder: &dyn TokenEmbedder,
) -> Result<(f64, f64, f64), EvalError> {
    let cand = rouge_tokenize(candidate);
    let reference_tokens = rouge_tokenize(reference);
    if cand.is_empty() {
        return Err(EvalError::EmptyAfterTokenization(candidate.to_string()));
    }
    if reference_tokens.is_empty() {
        return Err(EvalError::EmptyAfterTokenization(reference.to_string()));
    }
    let embed_all = |tokens: &[String]| -> Result<Vec<Vec<f64>>, EvalError> {
        tokens
            .iter()
            .map(|t| {
                let v = embedder.embed(t);
                if v.iter().all(|x| *x == 0.0) {
                    Err(EvalError::ZeroVector(t.clone()))
                } else {
                    Ok(v)
                }
            })
            .collect()
    };
    let cand_vecs = embed_all(&cand)?;
    let ref_vecs = embed_all(&reference_tokens)?;
    let best_against = |v: &[f64], pool: &[Vec<f64>]| {
        pool.iter().map(|u| cosine(v, u)).fold(f64::NEG_INFINITY, f64::max)
    };
    let r = ref_vecs.iter().map(|v| best_against(v, &cand_vecs)).sum::<f64>()
        / ref_vecs.len() as f64;
    let p = cand_vecs.iter().map(|v| best_against(v, &ref_vecs)).sum::<f64>()
        / cand_vecs.len() as f64;
    Ok((p, r, f1(p, r)))
}
