//! Shipped encoder backends: a deterministic hash-based fixture for tests
//! and a toy trainable bag-of-tokens encoder that makes the full
//! train/eval loop run at desk scale. Full-scale encoders attach through
//! the same [`Encoder`] trait.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Encoder;
use crate::seed::fnv1a64;

const SEPARATOR: &str = "</s>";

/// Deterministic pseudo-random vectors keyed by the joined input text.
/// Two identical inputs always encode identically; unrelated inputs get
/// unrelated vectors.
#[derive(Debug, Clone)]
pub struct FixtureEncoder {
    dim: usize,
}

impl FixtureEncoder {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

impl Encoder for FixtureEncoder {
    fn dim(&self) -> usize {
        self.dim
    }

    fn separator(&self) -> &str {
        SEPARATOR
    }

    fn encode(&self, segments: &[String]) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(fnv1a64(&self.joined_input(segments)));
        (0..self.dim).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect()
    }
}

/// Trainable bag-of-tokens encoder: tokens hash into embedding buckets and
/// the pooled vector is their mean. Linear over token counts, so a linear
/// head on top can separate anything marked by a lexical signal.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyEncoder {
    dim: usize,
    buckets: usize,
    /// Row-major `buckets x dim`.
    embeddings: Vec<f64>,
}

impl ToyEncoder {
    pub fn new(dim: usize, buckets: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let embeddings = (0..buckets * dim)
            .map(|_| (rng.random::<f64>() - 0.5) * 0.1)
            .collect();
        Self { dim, buckets, embeddings }
    }

    fn bucket(&self, token: &str) -> usize {
        (fnv1a64(&token.to_lowercase()) % self.buckets as u64) as usize
    }

    /// Embedding bucket per token of the joined input; the pooled vector is
    /// the mean of these rows. Exposed for the trainer's backward pass.
    pub(crate) fn token_buckets(&self, segments: &[String]) -> Vec<usize> {
        self.joined_input(segments)
            .split_whitespace()
            .map(|t| self.bucket(t))
            .collect()
    }

    pub(crate) fn pooled(&self, buckets: &[usize]) -> Vec<f64> {
        let mut v = vec![0.0; self.dim];
        if buckets.is_empty() {
            return v;
        }
        for &b in buckets {
            let row = &self.embeddings[b * self.dim..(b + 1) * self.dim];
            for (acc, x) in v.iter_mut().zip(row) {
                *acc += x;
            }
        }
        let n = buckets.len() as f64;
        v.iter_mut().for_each(|x| *x /= n);
        v
    }

    /// SGD update on the embedding rows that contributed to a pooled
    /// vector: each receives `grad / n_tokens`.
    pub(crate) fn apply_gradient(&mut self, buckets: &[usize], grad: &[f64], lr: f64) {
        if buckets.is_empty() {
            return;
        }
        let n = buckets.len() as f64;
        for &b in buckets {
            let row = &mut self.embeddings[b * self.dim..(b + 1) * self.dim];
            for (w, g) in row.iter_mut().zip(grad) {
                *w -= lr * g / n;
            }
        }
    }
}

impl Encoder for ToyEncoder {
    fn dim(&self) -> usize {
        self.dim
    }

    fn separator(&self) -> &str {
        SEPARATOR
    }

    fn encode(&self, segments: &[String]) -> Vec<f64> {
        self.pooled(&self.token_buckets(segments))
    }
}
