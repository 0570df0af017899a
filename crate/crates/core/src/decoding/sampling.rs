//! Logit transforms, filtered sampling distributions, and the sampler.

use rand::{Rng, RngExt};

use super::DecodingError;

/// Numerically stable softmax.
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&z| (z - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// Numerically stable log-softmax.
pub fn log_softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_sum: f64 = logits.iter().map(|&z| (z - max).exp()).sum::<f64>().ln();
    logits.iter().map(|&z| z - max - log_sum).collect()
}

/// Element-wise division by the temperature. Errors for `temperature <= 0`.
pub fn apply_temperature(logits: &[f64], temperature: f64) -> Result<Vec<f64>, DecodingError> {
    if temperature <= 0.0 {
        return Err(DecodingError::BadTemperature(temperature));
    }
    Ok(logits.iter().map(|&z| z / temperature).collect())
}

/// Renormalized distribution over the `k` highest logits; every other token
/// gets probability exactly 0. Ties at the k-th value break toward the
/// lower token id.
pub fn top_k_filter(logits: &[f64], k: usize) -> Result<Vec<f64>, DecodingError> {
    if k < 1 || k > logits.len() {
        return Err(DecodingError::BadK { k, vocab: logits.len() });
    }
    let mut order: Vec<usize> = (0..logits.len()).collect();
    order.sort_by(|&a, &b| logits[b].partial_cmp(&logits[a]).unwrap().then(a.cmp(&b)));
    let kept = &order[..k];
    let kept_logits: Vec<f64> = kept.iter().map(|&i| logits[i]).collect();
    let kept_probs = softmax(&kept_logits);
    let mut probs = vec![0.0; logits.len()];
    for (&i, &p) in kept.iter().zip(kept_probs.iter()) {
        probs[i] = p;
    }
    Ok(probs)
}

// Tolerance for the cumulative-mass comparison: softmax sums carry float
// error, and a boundary case like cumulative 0.9 vs p = 0.9 must keep the
// minimal prefix.
const NUCLEUS_EPS: f64 = 1e-9;

/// Renormalized distribution over the smallest prefix of probability-sorted
/// tokens whose cumulative mass reaches `p`. Ties break toward the lower
/// token id.
pub fn nucleus_filter(logits: &[f64], p: f64) -> Result<Vec<f64>, DecodingError> {
    if p <= 0.0 || p > 1.0 {
        return Err(DecodingError::BadP(p));
    }
    let full = softmax(logits);
    let mut order: Vec<usize> = (0..full.len()).collect();
    order.sort_by(|&a, &b| full[b].partial_cmp(&full[a]).unwrap().then(a.cmp(&b)));
    let mut cumulative = 0.0;
    let mut cut = full.len();
    for (rank, &i) in order.iter().enumerate() {
        cumulative += full[i];
        if cumulative >= p - NUCLEUS_EPS {
            cut = rank + 1;
            break;
        }
    }
    let kept = &order[..cut];
    let mass: f64 = kept.iter().map(|&i| full[i]).sum();
    let mut probs = vec![0.0; full.len()];
    for &i in kept {
        probs[i] = full[i] / mass;
    }
    Ok(probs)
}

/// Temperature first, then the configured filter.
pub fn filtered_distribution(
    logits: &[f64],
    config: &super::DecodingConfig,
) -> Result<Vec<f64>, DecodingError> {
    let scaled = apply_temperature(logits, config.temperature)?;
    match config.strategy {
        super::Strategy::TopK => top_k_filter(&scaled, config.k),
        super::Strategy::Nucleus => nucleus_filter(&scaled, config.p),
    }
}

/// Samples an index from a probability vector by inverse CDF in token-id
/// order.
pub fn sample_index(probs: &[f64], rng: &mut impl Rng) -> usize {
    let r: f64 = rng.random();
    let mut cumulative = 0.0;
    let mut last_nonzero = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p > 0.0 {
            last_nonzero = i;
            cumulative += p;
            if r < cumulative {
                return i;
            }
        }
    }
    last_nonzero
}
