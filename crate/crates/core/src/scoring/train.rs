//! Pairwise training of the toy encoder + score head.
//!
//! The two candidate scores go through a shared softmax with cross-entropy
//! on the gold index. Dropout is applied per forward pass — in knowledge
//! mode every per-inference term draws its own mask. After each epoch the
//! model is evaluated on the validation set and the best checkpoint is
//! kept.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use super::encoders::ToyEncoder;
use super::inputs::{
    build_mc_input, choose_index, continuation_only_score, knowledge_choice_score,
    supervised_score,
};
use super::{MultipleChoiceInstance, ScoreHead, ScoringError, TrainConfig};
use crate::knowledge::InferenceBundle;

/// Which input route the model scores with.
#[derive(Debug, Clone, Copy)]
pub enum ScoringMode<'a> {
    /// `[N, C]`
    Supervised,
    /// `[C]` — the annotation-artifact diagnostic.
    ContinuationOnly,
    /// `[Inf_j, N, C]` summed over the instance's bundle.
    Knowledge(&'a HashMap<String, InferenceBundle>),
}

impl<'a> ScoringMode<'a> {
    fn bundle_for(&self, id: &str) -> Result<Option<&'a InferenceBundle>, ScoringError> {
        match self {
            ScoringMode::Knowledge(bundles) => bundles
                .get(id)
                .map(Some)
                .ok_or_else(|| ScoringError::MissingBundle { id: id.to_string() }),
            _ => Ok(None),
        }
    }

    /// The encoder segment lists for one candidate (one list per summed
    /// score term).
    fn segment_lists(
        &self,
        instance: &MultipleChoiceInstance,
        candidate: usize,
    ) -> Result<Vec<Vec<String>>, ScoringError> {
        let narrative = instance.narrative.full_text();
        let continuation = &instance.candidates[candidate];
        Ok(match self {
            ScoringMode::Supervised => vec![build_mc_input(&narrative, continuation, None)],
            ScoringMode::ContinuationOnly => vec![vec![continuation.clone()]],
            ScoringMode::Knowledge(_) => {
                let bundle = self.bundle_for(&instance.id)?.unwrap();
                if bundle.is_empty() {
                    return Err(ScoringError::EmptyBundle);
                }
                bundle
                    .inferences
                    .iter()
                    .map(|inf| build_mc_input(&narrative, continuation, Some(&inf.verbalized)))
                    .collect()
            }
        })
    }
}

/// Evaluation-mode candidate scores via the public scoring routes.
pub fn score_candidates(
    encoder: &ToyEncoder,
    head: &ScoreHead,
    instance: &MultipleChoiceInstance,
    mode: &ScoringMode,
) -> Result<(f64, f64), ScoringError> {
    let narrative = instance.narrative.full_text();
    let mut scores = [0.0; 2];
    for (i, candidate) in instance.candidates.iter().enumerate() {
        scores[i] = match mode {
            ScoringMode::Supervised => supervised_score(encoder, head, &narrative, candidate)?,
            ScoringMode::ContinuationOnly => continuation_only_score(encoder, head, candidate)?,
            ScoringMode::Knowledge(_) => {
                let bundle = mode.bundle_for(&instance.id)?.unwrap();
                knowledge_choice_score(encoder, head, &narrative, candidate, bundle)?
            }
        };
    }
    Ok((scores[0], scores[1]))
}

/// Evaluation-mode prediction.
pub fn predict_choice(
    encoder: &ToyEncoder,
    head: &ScoreHead,
    instance: &MultipleChoiceInstance,
    mode: &ScoringMode,
) -> Result<usize, ScoringError> {
    let (s0, s1) = score_candidates(encoder, head, instance, mode)?;
    Ok(choose_index(s0, s1))
}

fn eval_accuracy(
    encoder: &ToyEncoder,
    head: &ScoreHead,
    instances: &[MultipleChoiceInstance],
    mode: &ScoringMode,
) -> Result<f64, ScoringError> {
    if instances.is_empty() {
        return Ok(0.0);
    }
    let mut correct = 0usize;
    for inst in instances {
        if predict_choice(encoder, head, inst, mode)? == inst.gold {
            correct += 1;
        }
    }
    Ok(correct as f64 / instances.len() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub best_epoch: usize,
    pub best_val_accuracy: f64,
    pub final_train_loss: f64,
}

struct GradAccumulator {
    head_w: Vec<f64>,
    head_b: f64,
    // one (buckets, pooled-vector gradient) entry per forward term
    embedding: Vec<(Vec<usize>, Vec<f64>)>,
    count: usize,
}

impl GradAccumulator {
    fn new(dim: usize) -> Self {
        Self { head_w: vec![0.0; dim], head_b: 0.0, embedding: Vec::new(), count: 0 }
    }

    fn apply(&mut self, encoder: &mut ToyEncoder, head: &mut ScoreHead, lr: f64) {
        if self.count == 0 {
            return;
        }
        let scale = lr / self.count as f64;
        for (w, g) in head.weights.iter_mut().zip(&self.head_w) {
            *w -= scale * g;
        }
        head.bias -= scale * self.head_b;
        for (buckets, grad) in &self.embedding {
            let scaled: Vec<f64> = grad.iter().map(|g| g / self.count as f64).collect();
            encoder.apply_gradient(buckets, &scaled, lr);
        }
        let dim = head.weights.len();
        *self = Self::new(dim);
    }
}

/// Trains encoder and head in place; restores the checkpoint with the best
/// validation accuracy before returning. With an empty validation set the
/// final state is kept.
pub fn train_pairwise(
    encoder: &mut ToyEncoder,
    head: &mut ScoreHead,
    train: &[MultipleChoiceInstance],
    validation: &[MultipleChoiceInstance],
    mode: &ScoringMode,
    config: &TrainConfig,
    seed: u64,
) -> Result<TrainOutcome, ScoringError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, usize, ToyEncoder, ScoreHead)> = None;
    let mut last_loss = 0.0;

    for epoch in 0..config.epochs {
        let mut order: Vec<usize> = (0..train.len()).collect();
        order.shuffle(&mut rng);
        let mut acc = GradAccumulator::new(head.weights.len());
        let mut epoch_loss = 0.0;

        for &idx in &order {
            let instance = &train[idx];
            epoch_loss += train_step(encoder, head, instance, &mut acc, mode, &mut rng)?;
            if acc.count >= config.batch_size {
                acc.apply(encoder, head, config.learning_rate);
            }
        }
        acc.apply(encoder, head, config.learning_rate);
        last_loss = if train.is_empty() { 0.0 } else { epoch_loss / train.len() as f64 };

        if !validation.is_empty() {
            let val_acc = eval_accuracy(encoder, head, validation, mode)?;
            let improved = best.as_ref().is_none_or(|(b, ..)| val_acc > *b);
            if improved {
                best = Some((val_acc, epoch, encoder.clone(), head.clone()));
            }
        }
    }

    match best {
        Some((val_acc, epoch, enc, hd)) => {
            *encoder = enc;
            *head = hd;
            Ok(TrainOutcome {
                best_epoch: epoch,
                best_val_accuracy: val_acc,
                final_train_loss: last_loss,
            })
        }
        None => Ok(TrainOutcome {
            best_epoch: config.epochs.saturating_sub(1),
            best_val_accuracy: f64::NAN,
            final_train_loss: last_loss,
        }),
    }
}

// (token buckets, pooled vector, dropout mask) for one forward term
type ForwardTerm = (Vec<usize>, Vec<f64>, Vec<f64>);

/// One forward/backward pass; returns the instance loss.
fn train_step(
    encoder: &ToyEncoder,
    head: &ScoreHead,
    instance: &MultipleChoiceInstance,
    acc: &mut GradAccumulator,
    mode: &ScoringMode,
    rng: &mut impl Rng,
) -> Result<f64, ScoringError> {
    // forward: per candidate, sum the per-term scores, remembering each
    // term's pooled input and dropout mask
    let mut scores = [0.0f64; 2];
    let mut terms: [Vec<ForwardTerm>; 2] = [Vec::new(), Vec::new()];
    for cand in 0..2 {
        for segments in mode.segment_lists(instance, cand)? {
            let buckets = encoder.token_buckets(&segments);
            let pooled = encoder.pooled(&buckets);
            let (score, mask) = head.score_train(&pooled, rng)?;
            scores[cand] += score;
            terms[cand].push((buckets, pooled, mask));
        }
    }

    // shared softmax + cross-entropy on the gold index
    let max = scores[0].max(scores[1]);
    let exps = [(scores[0] - max).exp(), (scores[1] - max).exp()];
    let z = exps[0] + exps[1];
    let probs = [exps[0] / z, exps[1] / z];
    let loss = -probs[instance.gold].ln();

    for cand in 0..2 {
        let g = probs[cand] - if cand == instance.gold { 1.0 } else { 0.0 };
        for (buckets, pooled, mask) in &terms[cand] {
            for k in 0..head.weights.len() {
                acc.head_w[k] += g * pooled[k] * mask[k];
            }
            acc.head_b += g;
            let v_grad: Vec<f64> = (0..head.weights.len())
                .map(|k| g * head.weights[k] * mask[k])
                .collect();
            acc.embedding.push((buckets.clone(), v_grad));
        }
    }
    acc.count += 1;
    Ok(loss)
}
