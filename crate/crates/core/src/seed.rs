//! Deterministic seed derivation.
//!
//! All randomness in the pipeline flows from one root seed. Each stage
//! derives its own seed from the root and the stage name, and stochastic
//! per-instance work (generation) derives one more level from the
//! instance id, so runs are reproducible and instances are independent
//! of each other's order.

/// FNV-1a hash, also used for hash-bucketing tokens in the toy encoder.
pub fn fnv1a64(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Seed for a named pipeline stage.
pub fn stage_seed(root: u64, stage: &str) -> u64 {
    splitmix64(root ^ fnv1a64(stage))
}

/// Seed for one instance within a stage.
pub fn instance_seed(stage: u64, instance_id: &str) -> u64 {
    splitmix64(stage ^ fnv1a64(instance_id))
}
