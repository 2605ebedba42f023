//! Seeded random generation of partitions and cycle types.
//!
//! All randomness comes from ChaCha8 keyed by a 64-bit seed. Parallel work is
//! split into fixed-size chunks and chunk `c` draws from ChaCha stream `c`, so
//! results depend on `(seed, samples)` only and never on the worker count.
//! Bounded integers are drawn by masking to the bound's bit width and
//! rejecting, which is exactly uniform.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{self, Partition, PartitionIndex};

pub type SampleRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2011;

/// Samples handled by one substream.
pub const CHUNK_SIZE: u64 = 4096;

pub fn substream(seed: u64, stream: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform integer in `[0, bound)`.
pub fn uniform_u64_below<R: RngCore + ?Sized>(bound: u64, rng: &mut R) -> u64 {
    assert!(bound > 0, "empty range");
    if bound == 1 {
        return 0;
    }
    let bits = 64 - (bound - 1).leading_zeros();
    let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
    loop {
        let x = rng.next_u64() & mask;
        if x < bound {
            return x;
        }
    }
}

/// Uniform big integer in `[0, bound)`, by rejection over the minimal width.
pub fn uniform_biguint_below<R: RngCore + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    if bound.is_one() {
        return BigUint::zero();
    }
    let bits = (bound - 1u32).bits();
    let words = bits.div_ceil(64) as usize;
    let top_bits = bits - 64 * (words as u64 - 1);
    let top_mask = if top_bits == 64 { u64::MAX } else { (1u64 << top_bits) - 1 };
    loop {
        let mut digits: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
        digits[words - 1] &= top_mask;
        let x = BigUint::from_slice(
            &digits
                .iter()
                .flat_map(|d| [*d as u32, (*d >> 32) as u32])
                .collect::<Vec<u32>>(),
        );
        if &x < bound {
            return x;
        }
    }
}

/// A partition of `n` drawn uniformly from all pₙ partitions.
pub fn uniform_partition<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Partition {
    let counts = partitions::bounded_counts(n);
    let rank = uniform_biguint_below(counts.total(n), rng);
    partitions::unrank(&PartitionIndex { n, rank }).expect("rank drawn below p_n")
}

/// Cycle type of a uniform random permutation of `n` points.
///
/// The cycle through the smallest unplaced point has length uniform on
/// `1..=remaining`, which yields class μ with probability 1/z_μ.
pub fn random_cycle_type<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Partition {
    let mut remaining = n as u64;
    let mut cycles = Vec::new();
    while remaining > 0 {
        let len = 1 + uniform_u64_below(remaining, rng);
        cycles.push(len as u32);
        remaining -= len;
    }
    Partition::from_unsorted(cycles)
}

/// Number of cycles of a uniform random permutation, drawn as above.
pub fn random_cycle_count<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> usize {
    let mut remaining = n as u64;
    let mut count = 0;
    while remaining > 0 {
        remaining -= 1 + uniform_u64_below(remaining, rng);
        count += 1;
    }
    count
}

/// Runs `f` once per sample on per-chunk substreams; output is in sample
/// order and identical for any thread count.
pub fn par_samples<T, F>(samples: u64, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut SampleRng) -> T + Sync,
{
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let per_chunk: Vec<Vec<T>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = substream(seed, c);
            let len = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
            (0..len).map(|_| f(&mut rng)).collect()
        })
        .collect();
    per_chunk.into_iter().flatten().collect()
}

/// Counts samples for which `f` returns true.
pub fn par_count<F>(samples: u64, seed: u64, f: F) -> u64
where
    F: Fn(&mut SampleRng) -> bool + Sync,
{
    let chunks = samples.div_ceil(CHUNK_SIZE);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = substream(seed, c);
            let len = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
            (0..len).filter(|_| f(&mut rng)).count() as u64
        })
        .sum()
}

/// Result of a seeded Monte Carlo run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleSummary {
    pub estimate: f64,
    pub samples: u64,
    pub std_error: f64,
    pub seed: u64,
    pub extra: BTreeMap<String, f64>,
}

impl SampleSummary {
    /// Proportion estimate with binomial standard error √(p̂(1−p̂)/N).
    pub fn proportion(successes: u64, samples: u64, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::invalid("at least one sample is required"));
        }
        let p = successes as f64 / samples as f64;
        let mut extra = BTreeMap::new();
        extra.insert("successes".to_string(), successes as f64);
        Ok(SampleSummary {
            estimate: p,
            samples,
            std_error: (p * (1.0 - p) / samples as f64).sqrt(),
            seed,
            extra,
        })
    }

    /// Distance to `target` in standard errors; zero error counts exact hits
    /// as 0 and misses as infinite.
    pub fn sigmas_from(&self, target: f64) -> f64 {
        let diff = (self.estimate - target).abs();
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}
