//! Seedable, splittable source of the uniform/exponential/gaussian primitives
//! every sampler in this crate is built from.
//!
//! A [`RandomStream`] is a value: cloning it forks the draw sequence, and the
//! sequence of primitive draws is a deterministic function of `(seed,
//! stream_id)`. Distinct stream ids select distinct ChaCha streams, which are
//! statistically independent by construction, so parallel Monte Carlo can
//! hand one substream to each worker and merge results in any order.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Number of draws per chunk when a batch is sharded across substreams.
///
/// Batch helpers split `n` requested variates into fixed chunks of this size,
/// one substream per chunk, so the merged output does not depend on how many
/// workers ran.
pub const BATCH_CHUNK: usize = 1 << 16;

/// Deterministic stream of i.i.d. sampling primitives.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Fresh stream with the same seed and a stream id derived from this
    /// stream's id and `k`. Substreams of distinct streams stay distinct as
    /// long as ids are below 2^32, which sampling code keeps to by using
    /// small consecutive ids.
    pub fn substream(&self, k: u64) -> Self {
        Self::new(self.seed, (self.stream_id << 32) ^ k)
    }

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    #[inline]
    pub fn uniform_open(&mut self) -> f64 {
        // 53 mantissa bits plus a half-ulp offset keeps both endpoints out.
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    /// Exponential with rate 1; strictly positive.
    #[inline]
    pub fn exp_std(&mut self) -> f64 {
        -self.uniform_open().ln()
    }

    /// Exponential with rate `rate`.
    #[inline]
    pub fn exp_rate(&mut self, rate: f64) -> f64 {
        self.exp_std() / rate
    }

    /// Standard gaussian via Box-Muller (fixed cost: two uniforms per draw).
    #[inline]
    pub fn gaussian(&mut self) -> f64 {
        let r = (-2.0 * self.uniform_open().ln()).sqrt();
        r * (TAU * self.uniform_open()).cos()
    }
}

/// Draw n variates of `f`, sharded over substreams in fixed chunks of
/// [`BATCH_CHUNK`] draws. Chunk c draws sequentially from
/// `base.substream(c)`, and chunks are concatenated in index order, so the
/// output is a pure function of `base` and `n` no matter how many workers
/// rayon uses.
pub fn sample_batch<F>(base: &RandomStream, n: usize, f: F) -> Vec<f64>
where
    F: Fn(&mut RandomStream) -> f64 + Sync,
{
    use rayon::prelude::*;
    let chunks = n.div_ceil(BATCH_CHUNK);
    let per_chunk: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut s = base.substream(c as u64);
            let take = BATCH_CHUNK.min(n - c * BATCH_CHUNK);
            (0..take).map(|_| f(&mut s)).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(n);
    for chunk in per_chunk {
        out.extend(chunk);
    }
    out
}
