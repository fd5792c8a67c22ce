//! Seedable pseudorandom stream shared by every stochastic operator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic random stream. Equal seeds give equal draw sequences on
/// every platform.
#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn seed_from_u64(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw from `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform draw from `[low, high)`; returns `low` when the range is empty.
    pub fn uniform_in(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.uniform()
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    /// Uniform index in `0..n` that avoids every entry of `excluded`.
    ///
    /// `excluded` may contain duplicates and values `>= n`; both are ignored.
    /// Returns `None` when every index is excluded.
    pub fn index_excluding(&mut self, n: usize, excluded: &[usize]) -> Option<usize> {
        let mut skip: alloc::vec::Vec<usize> =
            excluded.iter().copied().filter(|&e| e < n).collect();
        skip.sort_unstable();
        skip.dedup();
        let free = n - skip.len();
        if free == 0 {
            return None;
        }
        let mut k = self.index(free);
        // Map the k-th free slot onto 0..n by stepping over excluded indices.
        for &e in &skip {
            if e <= k {
                k += 1;
            } else {
                break;
            }
        }
        Some(k)
    }

    /// `N` mutually distinct indices in `0..n`, none in `excluded`.
    pub fn distinct_indices<const N: usize>(
        &mut self,
        n: usize,
        excluded: &[usize],
    ) -> Option<[usize; N]> {
        let mut taken: alloc::vec::Vec<usize> = excluded.to_vec();
        let mut out = [0usize; N];
        for slot in out.iter_mut() {
            *slot = self.index_excluding(n, &taken)?;
            taken.push(*slot);
        }
        Some(out)
    }
}
