use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seedable random stream shared by every stochastic step of a run.
///
/// Equal seeds give bit-identical draw sequences on every platform
/// (ChaCha8 is portable and does not depend on the host word size).
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Stream for the `run_index`-th repetition of an experiment.
    ///
    /// Both crowding modes of a paired comparison use this same stream, so
    /// their initial populations coincide.
    pub fn for_run(base_seed: u64, run_index: u64) -> Self {
        Self::new(base_seed.wrapping_add(run_index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derive an independent child stream, advancing this one.
    pub fn split(&mut self) -> RngStream {
        RngStream::new(self.inner.next_u64())
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    /// Bernoulli trial with success probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        // p == 0 must never fire and p == 1 must always fire.
        self.uniform() < p
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}
