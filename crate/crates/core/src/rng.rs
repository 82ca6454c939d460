//! Deterministic xorshift64* pseudo-random generator.
//!
//! Generated automata are fixtures: a `(family, n, sigma, seed)` tuple must
//! reproduce byte-identical output on every platform and in every
//! implementation of the file format, so the recurrence is pinned here
//! instead of delegating to an external crate. The generator is the
//! xorshift64* recurrence with shift triple `(12, 25, 27)` and finalizing
//! multiplier `0x2545F4914F6CDD1D`.

/// xorshift64* stream, seeded from a 64-bit value.
#[derive(Debug, Clone)]
pub struct Xorshift64Star {
    state: u64,
}

/// Replacement state for the (invalid) all-zero seed.
const ZERO_SEED_SUBSTITUTE: u64 = 0x9E37_79B9_7F4A_7C15;

impl Xorshift64Star {
    /// Seed 0 is remapped to a fixed non-zero constant; the xorshift state
    /// must never be zero.
    pub fn new(seed: u64) -> Self {
        Xorshift64Star {
            state: if seed == 0 { ZERO_SEED_SUBSTITUTE } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Draw from `0..bound` by modulo reduction. The reduction bias is below
    /// `bound / 2^64`, irrelevant at the scales used here; determinism is
    /// what the format contract requires.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "below(0) is undefined");
        self.next_u64() % bound
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    /// The first `k` entries of a Fisher-Yates shuffle of `0..len`, i.e. a
    /// uniform `k`-subset of `0..len` in uniform random order.
    pub fn sample_indices(&mut self, len: usize, k: usize) -> Vec<usize> {
        assert!(k <= len, "cannot sample {k} of {len}");
        let mut arena: Vec<usize> = (0..len).collect();
        for i in 0..k {
            let j = i + self.below((len - i) as u64) as usize;
            arena.swap(i, j);
        }
        arena.truncate(k);
        arena
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below((i + 1) as u64) as usize;
            xs.swap(i, j);
        }
    }
}
