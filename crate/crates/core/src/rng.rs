//! Reproducible 64-bit mixed congruential generator.
//!
//! `state ← state · 6364136223846793005 + 1442695040888963407 (mod 2⁶⁴)`,
//! starting from `state = seed`. Each draw advances once and yields the high
//! 32 bits of the new state; `below(n)` reduces that draw modulo `n`. The
//! sequence is fully determined by the seed, so sweeps can be replayed by
//! any implementation of the same recurrence.

pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish draw in `[0, n)`; `n` must be nonzero and below 2³².
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0 && n <= u32::MAX as u64 + 1);
        self.next_u32() as u64 % n
    }

    /// Draw in the inclusive range `[lo, hi]`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}
