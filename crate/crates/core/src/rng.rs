//! The seeded generator behind every random sample in this crate.
//!
//! A 64-bit linear congruential generator with Knuth's MMIX constants:
//!
//! ```text
//! state <- state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! ```
//!
//! The initial state is the seed itself. Each draw advances the state once
//! and returns it. [`Lcg::next_f64`] maps the top 53 bits `x` to `x / 2^53`,
//! and [`Lcg::below`] reduces the top 32 bits modulo the bound. Any
//! implementation following these three lines reproduces the same samples.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    const MUL: u64 = 6364136223846793005;
    const INC: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(Self::MUL).wrapping_add(Self::INC);
        self.state
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform-ish in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        (self.next_u64() >> 32) % bound
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}
