//! Reproducible random source for the randomised time stepping of LTS-Roe*.
//!
//! The generator is xorshift64* (Marsaglia's xorshift with the multiplier
//! `0x2545F4914F6CDD1D`), seeded through one round of splitmix64 so that any
//! `u64` seed, including zero, produces a non-zero state. One call to
//! [`Xorshift64Star::next_u64`] performs
//!
//! ```text
//! x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;
//! state = x;     output = x * 0x2545F4914F6CDD1D  (wrapping)
//! ```
//!
//! and [`Xorshift64Star::next_f64`] maps the top 53 output bits to `[0, 1)`.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Xorshift64Star {
    state: u64,
}

impl Xorshift64Star {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        Self {
            state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z },
        }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform sample in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform sample in `[-1/2, 1/2)`.
    pub fn centered(&mut self) -> f64 {
        self.next_f64() - 0.5
    }
}
