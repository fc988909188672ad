/// Counter-based deterministic generator (SplitMix64).
///
/// Campaigns fork one independent stream per sample index, so the values a
/// sample sees depend only on `(seed, index)` and never on how work is
/// partitioned across threads. Hand-rolled rather than pulled from a crate so
/// report bytes cannot drift with a dependency's algorithm choices.
#[derive(Debug, Clone)]
pub struct DetRng {
    state: u64,
}

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng { state: mix(seed.wrapping_add(GAMMA)) }
    }

    /// Independent substream for the given counter, leaving `self` untouched.
    pub fn fork(&self, counter: u64) -> Self {
        DetRng {
            state: mix(self.state ^ mix(counter.wrapping_mul(GAMMA).wrapping_add(GAMMA))),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Coordinate vector with entries uniform in `[-half_width, half_width)`.
    pub fn coords(&mut self, dim: usize, half_width: f64) -> Vec<f64> {
        (0..dim).map(|_| self.range(-half_width, half_width)).collect()
    }
}
