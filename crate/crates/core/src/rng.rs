/// SplitMix64 generator.
///
/// All randomized searches in this crate draw from an explicitly seeded
/// instance, so every result is a pure function of (inputs, seed) and is
/// reproducible across platforms and versions.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    /// Derive an independent stream for a named subtask.
    pub fn derive(&self, tag: u64) -> SplitMix64 {
        let mut probe = SplitMix64::new(self.state ^ tag.wrapping_mul(0xa076_1d64_78bd_642f));
        SplitMix64::new(probe.next_u64())
    }
}
