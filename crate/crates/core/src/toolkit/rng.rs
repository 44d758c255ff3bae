//! The pseudo-random sequence behind every seeded artifact.
//!
//! xorshift64* with shifts (12, 25, 27) and output multiplier
//! `0x2545F4914F6CDD1D`. The seed is mixed as `seed ^ 0x9E3779B97F4A7C15`;
//! a zero result is replaced by the mixing constant itself. Bounded draws
//! reduce the output modulo the bound, which is slightly biased for bounds
//! that do not divide 2^64 and is kept that way so other implementations
//! can reproduce the stream with nothing but integer arithmetic.

const MIX: u64 = 0x9E37_79B9_7F4A_7C15;
const MULT: u64 = 0x2545_F491_4F6C_DD1D;

#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let state = seed ^ MIX;
        XorShift64Star {
            state: if state == 0 { MIX } else { state },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(MULT)
    }

    /// A draw in `0..n`. Panics on `n == 0`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        (self.next_u64() % n as u64) as usize
    }

    /// A draw in `lo..=hi`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// Fisher–Yates, swapping from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }

    /// `k` distinct items drawn from `pool`, in draw order.
    pub fn sample<T: Copy>(&mut self, pool: &[T], k: usize) -> Vec<T> {
        let mut pool = pool.to_vec();
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let i = self.below(pool.len());
            out.push(pool.swap_remove(i));
        }
        out
    }
}
