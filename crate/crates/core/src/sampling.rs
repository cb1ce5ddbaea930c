//! Seeded pseudo-random rectangles and barcodes.
//!
//! Test corpora and the CLI generator need output that is reproducible
//! from a seed alone, across platforms and toolchain updates, so the
//! generator is a self-contained SplitMix64 rather than an external RNG.

use crate::barcode::Barcode;
use crate::ext_real::ExtReal;
use crate::rectangle::Rectangle;

/// SplitMix64: a tiny, fast, stable PRNG with a 64-bit state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in `lo..=hi`. The ranges used here are tiny,
    /// so plain modulo reduction is fine.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    /// True with the given probability, quantized to 32 fractional bits.
    pub fn chance(&mut self, probability: f64) -> bool {
        assert!((0.0..=1.0).contains(&probability));
        let threshold = (probability * 4_294_967_296.0) as u64;
        (self.next_u64() >> 32) < threshold
    }
}

/// A random rectangle with integer endpoints in `lo..=hi`, each lower
/// endpoint replaced by `-inf` (and each upper by `+inf`) independently
/// with probability `inf_prob`. Always satisfies `a_i < b_i`.
pub fn random_rectangle(
    rng: &mut SplitMix64,
    dim: usize,
    lo: i64,
    hi: i64,
    inf_prob: f64,
) -> Rectangle {
    assert!(dim >= 1);
    assert!(lo < hi, "coordinate range must contain two integers");
    let mut lower = Vec::with_capacity(dim);
    let mut upper = Vec::with_capacity(dim);
    for _ in 0..dim {
        let a = rng.int_in(lo, hi - 1);
        let b = rng.int_in(a + 1, hi);
        lower.push(if rng.chance(inf_prob) {
            ExtReal::NegInf
        } else {
            ExtReal::integer(a)
        });
        upper.push(if rng.chance(inf_prob) {
            ExtReal::PosInf
        } else {
            ExtReal::integer(b)
        });
    }
    Rectangle::new(lower, upper).expect("sampled endpoints are strictly ordered")
}

pub fn random_barcode(
    rng: &mut SplitMix64,
    count: usize,
    dim: usize,
    lo: i64,
    hi: i64,
    inf_prob: f64,
) -> Barcode {
    let bars = (0..count)
        .map(|_| random_rectangle(rng, dim, lo, hi, inf_prob))
        .collect();
    Barcode::from_bars(bars).expect("all sampled bars share the dimension")
}
