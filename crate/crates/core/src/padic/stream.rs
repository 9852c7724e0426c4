//! Reproducible Haar sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PadicElem, PadicField, PadicPoly};
use crate::ff::FqElem;

/// Counter-addressed source of uniform `π`-adic digits.
///
/// Digit `i` of coefficient `slot` in draw `draw` depends only on
/// `(seed, draw, slot, i)`: each draw owns a ChaCha stream and each slot a
/// disjoint window of it, so asking for more digits never changes earlier ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitStream {
    seed: u64,
}

impl DigitStream {
    pub fn new(seed: u64) -> Self {
        DigitStream { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn digits(&self, q: u64, draw: u64, slot: u32, k: u32) -> Vec<FqElem> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(draw);
        rng.set_word_pos((slot as u128) << 40);
        (0..k).map(|_| FqElem::from_index(rng.gen_range(0..q as u32))).collect()
    }

    pub fn element(&self, field: &PadicField, draw: u64, slot: u32, k: u32) -> PadicElem {
        field.from_digits(&self.digits(field.q(), draw, slot, k))
    }

    /// Monic degree-`n` polynomial with Haar-random lower coefficients;
    /// `a_i` comes from slot `i`.
    pub fn monic_poly(&self, field: &PadicField, draw: u64, n: u32, k: u32) -> PadicPoly {
        let lower = (0..n).map(|i| self.element(field, draw, i, k)).collect();
        PadicPoly::monic(field, lower)
    }
}

/// A Haar-random element of the ring of integers, known modulo `π^k`.
pub fn haar_sample(field: &PadicField, stream: &DigitStream, draw: u64, slot: u32, k: u32) -> PadicElem {
    stream.element(field, draw, slot, k)
}
