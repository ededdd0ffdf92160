//! Seeded, stream-addressable random number generation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::tensor::ComplexMatrix;
use crate::C64;

/// A `(seed, stream)` pair. Identical pairs reproduce identical draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngSeed {
    pub const fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Counter-based generator positioned at the start of this stream.
    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// Derives a sub-stream from a list of coordinates. Pure function of
    /// `(self, coords)`; distinct coordinates give unrelated streams.
    pub fn derive(self, coords: &[u64]) -> Self {
        let mut h = splitmix64(self.stream_id ^ 0x5851_f42d_4c95_7f2d);
        for &c in coords {
            h = splitmix64(h ^ splitmix64(c.wrapping_add(0x9e37_79b9_7f4a_7c15)));
        }
        Self::new(self.seed, h)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One circularly-symmetric complex Gaussian sample with variance `var`.
pub fn complex_gaussian<R: rand::Rng + ?Sized>(rng: &mut R, var: f64) -> C64 {
    let s = (var / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(s * re, s * im)
}

/// `rows × cols` matrix of i.i.d. CN(0, 1) entries (Rayleigh fading).
pub fn draw_rayleigh<R: rand::Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng, 1.0))
}
