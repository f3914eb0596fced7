//! The standard Cauchy law: seeded sampling, the law of `|X|`, and
//! 1-stable linear combinations.

use core::f64::consts::{FRAC_2_PI, PI};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{domain, Result};

/// Identifier of the pseudo-random generator, recorded in reports and
/// sketch metadata.
pub const GENERATOR: &str = "ChaCha8 (rand_chacha 0.9; seed_from_u64 + set_stream)";

/// Seed of a reproducible Cauchy stream.
///
/// The same `(seed, stream_id)` yields a bit-identical sequence on every
/// platform. Distinct stream ids give independent ChaCha8 streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RngSeed {
    /// Generator seed.
    pub seed: u64,
    /// Stream selector.
    pub stream_id: u64,
}

impl RngSeed {
    /// Construct from parts.
    pub const fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Seed of the `index`-th child stream, used to give each Monte Carlo
    /// trial its own generator.
    ///
    /// Children of different parents never collide the way
    /// `stream_id + index` would: the parent pair is hashed into the child's
    /// seed and the index becomes its stream id.
    pub fn child(&self, index: u64) -> Self {
        let mixed = splitmix64(self.seed ^ splitmix64(self.stream_id ^ 0x243f_6a88_85a3_08d3));
        Self {
            seed: mixed,
            stream_id: index,
        }
    }

    /// A fresh generator positioned at the start of this stream.
    pub fn stream(&self) -> CauchyStream {
        CauchyStream::new(*self)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator of standard Cauchy draws by inversion of the CDF.
#[derive(Debug, Clone)]
pub struct CauchyStream {
    rng: ChaCha8Rng,
}

impl CauchyStream {
    /// Start the stream identified by `seed`.
    pub fn new(seed: RngSeed) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.seed);
        rng.set_stream(seed.stream_id);
        Self { rng }
    }

    /// Uniform draw on the open interval `(0, 1)` with 53 random bits.
    /// A zero is redrawn; one cannot occur.
    pub fn next_uniform(&mut self) -> f64 {
        loop {
            let bits = self.rng.next_u64() >> 11;
            if bits != 0 {
                return bits as f64 * (1.0 / (1u64 << 53) as f64);
            }
        }
    }

    /// Next standard Cauchy draw.
    pub fn next_cauchy(&mut self) -> f64 {
        cauchy_from_uniform(self.next_uniform())
    }
}

/// Inverse CDF of the standard Cauchy law, `tan(π(u − ½))`.
pub fn cauchy_from_uniform(u: f64) -> f64 {
    libm::tan(PI * (u - 0.5))
}

/// One standard Cauchy draw from `stream`.
pub fn sample_standard_cauchy(stream: &mut CauchyStream) -> f64 {
    stream.next_cauchy()
}

/// `P{|X| ≤ t} = (2/π) atan(t)` for `t ≥ 0`.
pub fn cdf_abs(t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(domain("cdf_abs", t));
    }
    Ok(FRAC_2_PI * libm::atan(t))
}

/// `P{|X| > t} = (2/π) atan(1/t)` for `t > 0`.
pub fn survival_abs(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(domain("survival_abs", t));
    }
    Ok(FRAC_2_PI * libm::atan(1.0 / t))
}

/// `Σ v_j X_j` with fresh iid standard Cauchy `X_j` from `stream`.
///
/// By 1-stability the result has the law of `‖v‖₁ X`.
pub fn stable_combination(v: &[f64], stream: &mut CauchyStream) -> Result<f64> {
    if v.is_empty() {
        return Err(crate::Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let mut acc = 0.0;
    for &w in v {
        acc += w * stream.next_cauchy();
    }
    Ok(acc)
}
