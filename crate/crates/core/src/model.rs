//! Model parameters and seeded random streams.

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters `(m, δ)` of the preferential attachment model.
///
/// `m` is the number of edges every new vertex sends, `δ > -m` the additive
/// attractiveness. The degree exponent `τ` and the urn exponent `χ` are
/// derived on demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ModelParams {
    m: u32,
    delta: f64,
}

#[derive(Deserialize)]
struct RawParams {
    m: u32,
    delta: f64,
}

impl TryFrom<RawParams> for ModelParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        ModelParams::new(raw.m, raw.delta)
    }
}

impl ModelParams {
    pub fn new(m: u32, delta: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParams(format!("m must be >= 1, got {m}")));
        }
        if !delta.is_finite() {
            return Err(Error::InvalidParams(format!("delta must be finite, got {delta}")));
        }
        if delta <= -(m as f64) {
            return Err(Error::InvalidParams(format!("delta must exceed -m = {}, got {delta}", -(m as f64))));
        }
        Ok(ModelParams { m, delta })
    }

    /// Parameters with the given `m` whose degree exponent is `tau`.
    pub fn from_tau(m: u32, tau: f64) -> Result<Self> {
        ModelParams::new(m, (tau - 3.0) * m as f64)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Degree exponent `τ = 3 + δ/m`.
    pub fn tau(&self) -> f64 {
        3.0 + self.delta / self.m as f64
    }

    /// `χ = (m+δ)/(2m+δ) = (τ-2)/(τ-1)`, always in `(0, 1)`.
    pub fn chi(&self) -> f64 {
        let m = self.m as f64;
        (m + self.delta) / (2.0 * m + self.delta)
    }

    /// `δ` as an exact fraction when the stored float is one (denominator up to 10⁶).
    pub fn delta_exact(&self) -> Option<Ratio<i64>> {
        exact_fraction(self.delta, 1_000_000)
    }

    /// `χ` as an exact fraction when `δ` is rational.
    pub fn chi_exact(&self) -> Option<Ratio<i64>> {
        let d = self.delta_exact()?;
        let m = Ratio::from_integer(self.m as i64);
        Some((m + d) / (m * 2 + d))
    }
}

/// Recovers `p/q` with `q <= max_den` such that `p as f64 / q as f64 == x` bit-for-bit.
pub(crate) fn exact_fraction(x: f64, max_den: i64) -> Option<Ratio<i64>> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        if h2 as f64 / k2 as f64 == x {
            return Some(Ratio::new(h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// Root of a reproducible random stream: a 64-bit seed plus a stream id.
///
/// Streams are ChaCha8 keyed by `value` with the ChaCha stream selector set
/// to `stream`, so `(value, stream)` pins the generated sequence on every
/// platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub value: u64,
    pub stream: u64,
}

impl Seed {
    pub fn new(value: u64) -> Self {
        Seed { value, stream: 0 }
    }

    pub fn with_stream(value: u64, stream: u64) -> Self {
        Seed { value, stream }
    }

    /// Seed of the `index`-th replica derived from this root.
    ///
    /// Streams are laid out as `stream * 2^32 + index` so replicas of
    /// distinct roots never collide for fewer than 2^32 replicas.
    pub fn replica(&self, index: u64) -> Seed {
        Seed { value: self.value, stream: (self.stream << 32).wrapping_add(index) }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.value);
        rng.set_stream(self.stream);
        rng
    }
}
