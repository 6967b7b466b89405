use rand::Rng;
use rand_distr::{Distribution, Gamma};

use super::{PAGraph, Provenance};
use crate::error::{Error, Result};
use crate::model::{ModelParams, Seed};

/// Latent variables of a Pólya urn graph.
///
/// `psi[k]` for `k in 1..=t` (slot 0 unused, `psi[1] = 1`), and the interval
/// endpoints `S[k] = prod_{h=k+1}^{t} (1 - psi[h])` for `k in 0..=t` with
/// `S[0] = 0` and `S[t] = 1`. Vertex `k` owns `[S[k-1], S[k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct UrnRealization {
    params: ModelParams,
    psi: Vec<f64>,
    s: Vec<f64>,
}

impl UrnRealization {
    /// Draws `psi[k] ~ Beta(m+δ, m(2k-3)+(k-1)δ)` independently for `k = 2..=t`.
    pub fn sample<R: Rng>(params: ModelParams, t: usize, rng: &mut R) -> Result<Self> {
        if t < 2 {
            return Err(Error::GraphTooSmall(t, 2));
        }
        let m = params.m() as f64;
        let delta = params.delta();
        let alpha = m + delta;
        let mut psi = vec![0.0; t + 1];
        psi[1] = 1.0;
        for (k, slot) in psi.iter_mut().enumerate().skip(2) {
            let beta = m * (2.0 * k as f64 - 3.0) + (k as f64 - 1.0) * delta;
            *slot = sample_beta(alpha, beta, rng);
        }
        Ok(Self::from_psi(params, psi))
    }

    /// Builds the realization from a given `psi` vector (`psi[0]` ignored, `psi[1]` forced to 1).
    pub fn from_psi(params: ModelParams, mut psi: Vec<f64>) -> Self {
        let t = psi.len() - 1;
        psi[0] = 0.0;
        psi[1] = 1.0;
        // suffix sums of ln(1 - psi) so long products never underflow
        let mut s = vec![0.0; t + 1];
        let mut log_s = 0.0f64;
        s[t] = 1.0;
        for k in (1..t).rev() {
            log_s += (-psi[k + 1]).ln_1p();
            s[k] = log_s.exp();
        }
        s[0] = 0.0;
        UrnRealization { params, psi, s }
    }

    pub fn t(&self) -> usize {
        self.psi.len() - 1
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn psi(&self) -> &[f64] {
        &self.psi
    }

    /// Endpoints `S[0..=t]`.
    pub fn endpoints(&self) -> &[f64] {
        &self.s
    }

    /// `max_i |S_i - (i/t)^χ|` over `i in 1..=t`.
    pub fn position_deviation(&self) -> f64 {
        let t = self.t() as f64;
        let chi = self.params.chi();
        (1..=self.t()).map(|i| (self.s[i] - (i as f64 / t).powf(chi)).abs()).fold(0.0, f64::max)
    }

    /// Fraction of `k in [from, t]` with `psi_k > (ln k)^2 / ((2m+δ) k)`.
    pub fn coupling_exceedance(&self, from: usize) -> f64 {
        let from = from.max(2);
        if from > self.t() {
            return 0.0;
        }
        let scale = 2.0 * self.params.m() as f64 + self.params.delta();
        let hits = (from..=self.t())
            .filter(|&k| {
                let kf = k as f64;
                self.psi[k] > kf.ln().powi(2) / (scale * kf)
            })
            .count();
        hits as f64 / (self.t() - from + 1) as f64
    }

    /// `max_{i >= 2} psi_i`.
    pub fn max_psi(&self) -> f64 {
        self.psi[2..].iter().copied().fold(0.0, f64::max)
    }

    /// Diagnostic dump, header `k,psi,S`, one row per `k in 1..=t`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,psi,S\n");
        for k in 1..=self.t() {
            out.push_str(&format!("{k},{},{}\n", self.psi[k], self.s[k]));
        }
        out
    }
}

/// `Beta(alpha, beta)` as `X / (X + Y)` with independent `X ~ Gamma(alpha, 1)`,
/// `Y ~ Gamma(beta, 1)` drawn in that order (rand_distr's Marsaglia–Tsang sampler).
pub fn sample_beta<R: Rng>(alpha: f64, beta: f64, rng: &mut R) -> f64 {
    let x = Gamma::new(alpha, 1.0).expect("alpha > 0").sample(rng);
    let y = Gamma::new(beta, 1.0).expect("beta > 0").sample(rng);
    x / (x + y)
}

/// Index `k` with `u` in `[S[k-1], S[k])`, by binary search over the endpoints.
pub fn interval_lookup(s: &[f64], u: f64) -> Result<usize> {
    let t = s.len().saturating_sub(1);
    if t < 1 || !(0.0..s[t]).contains(&u) {
        return Err(Error::OutOfRange(format!("position {u} outside [0, 1)")));
    }
    Ok(s[1..].partition_point(|&x| x <= u) + 1)
}

/// Samples a Pólya urn graph and returns it with its latent realization.
pub fn generate_urn(params: ModelParams, t: usize, seed: Seed) -> Result<(PAGraph, UrnRealization)> {
    let mut rng = seed.rng();
    let urn = UrnRealization::sample(params, t, &mut rng)?;
    let m = params.m() as usize;
    let mut targets = Vec::with_capacity(m * (t - 1));
    for v in 2..=t {
        let bound = urn.s[v - 1];
        for _ in 0..m {
            let u = rng.random::<f64>() * bound;
            let k = interval_lookup(&urn.s, u).expect("u in [0, S[v-1]) subset of [0, 1)");
            targets.push(k.min(v - 1) as u32);
        }
    }
    Ok((PAGraph::from_parts_unchecked(params, t, targets, Provenance::Urn), urn))
}
