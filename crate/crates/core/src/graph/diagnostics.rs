use serde::Serialize;

/// Basic facts about a degree sequence.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeSummary {
    pub vertices: usize,
    pub total: u64,
    pub max: u64,
    /// Hill estimate of `τ` from the top 1% of degrees (at least 10 of them).
    pub tail_exponent: Option<f64>,
}

impl DegreeSummary {
    pub fn from_degrees(degrees: &[u64]) -> Self {
        let k = (degrees.len() / 100).max(10);
        DegreeSummary {
            vertices: degrees.len(),
            total: degrees.iter().sum(),
            max: degrees.iter().copied().max().unwrap_or(0),
            tail_exponent: hill_tail_exponent(degrees, k),
        }
    }
}

/// Hill estimator of the power-law exponent `τ` of the degree distribution
/// from the `k` largest degrees: `1 + k / sum_{i<k} ln(X_(i) / X_(k))`.
pub fn hill_tail_exponent(degrees: &[u64], k: usize) -> Option<f64> {
    if k < 2 || degrees.len() <= k {
        return None;
    }
    let mut sorted: Vec<u64> = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let threshold = sorted[k] as f64;
    if threshold <= 0.0 {
        return None;
    }
    let sum: f64 = sorted[..k].iter().map(|&d| (d as f64 / threshold).ln()).sum();
    if sum <= 0.0 {
        return None;
    }
    Some(1.0 + k as f64 / sum)
}
