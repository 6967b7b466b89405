use rand::Rng;

use super::{PAGraph, Provenance};
use crate::error::{Error, Result};
use crate::model::{ModelParams, Seed};

/// Target-selection strategy for the sequential construction.
///
/// Both draw from the same law: edge `j` of vertex `v` lands on `i < v` with
/// probability `(D_i(v-1, j-1) + δ) / (2m(v-2) + (j-1) + (v-1)δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AttachmentSampler {
    /// Cumulative-weight inversion over all older vertices, O(v) per edge.
    Linear,
    /// O(1) per edge. Writes `D_i + δ = (D_i - m) + (m + δ)`: the first part
    /// is proportional to the number of times `i` appears in the list of
    /// edge targets of vertices `>= 3`, the second is uniform over `[1, v-1]`.
    #[default]
    EndpointList,
}

pub fn generate_sequential(params: ModelParams, t: usize, seed: Seed) -> Result<PAGraph> {
    generate_sequential_with(params, t, seed, AttachmentSampler::default())
}

pub fn generate_sequential_with(
    params: ModelParams,
    t: usize,
    seed: Seed,
    sampler: AttachmentSampler,
) -> Result<PAGraph> {
    if t < 2 {
        return Err(Error::GraphTooSmall(t, 2));
    }
    let m = params.m() as usize;
    let mut rng = seed.rng();
    let mut targets = Vec::with_capacity(m * (t - 1));
    // vertex 2 sends all m initial edges to vertex 1
    targets.extend(std::iter::repeat_n(1u32, m));
    match sampler {
        AttachmentSampler::Linear => linear(params, t, &mut rng, &mut targets),
        AttachmentSampler::EndpointList => endpoint_list(params, t, &mut rng, &mut targets),
    }
    Ok(PAGraph::from_parts_unchecked(params, t, targets, Provenance::Sequential))
}

/// Denominator of the attachment rule for edge `j` of vertex `v`.
fn attachment_total(params: ModelParams, v: usize, j: usize) -> f64 {
    let m = params.m() as f64;
    2.0 * m * (v as f64 - 2.0) + (j as f64 - 1.0) + (v as f64 - 1.0) * params.delta()
}

fn linear<R: Rng>(params: ModelParams, t: usize, rng: &mut R, targets: &mut Vec<u32>) {
    let m = params.m() as usize;
    let delta = params.delta();
    let mut degree = vec![0u64; t + 1];
    degree[1] = m as u64;
    degree[2] = m as u64;
    for v in 3..=t {
        for j in 1..=m {
            let total: f64 = (1..v).map(|i| degree[i] as f64 + delta).sum();
            let expected = attachment_total(params, v, j);
            assert!(
                (total - expected).abs() <= 1e-9 * expected.abs().max(1.0),
                "running weight {total} disagrees with attachment denominator {expected}"
            );
            let x = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut chosen = v - 1;
            for i in 1..v {
                acc += degree[i] as f64 + delta;
                if x < acc {
                    chosen = i;
                    break;
                }
            }
            degree[chosen] += 1;
            degree[v] += 1;
            targets.push(chosen as u32);
        }
    }
}

fn endpoint_list<R: Rng>(params: ModelParams, t: usize, rng: &mut R, targets: &mut Vec<u32>) {
    let m = params.m() as usize;
    let base = params.m() as f64 + params.delta();
    // targets of edges sent by vertices >= 3, one entry per labeled edge
    let mut excess: Vec<u32> = Vec::with_capacity(m * t.saturating_sub(2));
    for v in 3..=t {
        let older = (v - 1) as f64;
        for _j in 1..=m {
            let listed = excess.len() as f64;
            let total = listed + older * base;
            debug_assert!((total - attachment_total(params, v, _j)).abs() <= 1e-9 * total.max(1.0));
            let x = rng.random::<f64>() * total;
            let chosen = if x < listed {
                excess[(x as usize).min(excess.len() - 1)]
            } else {
                let k = ((x - listed) / base) as usize;
                (k + 1).min(v - 1) as u32
            };
            excess.push(chosen);
            targets.push(chosen);
        }
    }
}
