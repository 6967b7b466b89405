//! Conditional concentration of subgraph counts.
//!
//! A count concentrates around its conditional mean when the expected number
//! of merged copies (two copies of `H` sharing at least one edge) is of
//! smaller order than the squared expected count. Both sides are compared as
//! `(exponent, log_power)` pairs, so the verdict is symbolic.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiment::{mean_and_variance, replica_counts, Counter, Target};
use crate::model::{ModelParams, Seed};
use crate::optimizer::{solve_b, solve_b_unordered, AffineExponent, ChiValue};
use crate::subgraph::{merge_copies, OrderedSubgraph};

/// Largest subgraph accepted by [`classify`].
pub const MAX_CLASSIFY_VERTICES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Growth {
    pub exponent: AffineExponent,
    pub exponent_value: f64,
    pub log_power: usize,
}

impl Growth {
    fn new(exponent: AffineExponent, log_power: usize, chi: ChiValue) -> Self {
        Growth { exponent, exponent_value: exponent.value(chi.to_f64()), log_power }
    }

    fn cmp_at(&self, other: &Growth, chi: ChiValue) -> Ordering {
        self.exponent.cmp_at(&other.exponent, chi).then(self.log_power.cmp(&other.log_power))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    /// Merged copies are negligible: the count is conditionally concentrated.
    Met,
    /// Some merged shape grows at least as fast as the squared mean.
    NonConcentrationCandidate,
    /// The expected count stays bounded.
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergedRow {
    /// Inline edges of the best ordering.
    pub shape: String,
    pub k: usize,
    pub edge_count: usize,
    /// `None` when no ordering of the shape is attainable with `m`.
    pub growth: Option<Growth>,
    pub violates: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationVerdict {
    pub subgraph: String,
    pub own: Growth,
    pub doubled: Growth,
    pub merged_max: Option<Growth>,
    pub criterion_met: bool,
    pub status: VerdictStatus,
    pub merged_table: Vec<MergedRow>,
}

impl ConcentrationVerdict {
    pub fn violating(&self) -> impl Iterator<Item = &MergedRow> {
        self.merged_table.iter().filter(|r| r.violates)
    }
}

pub fn classify(h: &OrderedSubgraph, params: &ModelParams) -> Result<ConcentrationVerdict> {
    if h.k() > MAX_CLASSIFY_VERTICES {
        return Err(Error::SizeLimit { what: "classify vertices", got: h.k(), limit: MAX_CLASSIFY_VERTICES });
    }
    let chi = ChiValue::of(params);
    let rep = solve_b(h, params)?;
    let own = Growth::new(rep.exponent_symbolic, rep.log_power, chi);
    let e = own.exponent;
    let doubled = Growth::new(AffineExponent::new(2 * e.a, 2 * e.b), 2 * own.log_power, chi);

    let mut merged_table = Vec::new();
    for shape in merge_copies(h)? {
        let row = match solve_b_unordered(&shape, params) {
            Ok(r) => {
                let g = Growth::new(r.best.exponent_symbolic, r.best.log_power, chi);
                MergedRow {
                    shape: sorted_inline(&r.best.subgraph),
                    k: shape.k(),
                    edge_count: shape.edge_count(),
                    growth: Some(g),
                    violates: g.cmp_at(&doubled, chi) != Ordering::Less,
                }
            }
            Err(Error::NotAttainable(_)) => MergedRow {
                shape: shape.to_inline(),
                k: shape.k(),
                edge_count: shape.edge_count(),
                growth: None,
                violates: false,
            },
            Err(err) => return Err(err),
        };
        merged_table.push(row);
    }

    let merged_max = merged_table.iter().filter_map(|r| r.growth).max_by(|a, b| a.cmp_at(b, chi));
    let criterion_met = merged_max.is_none_or(|g| g.cmp_at(&doubled, chi) == Ordering::Less);
    let bounded = own.exponent.cmp_at(&AffineExponent::new(0, 0), chi) != Ordering::Greater && own.log_power == 0;
    let status = if bounded {
        VerdictStatus::Inapplicable
    } else if criterion_met {
        VerdictStatus::Met
    } else {
        VerdictStatus::NonConcentrationCandidate
    };
    Ok(ConcentrationVerdict { subgraph: h.to_inline(), own, doubled, merged_max, criterion_met, status, merged_table })
}

fn sorted_inline(h: &OrderedSubgraph) -> String {
    let mut edges = h.edges().to_vec();
    edges.sort_unstable();
    OrderedSubgraph::new(h.k(), edges).expect("same edges").to_inline()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceRow {
    pub t: usize,
    pub mean: f64,
    pub variance: f64,
    /// `variance / mean²`, `None` when the mean is 0.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityPoint {
    pub t: usize,
    pub replica: usize,
    pub count: u64,
    /// Count divided by the mean over replicas at this `t`.
    pub normalized: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceTable {
    pub rows: Vec<VarianceRow>,
    pub density: Vec<DensityPoint>,
}

impl VarianceTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,mean,variance,ratio\n");
        for r in &self.rows {
            let ratio = r.ratio.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", r.t, r.mean, r.variance, ratio));
        }
        out
    }

    pub fn density_csv(&self) -> String {
        let mut out = String::from("t,replica,count,normalized\n");
        for d in &self.density {
            let n = d.normalized.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", d.t, d.replica, d.count, n));
        }
        out
    }
}

pub fn variance_experiment(
    params: &ModelParams,
    h: &OrderedSubgraph,
    t_list: &[usize],
    replicas: usize,
    seed: Seed,
) -> Result<VarianceTable> {
    let target = Target::Ordered(h.clone());
    let counts = replica_counts(params, &Counter::new(&target, params.m())?, t_list, replicas, seed)?;
    let mut rows = Vec::with_capacity(t_list.len());
    let mut density = Vec::with_capacity(t_list.len() * replicas);
    for (&t, xs) in t_list.iter().zip(&counts) {
        let (mean, variance) = mean_and_variance(xs);
        let nonzero = mean > 0.0;
        rows.push(VarianceRow { t, mean, variance, ratio: nonzero.then(|| variance / (mean * mean)) });
        density.extend(xs.iter().enumerate().map(|(replica, &count)| DensityPoint {
            t,
            replica,
            count,
            normalized: nonzero.then(|| count as f64 / mean),
        }));
    }
    Ok(VarianceTable { rows, density })
}
