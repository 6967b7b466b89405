//! Seeded Monte Carlo experiments over replicated graphs.
//!
//! Every replica grows one graph to the largest requested size and counts on
//! its prefixes. Replica `i` uses the stream `seed.replica(i)`, and results
//! are gathered in replica order, so output does not depend on how many
//! worker threads ran.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::census::{count_ordered, count_triangles};
use crate::error::{Error, Result};
use crate::graph::{generate_sequential, GraphView};
use crate::model::{ModelParams, Seed};
use crate::optimizer::{solve_b, solve_b_unordered, ExponentReport};
use crate::subgraph::{OrderedSubgraph, UnorderedDigraph};

/// What to count: one ordering, or every ordering of an unordered digraph.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Ordered(OrderedSubgraph),
    Unordered(UnorderedDigraph),
}

/// Counting plan for a target: the distinct ordered subgraphs to add up.
#[derive(Debug, Clone)]
pub struct Counter {
    parts: Vec<OrderedSubgraph>,
}

impl Counter {
    pub fn new(target: &Target, m: u32) -> Result<Self> {
        let parts = match target {
            Target::Ordered(h) => vec![h.clone()],
            Target::Unordered(g) => {
                // automorphic orderings give the same ordered subgraph; count it once
                let mut seen = BTreeSet::new();
                g.attainable_orderings(m)?
                    .into_iter()
                    .filter(|h| {
                        let mut key = h.edges().to_vec();
                        key.sort_unstable();
                        seen.insert(key)
                    })
                    .collect()
            }
        };
        Ok(Counter { parts })
    }

    pub fn count(&self, g: GraphView<'_>) -> Result<u64> {
        let mut total = 0u64;
        for h in &self.parts {
            let n = if is_triangle(h) { count_triangles(g)? } else { count_ordered(g, h)? };
            total = total.checked_add(n).ok_or(Error::Overflow("experiment counts"))?;
        }
        Ok(total)
    }
}

fn is_triangle(h: &OrderedSubgraph) -> bool {
    let mut e = h.edges().to_vec();
    e.sort_unstable();
    h.k() == 3 && e == [(2, 1), (3, 1), (3, 2)]
}

pub fn growth_report(target: &Target, params: &ModelParams) -> Result<ExponentReport> {
    match target {
        Target::Ordered(h) => solve_b(h, params),
        Target::Unordered(g) => Ok(solve_b_unordered(g, params)?.best),
    }
}

fn check_sizes(t_list: &[usize], replicas: usize) -> Result<()> {
    if replicas < 1 {
        return Err(Error::OutOfRange("replicas must be at least 1".into()));
    }
    if t_list.is_empty() || t_list[0] < 2 || t_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::OutOfRange(format!("t list {t_list:?} must be strictly increasing with t >= 2")));
    }
    Ok(())
}

/// `counts[i][r]`: count at `t_list[i]` in replica `r`.
pub fn replica_counts(
    params: &ModelParams,
    counter: &Counter,
    t_list: &[usize],
    replicas: usize,
    seed: Seed,
) -> Result<Vec<Vec<u64>>> {
    check_sizes(t_list, replicas)?;
    let t_max = *t_list.last().expect("non-empty");
    let per_replica: Vec<Vec<u64>> = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let g = generate_sequential(*params, t_max, seed.replica(r as u64))?;
            t_list.iter().map(|&t| counter.count(g.prefix(t)?)).collect()
        })
        .collect::<Result<_>>()?;
    Ok((0..t_list.len()).map(|i| per_replica.iter().map(|row| row[i]).collect()).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub t: usize,
    pub mean: f64,
    pub stderr: f64,
    /// `t^{k+B} log^{r−1} t` without a constant.
    pub predicted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingTable {
    pub exponent: f64,
    pub log_power: usize,
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of `ln(mean / ln^{r−1} t)` against `ln t`.
    pub corrected_slope: Option<f64>,
}

impl ScalingTable {
    pub fn to_csv(&self) -> String {
        let slope = self.corrected_slope.map(|s| s.to_string()).unwrap_or_default();
        let mut out = String::from("t,mean,stderr,predicted,corrected_slope\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.t, r.mean, r.stderr, r.predicted, slope));
        }
        out
    }
}

pub fn mean_and_variance(xs: &[u64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().map(|&x| x as f64).sum::<f64>() / n;
    let var = if xs.len() > 1 { xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    (mean, var)
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 || x.len() != y.len() {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn scaling_experiment(
    params: &ModelParams,
    target: &Target,
    t_list: &[usize],
    replicas: usize,
    seed: Seed,
) -> Result<ScalingTable> {
    let report = growth_report(target, params)?;
    let counter = Counter::new(target, params.m())?;
    let counts = replica_counts(params, &counter, t_list, replicas, seed)?;
    let lp = report.log_power as i32;
    let rows: Vec<ScalingRow> = t_list
        .iter()
        .zip(&counts)
        .map(|(&t, xs)| {
            let (mean, var) = mean_and_variance(xs);
            let tf = t as f64;
            ScalingRow {
                t,
                mean,
                stderr: (var / xs.len() as f64).sqrt(),
                predicted: tf.powf(report.exponent) * tf.ln().powi(lp),
            }
        })
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.mean > 0.0)
        .map(|r| {
            let lt = (r.t as f64).ln();
            (lt, r.mean.ln() - lp as f64 * lt.ln())
        })
        .unzip();
    Ok(ScalingTable {
        exponent: report.exponent,
        log_power: report.log_power,
        corrected_slope: fit_slope(&xs, &ys),
        rows,
    })
}
