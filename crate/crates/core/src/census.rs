//! Labeled subgraph counts in a generated graph.
//!
//! An occurrence of an ordered subgraph is an order-preserving injective map
//! of its positions onto graph vertices together with a distinct labeled
//! graph edge `(v, j)` for every subgraph edge.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::GraphView;
use crate::subgraph::OrderedSubgraph;

/// Largest subgraph accepted by [`count_ordered`].
pub const MAX_CENSUS_VERTICES: usize = 5;
/// Largest graph accepted by [`brute_force_count`].
pub const MAX_BRUTE_T: usize = 30;
/// Largest subgraph accepted by [`brute_force_count`].
pub const MAX_BRUTE_VERTICES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    TriangleFast,
    General,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusResult {
    pub subgraph: String,
    pub t: usize,
    pub count: u64,
    /// Seconds.
    pub elapsed: f64,
    pub mode: CensusMode,
}

/// The directed triangle with positions as vertex ids.
pub fn triangle() -> OrderedSubgraph {
    OrderedSubgraph::new(3, vec![(2, 1), (3, 1), (3, 2)]).expect("triangle is valid")
}

fn is_triangle(h: &OrderedSubgraph) -> bool {
    let mut e = h.edges().to_vec();
    e.sort_unstable();
    h.k() == 3 && e == [(2, 1), (3, 1), (3, 2)]
}

/// Runs the census in the requested mode and times it.
pub fn census(g: GraphView<'_>, h: &OrderedSubgraph, mode: CensusMode) -> Result<CensusResult> {
    let start = Instant::now();
    let count = match mode {
        CensusMode::TriangleFast => {
            if !is_triangle(h) {
                return Err(Error::InvalidSubgraph(format!("triangle mode got {h}")));
            }
            count_triangles(g)?
        }
        CensusMode::General => count_ordered(g, h)?,
        CensusMode::BruteForce => brute_force_count(g, h)?,
    };
    Ok(CensusResult { subgraph: h.to_inline(), t: g.t(), count, elapsed: start.elapsed().as_secs_f64(), mode })
}

/// Labeled triangles: for every vertex `w`, every ordered pair of its labeled
/// out-edges landing on `u < v`, times the number of labeled edges `v -> u`.
pub fn count_triangles(g: GraphView<'_>) -> Result<u64> {
    if g.m() < 2 {
        return Ok(0);
    }
    (3..=g.t())
        .into_par_iter()
        .map(|w| {
            let row = g.targets_of(w);
            let mut acc = 0u64;
            for &x in row {
                for &y in row {
                    if x < y {
                        acc += g.multiplicity(y as usize, x as usize) as u64;
                    }
                }
            }
            Ok(acc)
        })
        .try_reduce(|| 0u64, |a, b| a.checked_add(b).ok_or(Error::Overflow("triangles")))
}

/// `n (n-1) ... (n-k+1)`.
fn falling(n: usize, k: usize) -> u64 {
    (0..k).map(|i| n.saturating_sub(i) as u64).product()
}

struct Plan {
    k: usize,
    /// Placement order of positions; `order[0]` is the youngest position.
    order: Vec<usize>,
    /// For each step after the first: an already placed neighbour and whether
    /// the new position is its target (`true`) or its source (`false`).
    anchor: Vec<(usize, bool)>,
    /// Distinct subgraph edges with multiplicity.
    groups: Vec<(usize, usize, usize)>,
    /// Per position: groups whose other endpoint is placed earlier.
    checks: Vec<Vec<usize>>,
}

impl Plan {
    fn new(h: &OrderedSubgraph) -> Plan {
        let k = h.k();
        let mut groups: Vec<(usize, usize, usize)> = Vec::new();
        let mut sorted = h.edges().to_vec();
        sorted.sort_unstable();
        for (s, t) in sorted {
            match groups.last_mut() {
                Some(g) if g.0 == s && g.1 == t => g.2 += 1,
                _ => groups.push((s, t, 1)),
            }
        }
        let mut order = vec![k];
        let mut anchor = vec![(0, true)];
        let mut placed = vec![false; k + 1];
        placed[k] = true;
        while order.len() < k {
            // prefer reaching new positions through out-edges of placed ones
            let next = groups
                .iter()
                .find(|&&(s, t, _)| placed[s] && !placed[t])
                .map(|&(s, t, _)| (t, (s, true)))
                .or_else(|| groups.iter().find(|&&(s, t, _)| placed[t] && !placed[s]).map(|&(s, t, _)| (s, (t, false))))
                .expect("subgraph is connected");
            placed[next.0] = true;
            order.push(next.0);
            anchor.push(next.1);
        }
        let step: Vec<usize> = {
            let mut st = vec![0; k + 1];
            for (i, &p) in order.iter().enumerate() {
                st[p] = i;
            }
            st
        };
        let mut checks = vec![Vec::new(); k + 1];
        for (gi, &(s, t, _)) in groups.iter().enumerate() {
            let later = if step[s] > step[t] { s } else { t };
            checks[later].push(gi);
        }
        Plan { k, order, anchor, groups, checks }
    }
}

/// Labeled occurrences of `h` with vertices matched in age order.
pub fn count_ordered(g: GraphView<'_>, h: &OrderedSubgraph) -> Result<u64> {
    if h.k() > MAX_CENSUS_VERTICES {
        return Err(Error::SizeLimit { what: "census subgraph vertices", got: h.k(), limit: MAX_CENSUS_VERTICES });
    }
    if !h.edges().iter().all(|&(s, t)| s > t) {
        return Err(Error::NotAttainable(format!("{h}: every edge must point to an older position")));
    }
    if !h.is_attainable(g.m() as u32) || h.k() > g.t() {
        return Ok(0);
    }
    let plan = Plan::new(h);
    let in_nb = g.in_neighbours();
    let k = plan.k;
    (k..=g.t())
        .into_par_iter()
        .map(|v| {
            let mut phi = vec![0usize; k + 1];
            phi[k] = v;
            extend(g, &in_nb, &plan, 1, &mut phi)
        })
        .try_reduce(|| 0u64, |a, b| a.checked_add(b).ok_or(Error::Overflow("ordered census")))
}

fn extend(g: GraphView<'_>, in_nb: &[Vec<u32>], plan: &Plan, step: usize, phi: &mut Vec<usize>) -> Result<u64> {
    if step == plan.k {
        let mut w = 1u64;
        for &(s, t, mult) in &plan.groups {
            w = w
                .checked_mul(falling(g.multiplicity(phi[s], phi[t]), mult))
                .ok_or(Error::Overflow("ordered census"))?;
        }
        return Ok(w);
    }
    let p = plan.order[step];
    let (q, p_is_target) = plan.anchor[step];
    // order-preserving window from the nearest placed positions, leaving room
    // for the unplaced positions in between
    let lo = (1..p).rev().find(|&i| phi[i] != 0).map(|i| phi[i] + (p - i)).unwrap_or(p);
    let hi = (p + 1..=plan.k).find(|&i| phi[i] != 0).map(|i| phi[i] - (i - p)).unwrap_or(usize::MAX);
    let mut total = 0u64;
    let mut try_vertex = |c: usize, phi: &mut Vec<usize>| -> Result<()> {
        if c < lo || c > hi {
            return Ok(());
        }
        phi[p] = c;
        let ok = plan.checks[p].iter().all(|&gi| {
            let (s, t, mult) = plan.groups[gi];
            g.multiplicity(phi[s], phi[t]) >= mult
        });
        if ok {
            let sub = extend(g, in_nb, plan, step + 1, phi)?;
            total = total.checked_add(sub).ok_or(Error::Overflow("ordered census"))?;
        }
        phi[p] = 0;
        Ok(())
    };
    if p_is_target {
        let row = g.targets_of(phi[q]);
        for (j, &c) in row.iter().enumerate() {
            if !row[..j].contains(&c) {
                try_vertex(c as usize, phi)?;
            }
        }
    } else {
        for &c in &in_nb[phi[q]] {
            try_vertex(c as usize, phi)?;
        }
    }
    Ok(total)
}

/// Definitional count: every increasing vertex tuple, every label per edge.
pub fn brute_force_count(g: GraphView<'_>, h: &OrderedSubgraph) -> Result<u64> {
    if g.t() > MAX_BRUTE_T {
        return Err(Error::SizeLimit { what: "brute-force graph size", got: g.t(), limit: MAX_BRUTE_T });
    }
    if h.k() > MAX_BRUTE_VERTICES {
        return Err(Error::SizeLimit { what: "brute-force subgraph vertices", got: h.k(), limit: MAX_BRUTE_VERTICES });
    }
    let (k, m, t) = (h.k(), g.m(), g.t());
    let edges = h.edges();
    let mut count = 0u64;
    let mut phi = vec![0usize; k + 1];
    fn tuples(i: usize, from: usize, k: usize, t: usize, phi: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if i > k {
            f(phi);
            return;
        }
        for v in from..=t {
            phi[i] = v;
            tuples(i + 1, v + 1, k, t, phi, f);
        }
    }
    tuples(1, 1, k, t, &mut phi, &mut |phi| {
        let mut labels = vec![0usize; edges.len()];
        'assign: loop {
            let fits = edges.iter().zip(&labels).enumerate().all(|(e, (&(s, tg), &j))| {
                let v = phi[s];
                v >= 2
                    && g.targets_of(v)[j] as usize == phi[tg]
                    && edges[..e].iter().zip(&labels).all(|(&(s2, _), &j2)| phi[s2] != v || j2 != j)
            });
            if fits {
                count += 1;
            }
            for slot in labels.iter_mut() {
                *slot += 1;
                if *slot < m {
                    continue 'assign;
                }
                *slot = 0;
            }
            break;
        }
    });
    Ok(count)
}
