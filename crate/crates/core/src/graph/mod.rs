//! Preferential attachment graphs: the sequential construction, the Pólya
//! urn construction, a text edge-list format and a few diagnostics.
//!
//! Vertices are numbered `1..=t` in arrival order. Every vertex `v >= 2`
//! sends exactly `m` edges to older vertices; edge `j` of `v` is stored in
//! slot `j - 1` of `v`'s target array, so labels are positional.

mod diagnostics;
mod io;
mod sequential;
mod urn;

pub use diagnostics::{hill_tail_exponent, DegreeSummary};
pub use io::{read_edge_list, write_edge_list};
pub use sequential::{generate_sequential, generate_sequential_with, AttachmentSampler};
pub use urn::{generate_urn, interval_lookup, sample_beta, UrnRealization};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;

/// How a graph was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Sequential,
    Urn,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Sequential => "sequential",
            Provenance::Urn => "urn",
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sequential" => Ok(Provenance::Sequential),
            "urn" => Ok(Provenance::Urn),
            other => Err(Error::Parse(format!("unknown provenance '{other}'"))),
        }
    }
}

/// A preferential attachment multigraph on vertices `1..=t`.
#[derive(Debug, Clone, PartialEq)]
pub struct PAGraph {
    t: usize,
    params: ModelParams,
    /// Row-major `(t-1) x m`: row `v-2` holds the targets of vertex `v`.
    targets: Vec<u32>,
    provenance: Provenance,
}

impl PAGraph {
    /// Builds a graph from explicit target rows, checking every structural invariant.
    pub fn from_targets(params: ModelParams, t: usize, targets: Vec<u32>, provenance: Provenance) -> Result<Self> {
        if t < 2 {
            return Err(Error::GraphTooSmall(t, 2));
        }
        let m = params.m() as usize;
        if targets.len() != m * (t - 1) {
            return Err(Error::InvalidParams(format!(
                "expected {} targets for t = {t}, m = {m}, got {}",
                m * (t - 1),
                targets.len()
            )));
        }
        for (row, chunk) in targets.chunks(m).enumerate() {
            let v = row + 2;
            for &u in chunk {
                if u < 1 || u as usize >= v {
                    return Err(Error::OutOfRange(format!("vertex {v} attaches to {u}, must be in [1, {}]", v - 1)));
                }
            }
        }
        Ok(PAGraph { t, params, targets, provenance })
    }

    pub(crate) fn from_parts_unchecked(
        params: ModelParams,
        t: usize,
        targets: Vec<u32>,
        provenance: Provenance,
    ) -> Self {
        debug_assert_eq!(targets.len(), params.m() as usize * (t - 1));
        PAGraph { t, params, targets, provenance }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.params.m() as usize
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Targets of vertex `v` (`2 <= v <= t`); slot `j-1` is the `j`-th edge.
    pub fn targets_of(&self, v: usize) -> &[u32] {
        self.view().targets_of(v)
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn view(&self) -> GraphView<'_> {
        GraphView { t: self.t, m: self.m(), targets: &self.targets }
    }

    /// The graph as it was when vertex `t` arrived (exact, since growth only appends).
    pub fn prefix(&self, t: usize) -> Result<GraphView<'_>> {
        if t < 2 || t > self.t {
            return Err(Error::OutOfRange(format!("prefix size {t} not in [2, {}]", self.t)));
        }
        Ok(GraphView { t, m: self.m(), targets: &self.targets[..self.m() * (t - 1)] })
    }

    /// `D_v(t)`: out-degree (m for `v >= 2`, 0 for vertex 1) plus in-degree.
    /// Index 0 holds vertex 1.
    pub fn degree_sequence(&self) -> Vec<u64> {
        self.view().degree_sequence()
    }
}

/// Borrowed, read-only view of a graph (possibly a prefix of a larger one).
#[derive(Debug, Clone, Copy)]
pub struct GraphView<'a> {
    t: usize,
    m: usize,
    targets: &'a [u32],
}

impl<'a> GraphView<'a> {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn targets_of(&self, v: usize) -> &'a [u32] {
        assert!(v >= 2 && v <= self.t, "vertex {v} has no out-edges in a graph of size {}", self.t);
        let start = (v - 2) * self.m;
        &self.targets[start..start + self.m]
    }

    /// Number of labeled edges from `v` to `u`.
    pub fn multiplicity(&self, v: usize, u: usize) -> usize {
        if v < 2 || v > self.t {
            return 0;
        }
        self.targets_of(v).iter().filter(|&&x| x as usize == u).count()
    }

    pub fn degree_sequence(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.t];
        for v in 2..=self.t {
            deg[v - 1] += self.m as u64;
            for &u in self.targets_of(v) {
                deg[u as usize - 1] += 1;
            }
        }
        deg
    }

    /// In-adjacency: for every vertex, the distinct younger vertices sending at least one edge to it.
    pub fn in_neighbours(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.t + 1];
        for v in 2..=self.t {
            let row = self.targets_of(v);
            for (j, &u) in row.iter().enumerate() {
                if !row[..j].contains(&u) {
                    adj[u as usize].push(v as u32);
                }
            }
        }
        adj
    }
}

impl<'a> From<&'a PAGraph> for GraphView<'a> {
    fn from(g: &'a PAGraph) -> Self {
        g.view()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_sequence_examples() {
        let p = ModelParams::new(3, 0.0).unwrap();
        let g = PAGraph::from_targets(p, 2, vec![1, 1, 1], Provenance::Sequential).unwrap();
        assert_eq!(g.degree_sequence(), vec![3, 3]);

        let p = ModelParams::new(1, 0.0).unwrap();
        let g = PAGraph::from_targets(p, 3, vec![1, 1], Provenance::Sequential).unwrap();
        assert_eq!(g.degree_sequence(), vec![2, 1, 1]);
    }

    #[test]
    fn from_targets_rejects_bad_rows() {
        let p = ModelParams::new(1, 0.0).unwrap();
        assert!(PAGraph::from_targets(p, 3, vec![1, 3], Provenance::Urn).is_err());
        assert!(PAGraph::from_targets(p, 3, vec![1], Provenance::Urn).is_err());
        assert!(PAGraph::from_targets(p, 1, vec![], Provenance::Urn).is_err());
        assert!(PAGraph::from_targets(p, 3, vec![0, 1], Provenance::Urn).is_err());
    }

    #[test]
    fn prefix_is_truncation() {
        let p = ModelParams::new(2, 0.0).unwrap();
        let g = PAGraph::from_targets(p, 4, vec![1, 1, 1, 2, 3, 3], Provenance::Sequential).unwrap();
        let pre = g.prefix(3).unwrap();
        assert_eq!(pre.t(), 3);
        assert_eq!(pre.targets_of(3), &[1, 2]);
        assert_eq!(pre.degree_sequence(), vec![3, 3, 2]);
        assert_eq!(g.view().multiplicity(4, 3), 2);
        assert!(g.prefix(5).is_err());
    }
}
