use super::Edge;

/// Isomorphism-invariant form of a directed multigraph.
///
/// Two digraphs with the same vertex count are isomorphic iff their
/// canonical forms are equal. The form is the lexicographically smallest
/// multiplicity matrix over all relabelings that respect a degree-based
/// vertex partition; the partition is itself isomorphism-invariant, so
/// restricting the search to it keeps the minimum canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    k: usize,
    matrix: Vec<u16>,
}

impl CanonicalForm {
    pub fn of(k: usize, edges: &[Edge]) -> Self {
        let mut adj = vec![0u16; k * k];
        for &(s, t) in edges {
            adj[(s - 1) * k + (t - 1)] += 1;
        }
        let cells = refined_cells(k, &adj);
        let mut best: Option<Vec<u16>> = None;
        let mut order = Vec::with_capacity(k);
        search(k, &adj, &cells, &mut order, &mut vec![false; k], &mut best);
        CanonicalForm { k, matrix: best.unwrap_or_default() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Edges of the canonical relabeling, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in 0..self.k {
                for _ in 0..self.matrix[i * self.k + j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }
}

/// Vertex cells ordered by invariant key: degree pair, then one round of
/// neighbour-key refinement.
fn refined_cells(k: usize, adj: &[u16]) -> Vec<Vec<usize>> {
    let base: Vec<(u32, u32)> = (0..k)
        .map(|v| {
            let out: u32 = (0..k).map(|w| adj[v * k + w] as u32).sum();
            let inn: u32 = (0..k).map(|w| adj[w * k + v] as u32).sum();
            (out, inn)
        })
        .collect();
    let keys: Vec<_> = (0..k)
        .map(|v| {
            let mut outs: Vec<_> = (0..k).filter(|&w| adj[v * k + w] > 0).map(|w| (adj[v * k + w], base[w])).collect();
            let mut ins: Vec<_> = (0..k).filter(|&w| adj[w * k + v] > 0).map(|w| (adj[w * k + v], base[w])).collect();
            outs.sort_unstable();
            ins.sort_unstable();
            (base[v], outs, ins)
        })
        .collect();
    let mut vs: Vec<usize> = (0..k).collect();
    vs.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in vs {
        match cells.last_mut() {
            Some(cell) if keys[cell[0]] == keys[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    cells
}

fn search(
    k: usize,
    adj: &[u16],
    cells: &[Vec<usize>],
    order: &mut Vec<usize>,
    used: &mut Vec<bool>,
    best: &mut Option<Vec<u16>>,
) {
    if order.len() == k {
        let m: Vec<u16> =
            (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| adj[order[i] * k + order[j]]).collect();
        if best.as_ref().is_none_or(|b| m < *b) {
            *best = Some(m);
        }
        return;
    }
    // advance to the cell containing the next free slot
    let mut filled = 0;
    let mut ci = 0;
    while filled + cells[ci].len() <= order.len() {
        filled += cells[ci].len();
        ci += 1;
    }
    for &v in &cells[ci] {
        if !used[v] {
            used[v] = true;
            order.push(v);
            search(k, adj, cells, order, used, best);
            order.pop();
            used[v] = false;
        }
    }
}
