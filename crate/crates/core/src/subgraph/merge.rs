use std::collections::BTreeMap;

use super::{CanonicalForm, Edge, OrderedSubgraph, UnorderedDigraph};
use crate::error::{Error, Result};

/// Largest `k` accepted by [`merge_copies`].
pub const MAX_MERGE_VERTICES: usize = 6;

/// All isomorphism-distinct acyclic unions of two copies of `h`'s underlying
/// digraph that share at least one edge without coinciding.
///
/// A union is described by a partial injective identification of the second
/// copy's vertices with the first copy's, plus a non-empty set of shared
/// edges whose endpoints are identified. Edges of the second copy that are
/// not shared are kept, so two distinct edges between the same endpoints
/// become a parallel pair. Unions containing a directed cycle cannot occur in
/// the model and are dropped. Results are ordered by canonical form.
pub fn merge_copies(h: &OrderedSubgraph) -> Result<Vec<UnorderedDigraph>> {
    let k = h.k();
    if k > MAX_MERGE_VERTICES {
        return Err(Error::SizeLimit { what: "merged subgraph vertices", got: k, limit: MAX_MERGE_VERTICES });
    }
    let edges = h.edges();
    let mut found: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
    let mut sigma = vec![None; k + 1];
    let mut taken = vec![false; k + 1];
    assign(1, k, edges, &mut sigma, &mut taken, &mut found);
    Ok(found.into_keys().map(|c| UnorderedDigraph { k: c.k(), edges: c.edges() }).collect())
}

fn assign(
    v: usize,
    k: usize,
    edges: &[Edge],
    sigma: &mut Vec<Option<usize>>,
    taken: &mut Vec<bool>,
    found: &mut BTreeMap<CanonicalForm, ()>,
) {
    if v > k {
        share(edges, sigma, k, found);
        return;
    }
    sigma[v] = None;
    assign(v + 1, k, edges, sigma, taken, found);
    for a in 1..=k {
        if !taken[a] {
            taken[a] = true;
            sigma[v] = Some(a);
            assign(v + 1, k, edges, sigma, taken, found);
            taken[a] = false;
        }
    }
    sigma[v] = None;
}

fn share(edges: &[Edge], sigma: &[Option<usize>], k: usize, found: &mut BTreeMap<CanonicalForm, ()>) {
    // candidates[e] = first-copy edges that second-copy edge e could coincide with
    let candidates: Vec<Vec<usize>> = edges
        .iter()
        .map(|&(s, t)| match (sigma[s], sigma[t]) {
            (Some(a), Some(b)) => (0..edges.len()).filter(|&i| edges[i] == (a, b)).collect(),
            _ => Vec::new(),
        })
        .collect();
    if candidates.iter().all(Vec::is_empty) {
        return;
    }
    let mut fresh = vec![0usize; k + 1];
    let mut next = k;
    for v in 1..=k {
        if sigma[v].is_none() {
            next += 1;
            fresh[v] = next;
        }
    }
    let total = next;
    let image = |v: usize| sigma[v].unwrap_or(fresh[v]);

    let mut shared = vec![false; edges.len()];
    let mut used = vec![false; edges.len()];
    fn rec(
        e: usize,
        candidates: &[Vec<usize>],
        shared: &mut Vec<bool>,
        used: &mut Vec<bool>,
        emit: &mut dyn FnMut(&[bool]),
    ) {
        if e == candidates.len() {
            emit(shared);
            return;
        }
        rec(e + 1, candidates, shared, used, emit);
        for &i in &candidates[e] {
            if !used[i] {
                used[i] = true;
                shared[e] = true;
                rec(e + 1, candidates, shared, used, emit);
                shared[e] = false;
                used[i] = false;
            }
        }
    }
    let mut emit = |shared: &[bool]| {
        let n_shared = shared.iter().filter(|&&s| s).count();
        if n_shared == 0 || n_shared == edges.len() {
            return;
        }
        let mut union: Vec<Edge> = edges.to_vec();
        union.extend(edges.iter().zip(shared).filter(|(_, &s)| !s).map(|(&(s, t), _)| (image(s), image(t))));
        if is_acyclic(total, &union) {
            found.insert(CanonicalForm::of(total, &union), ());
        }
    };
    rec(0, &candidates, &mut shared, &mut used, &mut emit);
}

fn is_acyclic(k: usize, edges: &[Edge]) -> bool {
    let mut indeg = vec![0usize; k + 1];
    let mut out = vec![Vec::new(); k + 1];
    for &(s, t) in edges {
        out[s].push(t);
        indeg[t] += 1;
    }
    let mut stack: Vec<usize> = (1..=k).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == k
}
