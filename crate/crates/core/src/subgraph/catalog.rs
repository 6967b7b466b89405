use std::collections::BTreeSet;

use super::{CanonicalForm, Edge, UnorderedDigraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    /// `k<k>-<index>`, index in canonical-form order starting at 1.
    pub id: String,
    pub graph: UnorderedDigraph,
}

/// Every connected simple acyclic digraph on `k` vertices up to isomorphism,
/// generated by orienting or omitting each vertex pair.
pub fn catalog(k: usize) -> Result<Vec<CatalogEntry>> {
    if !(2..=5).contains(&k) {
        return Err(Error::SizeLimit { what: "catalog vertices", got: k, limit: 5 });
    }
    let pairs: Vec<(usize, usize)> = (1..=k).flat_map(|a| ((a + 1)..=k).map(move |b| (a, b))).collect();
    let mut seen = BTreeSet::new();
    let combos = 3usize.pow(pairs.len() as u32);
    for mut code in 0..combos {
        let mut edges: Vec<Edge> = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            match code % 3 {
                1 => edges.push((a, b)),
                2 => edges.push((b, a)),
                _ => {}
            }
            code /= 3;
        }
        let Ok(g) = UnorderedDigraph::new(k, edges) else {
            continue;
        };
        if g.is_acyclic() {
            seen.insert(CanonicalForm::of(k, g.edges()));
        }
    }
    Ok(seen
        .into_iter()
        .enumerate()
        .map(|(i, c)| CatalogEntry {
            id: format!("k{k}-{:02}", i + 1),
            graph: UnorderedDigraph { k, edges: c.edges() },
        })
        .collect())
}
