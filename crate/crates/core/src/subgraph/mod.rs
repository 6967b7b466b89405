//! Small directed subgraphs: ordered (vertex ids are arrival positions,
//! 1 = oldest) and unordered (ids carry no age).
//!
//! Edges point from the younger endpoint to the older one, like the edges of
//! the model itself. Parallel edges are repeated pairs.

mod canon;
mod catalog;
mod merge;

pub use canon::CanonicalForm;
pub use catalog::{catalog, CatalogEntry};
pub use merge::merge_copies;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `k` for which orderings are enumerated.
pub const MAX_ORDERING_VERTICES: usize = 10;

/// Directed edge `(source, target)` over 1-based vertex ids.
pub type Edge = (usize, usize);

fn validate(k: usize, edges: &[Edge]) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidSubgraph("no vertices".into()));
    }
    if edges.is_empty() {
        return Err(Error::InvalidSubgraph("no edges".into()));
    }
    for &(s, t) in edges {
        if s < 1 || s > k || t < 1 || t > k {
            return Err(Error::InvalidSubgraph(format!("edge {s}>{t} outside 1..={k}")));
        }
        if s == t {
            return Err(Error::InvalidSubgraph(format!("self-loop at {s}")));
        }
    }
    // connectivity of the underlying undirected multigraph
    let mut parent: Vec<usize> = (0..=k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(s, t) in edges {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        parent[a] = b;
    }
    let root = find(&mut parent, 1);
    if (2..=k).any(|v| find(&mut parent, v) != root) {
        return Err(Error::InvalidSubgraph("underlying graph is disconnected".into()));
    }
    Ok(())
}

fn degrees(k: usize, edges: &[Edge]) -> (Vec<usize>, Vec<usize>) {
    let mut din = vec![0; k + 1];
    let mut dout = vec![0; k + 1];
    for &(s, t) in edges {
        dout[s] += 1;
        din[t] += 1;
    }
    (din, dout)
}

/// A connected directed graph whose vertex ids `1..=k` are arrival positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSubgraph", into = "RawSubgraph")]
pub struct OrderedSubgraph {
    k: usize,
    edges: Vec<Edge>,
}

/// A connected directed graph with arbitrary vertex ids `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSubgraph", into = "RawSubgraph")]
pub struct UnorderedDigraph {
    k: usize,
    edges: Vec<Edge>,
}

/// JSON form `{"k": int, "edges": [[s, t], ...]}`.
#[derive(Serialize, Deserialize)]
struct RawSubgraph {
    k: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawSubgraph> for OrderedSubgraph {
    type Error = Error;
    fn try_from(raw: RawSubgraph) -> Result<Self> {
        OrderedSubgraph::new(raw.k, raw.edges.iter().map(|e| (e[0], e[1])).collect())
    }
}

impl TryFrom<RawSubgraph> for UnorderedDigraph {
    type Error = Error;
    fn try_from(raw: RawSubgraph) -> Result<Self> {
        UnorderedDigraph::new(raw.k, raw.edges.iter().map(|e| (e[0], e[1])).collect())
    }
}

impl From<OrderedSubgraph> for RawSubgraph {
    fn from(h: OrderedSubgraph) -> Self {
        RawSubgraph { k: h.k, edges: h.edges.iter().map(|&(s, t)| [s, t]).collect() }
    }
}

impl From<UnorderedDigraph> for RawSubgraph {
    fn from(g: UnorderedDigraph) -> Self {
        RawSubgraph { k: g.k, edges: g.edges.iter().map(|&(s, t)| [s, t]).collect() }
    }
}

/// Parses either the JSON form or the inline form `"2>1,3>1,3>2"`.
/// Inline input takes `k` as the largest id mentioned.
fn parse_text(text: &str) -> Result<(usize, Vec<Edge>)> {
    let text = text.trim();
    if text.starts_with('{') {
        let raw: RawSubgraph = serde_json::from_str(text).map_err(|e| Error::Parse(format!("subgraph JSON: {e}")))?;
        return Ok((raw.k, raw.edges.iter().map(|e| (e[0], e[1])).collect()));
    }
    let mut edges = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (s, t) =
            item.split_once('>').ok_or_else(|| Error::Parse(format!("edge '{item}' is not of the form s>t")))?;
        let s: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad vertex in '{item}'")))?;
        let t: usize = t.trim().parse().map_err(|_| Error::Parse(format!("bad vertex in '{item}'")))?;
        edges.push((s, t));
    }
    let k = edges.iter().map(|&(s, t)| s.max(t)).max().unwrap_or(0);
    Ok((k, edges))
}

fn inline_string(edges: &[Edge]) -> String {
    edges.iter().map(|(s, t)| format!("{s}>{t}")).collect::<Vec<_>>().join(",")
}

impl OrderedSubgraph {
    pub fn new(k: usize, edges: Vec<Edge>) -> Result<Self> {
        validate(k, &edges)?;
        Ok(OrderedSubgraph { k, edges })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (k, edges) = parse_text(text)?;
        Self::new(k, edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// In-degrees indexed by position (slot 0 unused), counting multiplicity.
    pub fn in_degrees(&self) -> Vec<usize> {
        degrees(self.k, &self.edges).0
    }

    /// Out-degrees indexed by position (slot 0 unused), counting multiplicity.
    pub fn out_degrees(&self) -> Vec<usize> {
        degrees(self.k, &self.edges).1
    }

    /// Every edge goes from a younger to an older position and every
    /// out-degree is at most `m`.
    pub fn is_attainable(&self, m: u32) -> bool {
        self.edges.iter().all(|&(s, t)| s > t) && self.out_degrees().iter().all(|&d| d <= m as usize)
    }

    pub fn to_unordered(&self) -> UnorderedDigraph {
        UnorderedDigraph { k: self.k, edges: self.edges.clone() }
    }

    pub fn to_inline(&self) -> String {
        inline_string(&self.edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("subgraph serializes")
    }
}

impl std::fmt::Display for OrderedSubgraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_inline())
    }
}

impl UnorderedDigraph {
    pub fn new(k: usize, edges: Vec<Edge>) -> Result<Self> {
        validate(k, &edges)?;
        Ok(UnorderedDigraph { k, edges })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (k, edges) = parse_text(text)?;
        Self::new(k, edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        degrees(self.k, &self.edges).1
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_orders(1).len() == 1
    }

    /// All orderings `π` under which the graph is attainable with `m` edges
    /// per vertex, as ordered subgraphs. `perm[v-1]` of the result's source
    /// order maps vertex `v` to its position.
    pub fn attainable_orderings(&self, m: u32) -> Result<Vec<OrderedSubgraph>> {
        Ok(self.attainable_positions(m)?.into_iter().map(|pos| self.relabel(&pos)).collect())
    }

    /// Same as [`attainable_orderings`](Self::attainable_orderings) but
    /// returns the position vectors (`pos[v]` for `v in 1..=k`, slot 0 unused).
    pub fn attainable_positions(&self, m: u32) -> Result<Vec<Vec<usize>>> {
        if self.k > MAX_ORDERING_VERTICES {
            return Err(Error::SizeLimit { what: "subgraph vertices", got: self.k, limit: MAX_ORDERING_VERTICES });
        }
        if self.out_degrees().iter().any(|&d| d > m as usize) {
            return Ok(Vec::new());
        }
        Ok(self.topological_orders(usize::MAX))
    }

    /// Relabels vertex `v` as `pos[v]`.
    pub fn relabel(&self, pos: &[usize]) -> OrderedSubgraph {
        OrderedSubgraph { k: self.k, edges: self.edges.iter().map(|&(s, t)| (pos[s], pos[t])).collect() }
    }

    /// Linear extensions with every edge source placed after its target,
    /// generated oldest-first; stops after `limit` results.
    fn topological_orders(&self, limit: usize) -> Vec<Vec<usize>> {
        let k = self.k;
        let mut out_nb = vec![Vec::new(); k + 1];
        for &(s, t) in &self.edges {
            out_nb[s].push(t);
        }
        let mut pos = vec![0usize; k + 1];
        let mut results = Vec::new();
        fn rec(
            next: usize,
            k: usize,
            out_nb: &[Vec<usize>],
            pos: &mut Vec<usize>,
            results: &mut Vec<Vec<usize>>,
            limit: usize,
        ) {
            if results.len() >= limit {
                return;
            }
            if next > k {
                results.push(pos.clone());
                return;
            }
            for v in 1..=k {
                if pos[v] == 0 && out_nb[v].iter().all(|&t| pos[t] != 0) {
                    pos[v] = next;
                    rec(next + 1, k, out_nb, pos, results, limit);
                    pos[v] = 0;
                }
            }
        }
        rec(1, k, &out_nb, &mut pos, &mut results, limit);
        results
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        CanonicalForm::of(self.k, &self.edges)
    }

    pub fn is_isomorphic(&self, other: &UnorderedDigraph) -> bool {
        self.k == other.k && self.edges.len() == other.edges.len() && self.canonical_form() == other.canonical_form()
    }

    pub fn to_inline(&self) -> String {
        inline_string(&self.edges)
    }
}

impl std::fmt::Display for UnorderedDigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_inline())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ordered(s: &str) -> OrderedSubgraph {
        OrderedSubgraph::parse(s).unwrap()
    }

    #[test]
    fn attainability_examples() {
        assert!(ordered("2>1,3>1,3>2").is_attainable(2));
        assert!(!ordered("1>2").is_attainable(5));
        assert!(!ordered("3>1,3>2").is_attainable(1));
        assert!(ordered("3>1,3>2").is_attainable(2));
        // parallel edges count toward the out-degree
        assert!(!ordered("2>1,2>1,2>1").is_attainable(2));
    }

    #[test]
    fn construction_errors() {
        assert!(OrderedSubgraph::new(3, vec![(2, 1)]).is_err());
        assert!(OrderedSubgraph::new(2, vec![]).is_err());
        assert!(OrderedSubgraph::new(2, vec![(2, 2)]).is_err());
        assert!(OrderedSubgraph::new(2, vec![(3, 1)]).is_err());
        assert!(UnorderedDigraph::parse("1>2,3>4").is_err());
        assert!(UnorderedDigraph::parse("1-2").is_err());
    }

    #[test]
    fn json_and_inline_agree() {
        let a = ordered("2>1,3>1,3>2");
        let b = OrderedSubgraph::parse(r#"{"k": 3, "edges": [[2,1],[3,1],[3,2]]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), r#"{"k":3,"edges":[[2,1],[3,1],[3,2]]}"#);
        assert_eq!(a.to_string(), "2>1,3>1,3>2");
    }

    #[test]
    fn triangle_has_one_ordering() {
        // a->b, c->b, a->c with a=1, b=2, c=3
        let g = UnorderedDigraph::parse("1>2,3>2,1>3").unwrap();
        let ords = g.attainable_orderings(2).unwrap();
        assert_eq!(ords.len(), 1);
        assert_eq!(ords[0].edges(), &[(3, 1), (2, 1), (3, 2)]);
    }

    #[test]
    fn two_path_has_one_ordering() {
        // a->b, b->c: c oldest, b middle, a youngest
        let g = UnorderedDigraph::parse("1>2,2>3").unwrap();
        let pos = g.attainable_positions(1).unwrap();
        assert_eq!(pos, vec![vec![0, 3, 2, 1]]);
    }

    #[test]
    fn out_degree_blocks_orderings() {
        let g = UnorderedDigraph::parse("1>2,1>3").unwrap();
        assert!(g.attainable_orderings(1).unwrap().is_empty());
        assert_eq!(g.attainable_orderings(2).unwrap().len(), 2);
    }

    #[test]
    fn size_guard() {
        let edges: Vec<Edge> = (2..=11).map(|v| (v, 1)).collect();
        let g = UnorderedDigraph::new(11, edges).unwrap();
        assert!(matches!(g.attainable_orderings(20), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn cycles_have_no_orderings() {
        let g = UnorderedDigraph::parse("1>2,2>3,3>1").unwrap();
        assert!(!g.is_acyclic());
        assert!(g.attainable_orderings(3).unwrap().is_empty());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn permutations(k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut p: Vec<usize> = (1..=k).collect();
            fn heap(n: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if n <= 1 {
                    out.push(p.clone());
                    return;
                }
                for i in 0..n {
                    heap(n - 1, p, out);
                    if n % 2 == 0 {
                        p.swap(i, n - 1)
                    } else {
                        p.swap(0, n - 1)
                    }
                }
            }
            heap(k, &mut p, &mut out);
            out
        }

        fn digraph_strategy() -> impl Strategy<Value = UnorderedDigraph> {
            (2usize..=5)
                .prop_flat_map(|k| {
                    let pairs: Vec<(usize, usize)> = (1..=k).flat_map(|a| ((a + 1)..=k).map(move |b| (a, b))).collect();
                    let n = pairs.len();
                    (Just(k), Just(pairs), prop::collection::vec(0u8..4, n))
                })
                .prop_filter_map("connected", |(k, pairs, dirs)| {
                    let mut edges = Vec::new();
                    for ((a, b), d) in pairs.into_iter().zip(dirs) {
                        match d {
                            1 => edges.push((a, b)),
                            2 => edges.push((b, a)),
                            3 => {
                                edges.push((b, a));
                                edges.push((b, a));
                            }
                            _ => {}
                        }
                    }
                    UnorderedDigraph::new(k, edges).ok()
                })
        }

        proptest! {
            #[test]
            fn orderings_match_exhaustive_permutations(g in digraph_strategy(), m in 1u32..4) {
                let found: std::collections::HashSet<Vec<(usize, usize)>> = g
                    .attainable_orderings(m).unwrap()
                    .into_iter().map(|h| h.edges().to_vec()).collect();
                let mut expected = std::collections::HashSet::new();
                for perm in permutations(g.k()) {
                    let mut pos = vec![0];
                    pos.extend(perm);
                    let h = g.relabel(&pos);
                    if h.is_attainable(m) {
                        expected.insert(h.edges().to_vec());
                    }
                }
                prop_assert_eq!(found, expected);
            }

            #[test]
            fn attainability_survives_relabeling_parallel_copies(g in digraph_strategy(), m in 1u32..4) {
                for h in g.attainable_orderings(m).unwrap() {
                    prop_assert!(h.is_attainable(m));
                    let mut rev = h.edges().to_vec();
                    rev.reverse();
                    prop_assert!(OrderedSubgraph::new(h.k(), rev).unwrap().is_attainable(m));
                }
            }
        }
    }
}
