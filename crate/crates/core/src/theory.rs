//! Exact finite-`t` expectations from Beta moments of the urn variables, and
//! the leading-order triangle asymptotics.
//!
//! Given the urn strengths `ψ`, labeled edges are independent and
//! `P(v's j-th edge hits u | ψ) = ψ_u S_u / S_{v-1}`, a product of `ψ_u` and
//! the factors `1 − ψ_h` for `u < h < v`. Taking expectations over the
//! independent `ψ_h ~ Beta(m+δ, m(2h−3)+(h−1)δ)` turns any finite edge set
//! into a product of mixed Beta moments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::subgraph::OrderedSubgraph;

/// `E[X^a (1−X)^b]` for `X ~ Beta(alpha, beta)`, accumulated in log space.
pub fn beta_moment(alpha: f64, beta: f64, a: u32, b: u32) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidParams(format!("Beta({alpha}, {beta}) needs positive parameters")));
    }
    Ok(ln_beta_moment(alpha, beta, a, b).exp())
}

fn ln_beta_moment(alpha: f64, beta: f64, a: u32, b: u32) -> f64 {
    let num: f64 =
        (0..a).map(|i| (alpha + i as f64).ln()).sum::<f64>() + (0..b).map(|j| (beta + j as f64).ln()).sum::<f64>();
    let den: f64 = (0..a + b).map(|r| (alpha + beta + r as f64).ln()).sum();
    num - den
}

/// Second Beta parameter of `ψ_k`, `k ≥ 2`.
pub fn psi_beta(params: &ModelParams, k: usize) -> f64 {
    let m = params.m() as f64;
    m * (2.0 * k as f64 - 3.0) + (k as f64 - 1.0) * params.delta()
}

/// One labeled edge: sender `v`'s `j`-th edge lands on receiver `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledEdge {
    pub u: usize,
    pub v: usize,
    pub j: usize,
}

/// A set of distinct labeled edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeSet {
    edges: Vec<LabeledEdge>,
}

#[derive(Deserialize)]
struct RawEdgeSet {
    edges: Vec<[usize; 3]>,
}

impl EdgeSet {
    pub fn new(edges: Vec<LabeledEdge>, m: u32) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidEdgeSet("no edges".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.v < 2 || e.u < 1 || e.u >= e.v {
                return Err(Error::InvalidEdgeSet(format!(
                    "edge {}>{} must go from a younger to an older vertex",
                    e.v, e.u
                )));
            }
            if e.j < 1 || e.j > m as usize {
                return Err(Error::InvalidEdgeSet(format!("label {} outside 1..={m}", e.j)));
            }
            if edges[..i].iter().any(|f| f.v == e.v && f.j == e.j) {
                return Err(Error::InvalidEdgeSet(format!("labeled edge ({}, {}) used twice", e.v, e.j)));
            }
        }
        Ok(EdgeSet { edges })
    }

    /// Parses JSON `{"edges": [[u, v, j], ...]}` or inline `"3>1:1,3>2:2"`
    /// (sender `>` receiver `:` label).
    pub fn parse(text: &str, m: u32) -> Result<Self> {
        let text = text.trim();
        let edges = if text.starts_with('{') {
            let raw: RawEdgeSet =
                serde_json::from_str(text).map_err(|e| Error::Parse(format!("edge set JSON: {e}")))?;
            raw.edges.iter().map(|&[u, v, j]| LabeledEdge { u, v, j }).collect()
        } else {
            text.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|item| {
                    let bad = || Error::Parse(format!("edge '{item}' is not of the form v>u:j"));
                    let (v, rest) = item.split_once('>').ok_or_else(bad)?;
                    let (u, j) = rest.split_once(':').ok_or_else(bad)?;
                    Ok(LabeledEdge {
                        u: u.trim().parse().map_err(|_| bad())?,
                        v: v.trim().parse().map_err(|_| bad())?,
                        j: j.trim().parse().map_err(|_| bad())?,
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        EdgeSet::new(edges, m)
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn max_vertex(&self) -> usize {
        self.edges.iter().map(|e| e.v).max().unwrap_or(0)
    }

    /// Exponents of `ψ_v` and `1 − ψ_v` in the conditional probability.
    pub fn moment_profile(&self) -> MomentProfile {
        let n = self.max_vertex();
        let mut a = vec![0u32; n + 1];
        let mut diff = vec![0i64; n + 2];
        for e in &self.edges {
            a[e.u] += 1;
            // vertices strictly between receiver and sender
            diff[e.u + 1] += 1;
            diff[e.v] -= 1;
        }
        let mut b = vec![0u32; n + 1];
        let mut run = 0i64;
        for v in 1..=n {
            run += diff[v];
            b[v] = run as u32;
        }
        MomentProfile { a, b }
    }
}

/// `a[v]`, `b[v]` for `v in 1..=n` (slot 0 unused).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentProfile {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

/// Exact probability that every labeled edge of `es` is present at time `t`.
pub fn exact_embedding_probability(es: &EdgeSet, params: &ModelParams, t: usize) -> Result<f64> {
    if es.max_vertex() > t {
        return Err(Error::InvalidEdgeSet(format!("vertex {} exceeds t = {t}", es.max_vertex())));
    }
    if es.edges.iter().any(|e| e.j > params.m() as usize) {
        return Err(Error::InvalidEdgeSet(format!("label exceeds m = {}", params.m())));
    }
    let prof = es.moment_profile();
    debug_assert_eq!(prof.b[1], 0);
    let alpha = params.m() as f64 + params.delta();
    let ln_p: f64 = (2..prof.a.len())
        .filter(|&v| prof.a[v] + prof.b[v] > 0)
        .map(|v| ln_beta_moment(alpha, psi_beta(params, v), prof.a[v], prof.b[v]))
        .sum();
    Ok(ln_p.exp())
}

/// Label assignments of `h`: a falling factorial `m (m−1) ⋯` per sender.
pub fn label_multiplicity(h: &OrderedSubgraph, m: u32) -> u64 {
    h.out_degrees().iter().map(|&d| (0..d as u64).map(|i| (m as u64).saturating_sub(i)).product::<u64>()).product()
}

/// Exact expected number of labeled occurrences of `h` at time `t`, summed
/// over all increasing vertex tuples (small `t` only).
pub fn exact_expected_count(h: &OrderedSubgraph, params: &ModelParams, t: usize) -> Result<f64> {
    const LIMIT: usize = 200;
    if t > LIMIT {
        return Err(Error::SizeLimit { what: "t for tuple enumeration", got: t, limit: LIMIT });
    }
    if !h.is_attainable(params.m()) {
        return Ok(0.0);
    }
    let mult = label_multiplicity(h, params.m()) as f64;
    let k = h.k();
    let mut tuple = vec![0usize; k + 1];
    let mut total = 0.0;
    fn rec(i: usize, from: usize, k: usize, t: usize, tuple: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if i > k {
            f(tuple);
            return;
        }
        for v in from..=t {
            tuple[i] = v;
            rec(i + 1, v + 1, k, t, tuple, f);
        }
    }
    let mut err = None;
    rec(1, 1, k, t, &mut tuple, &mut |tuple| match embedding_probability_on(h, params, t, tuple) {
        Ok(p) => total += p,
        Err(e) => err = Some(e),
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(mult * total)
}

/// Probability that `h` is present on the vertex tuple (`tuple[i]` hosts
/// position `i`), for one fixed label assignment.
fn embedding_probability_on(h: &OrderedSubgraph, params: &ModelParams, t: usize, tuple: &[usize]) -> Result<f64> {
    let mut next_label = vec![1usize; h.k() + 1];
    let edges = h
        .edges()
        .iter()
        .map(|&(s, d)| {
            let j = next_label[s];
            next_label[s] += 1;
            LabeledEdge { u: tuple[d], v: tuple[s], j }
        })
        .collect();
    exact_embedding_probability(&EdgeSet::new(edges, params.m())?, params, t)
}

/// Ratios of the exact edge-set probability to `∏ u^{χ−1} v^{−χ}` over a grid
/// of vertex tuples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub evaluated: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

pub fn lemma31_bound_check(
    h: &OrderedSubgraph,
    params: &ModelParams,
    t: usize,
    tuples: &[Vec<usize>],
) -> Result<BoundReport> {
    if !h.is_attainable(params.m()) {
        return Err(Error::NotAttainable(format!("{h} with m = {}", params.m())));
    }
    let chi = params.chi();
    let mut report = BoundReport { evaluated: 0, min_ratio: f64::INFINITY, max_ratio: 0.0 };
    for tup in tuples {
        if tup.len() != h.k() || tup.windows(2).any(|w| w[0] >= w[1]) || tup[0] < 1 {
            return Err(Error::OutOfRange(format!("tuple {tup:?} is not increasing with {} entries", h.k())));
        }
        let mut hosted = vec![0];
        hosted.extend_from_slice(tup);
        let p = embedding_probability_on(h, params, t, &hosted)?;
        let scale: f64 = h
            .edges()
            .iter()
            .map(|&(s, d)| (hosted[d] as f64).powf(chi - 1.0) * (hosted[s] as f64).powf(-chi))
            .product();
        let ratio = p / scale;
        report.evaluated += 1;
        report.min_ratio = report.min_ratio.min(ratio);
        report.max_ratio = report.max_ratio.max(ratio);
    }
    Ok(report)
}

fn require_triangles(params: &ModelParams) -> Result<()> {
    if params.m() < 2 {
        return Err(Error::InvalidParams("triangles need m >= 2".into()));
    }
    Ok(())
}

/// `ln E[(1 − ψ_k)²]`.
fn ln_q(alpha: f64, beta: f64) -> f64 {
    -(alpha / beta).ln_1p() - (alpha / (beta + 1.0)).ln_1p()
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// `E[Δ_t]`, the exact expected number of labeled triangles, in `O(t)`.
///
/// With `q_k = E[(1−ψ_k)²]`, `P(n) = ∏_{k=2}^n q_k`, `a_u = E[ψ_u²]` and
/// `r_v = E[ψ_v(1−ψ_v)]/q_v`, the triple sum is
/// `m²(m−1) Σ_u a_u/P(u) Σ_{v>u} r_v Σ_{w>v} P(w−1)`, evaluated with suffix
/// sums. `ψ_1 ≡ 1` gives `a_1 = 1`.
pub fn exact_triangle_expectation(params: &ModelParams, t: usize) -> Result<f64> {
    require_triangles(params)?;
    if t < 3 {
        return Err(Error::GraphTooSmall(t, 3));
    }
    let m = params.m() as f64;
    let alpha = m + params.delta();

    // ln P(n) for n in 1..=t
    let mut ln_p = vec![0.0f64; t + 1];
    let mut acc = Compensated::default();
    for k in 2..=t {
        acc.add(ln_q(alpha, psi_beta(params, k)));
        ln_p[k] = acc.value();
    }
    // w_sum = Σ_{n=v}^{t−1} P(n), v_sum = Σ_{v'=v}^{t−1} r_{v'} W(v')
    let mut w_sum = Compensated::default();
    let mut v_sum = Compensated::default();
    let mut total = Compensated::default();
    for v in (2..t).rev() {
        w_sum.add(ln_p[v].exp());
        let beta = psi_beta(params, v);
        v_sum.add(alpha / (beta + 1.0) * w_sum.value());
        // u = v − 1 now sees every v' > u
        let u = v - 1;
        let a_u = if u == 1 {
            1.0
        } else {
            let b = psi_beta(params, u);
            alpha * (alpha + 1.0) / ((alpha + b) * (alpha + b + 1.0))
        };
        total.add(a_u * v_sum.value() * (-ln_p[u]).exp());
    }
    Ok(m * m * (m - 1.0) * total.value())
}

/// `∏_{k=a}^{b} E[(1−ψ_k)²]` from the Gamma-function closed form.
pub fn gamma_chain_product(params: &ModelParams, a: usize, b: usize) -> Result<f64> {
    if a < 2 || b < a {
        return Err(Error::OutOfRange(format!("chain bounds {a}..={b} need 2 <= a <= b")));
    }
    let m = params.m() as f64;
    let d = params.delta();
    let s = 2.0 * m + d;
    let roots = [((3.0 * m + d) / s, 2.0 * m / s), ((3.0 * m + d - 1.0) / s, (2.0 * m - 1.0) / s)];
    let (a, b) = (a as f64, b as f64);
    let ln: f64 = roots
        .iter()
        .map(|&(x, y)| {
            libm::lgamma(b + 1.0 - x) + libm::lgamma(a - y) - libm::lgamma(a - x) - libm::lgamma(b + 1.0 - y)
        })
        .sum();
    Ok(ln.exp())
}

/// `C = m²(m−1)(m+δ)(m+δ+1) / (δ²(2m+δ))`, the triangle constant for `δ ≠ 0`.
pub fn triangle_constant(params: &ModelParams) -> Option<f64> {
    let (m, d) = (params.m() as f64, params.delta());
    (d != 0.0).then(|| m * m * (m - 1.0) * (m + d) * (m + d + 1.0) / (d * d * (2.0 * m + d)))
}

/// Leading term of `E[Δ_t]` in each of the three regimes.
pub fn asymptotic_triangle_expectation(params: &ModelParams, t: f64) -> Result<f64> {
    require_triangles(params)?;
    if !(t > 1.0) {
        return Err(Error::OutOfRange(format!("t = {t} must exceed 1")));
    }
    let m = params.m() as f64;
    let lt = t.ln();
    Ok(match triangle_constant(params) {
        None => m * (m - 1.0) * (m + 1.0) / 48.0 * lt.powi(3),
        Some(c) if params.delta() > 0.0 => c * lt,
        Some(c) => {
            let tau = params.tau();
            c * t.powf((3.0 - tau) / (tau - 1.0)) * lt
        }
    })
}
