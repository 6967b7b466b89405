//! The max-over-`s` problem behind subgraph-count scaling.
//!
//! For an ordered subgraph on positions `1..=k` with `β(i) = χ(d_in(i) −
//! d_out(i)) − d_in(i)`, the optimal value is
//! `B = max_{0 ≤ s ≤ k} (−s + Σ_{i>s} β(i))` and the expected number of
//! copies grows like `t^{k+B} log^{r−1} t` where `r` counts the maximizers.
//!
//! Every candidate is affine in `χ` with integer coefficients, so candidates
//! are compared exactly whenever `χ` is rational, which is the case for any
//! `δ` given as a short decimal.

mod regime;

pub use regime::{atlas, depends_on_tau, exponent_regimes, AtlasRow, Regime};

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::subgraph::{OrderedSubgraph, UnorderedDigraph};

/// Tolerance for ties when `χ` has no short exact fraction.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// The value of `χ` used for comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChiValue {
    Exact(Ratio<i64>),
    Approx(f64),
}

impl ChiValue {
    pub fn of(params: &ModelParams) -> Self {
        params.chi_exact().map(ChiValue::Exact).unwrap_or(ChiValue::Approx(params.chi()))
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ChiValue::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            ChiValue::Approx(x) => x,
        }
    }
}

/// `a + b·χ` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineExponent {
    pub a: i64,
    pub b: i64,
}

impl AffineExponent {
    pub fn new(a: i64, b: i64) -> Self {
        AffineExponent { a, b }
    }

    /// The exponent written as `(c0 + c1·τ)/(τ − 1)`, returned as `(c0, c1)`.
    pub fn tau_numerator(&self) -> (i64, i64) {
        (-(self.a + 2 * self.b), self.a + self.b)
    }

    /// Inverse of [`tau_numerator`](Self::tau_numerator).
    pub fn from_tau_numerator(c0: i64, c1: i64) -> Self {
        // a + b = c1, a + 2b = -c0
        AffineExponent { a: 2 * c1 + c0, b: -c0 - c1 }
    }

    pub fn value(&self, chi: f64) -> f64 {
        self.a as f64 + self.b as f64 * chi
    }

    pub fn value_at_tau(&self, tau: f64) -> f64 {
        self.value((tau - 2.0) / (tau - 1.0))
    }

    pub(crate) fn cmp_at(&self, other: &AffineExponent, chi: ChiValue) -> Ordering {
        let da = self.a - other.a;
        let db = self.b - other.b;
        match chi {
            ChiValue::Exact(c) => (Ratio::from_integer(db) * c + da).cmp(&Ratio::from_integer(0)),
            ChiValue::Approx(x) => {
                let d = da as f64 + db as f64 * x;
                if d.abs() <= TIE_TOLERANCE {
                    Ordering::Equal
                } else if d > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }
}

impl fmt::Display for AffineExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            return write!(f, "{}", self.a);
        }
        let (c0, c1) = self.tau_numerator();
        let tau_term = match c1 {
            1 => "τ".to_string(),
            -1 => "-τ".to_string(),
            c => format!("{c}τ"),
        };
        if c1 == 0 {
            write!(f, "{c0}/(τ-1)")
        } else if c0 == 0 {
            write!(f, "{tau_term}/(τ-1)")
        } else if c1 > 0 {
            write!(f, "({c0}+{tau_term})/(τ-1)")
        } else {
            write!(f, "({c0}{tau_term})/(τ-1)")
        }
    }
}

impl Serialize for AffineExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeClass {
    OldHub,
    Free,
    YoungConstant,
}

impl DegreeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            DegreeClass::OldHub => "old-hub",
            DegreeClass::Free => "free",
            DegreeClass::YoungConstant => "young-constant",
        }
    }
}

/// Solution of the optimization problem for one ordered subgraph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentReport {
    pub subgraph: OrderedSubgraph,
    pub beta: Vec<f64>,
    #[serde(rename = "B")]
    pub b: f64,
    pub optimizers: Vec<usize>,
    pub r: usize,
    pub exponent: f64,
    pub exponent_symbolic: AffineExponent,
    pub log_power: usize,
    pub classes: Vec<DegreeClass>,
}

/// Best ordering of an unordered digraph plus every attainable ordering.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnorderedReport {
    pub best: ExponentReport,
    pub per_ordering: Vec<ExponentReport>,
}

impl ExponentReport {
    /// `(exponent, log_power)` as an exactly comparable key.
    pub fn growth(&self) -> (AffineExponent, usize) {
        (self.exponent_symbolic, self.log_power)
    }
}

/// `β(i)` for positions `1..=k` (index 0 of the result is position 1).
pub fn beta_values(h: &OrderedSubgraph, params: &ModelParams) -> Result<Vec<f64>> {
    check_attainable(h, params)?;
    let chi = params.chi();
    let (din, dout) = (h.in_degrees(), h.out_degrees());
    Ok((1..=h.k()).map(|i| chi * (din[i] as f64 - dout[i] as f64) - din[i] as f64).collect())
}

pub fn solve_b(h: &OrderedSubgraph, params: &ModelParams) -> Result<ExponentReport> {
    check_attainable(h, params)?;
    Ok(solve_at(h, ChiValue::of(params)))
}

pub fn solve_b_unordered(g: &UnorderedDigraph, params: &ModelParams) -> Result<UnorderedReport> {
    let orderings = g.attainable_orderings(params.m())?;
    solve_orderings(orderings, ChiValue::of(params))
        .ok_or_else(|| Error::NotAttainable(format!("no attainable ordering of {g} with m = {}", params.m())))
}

fn check_attainable(h: &OrderedSubgraph, params: &ModelParams) -> Result<()> {
    if h.is_attainable(params.m()) {
        Ok(())
    } else {
        Err(Error::NotAttainable(format!("{h} with m = {}", params.m())))
    }
}

pub(crate) fn solve_orderings(orderings: Vec<OrderedSubgraph>, chi: ChiValue) -> Option<UnorderedReport> {
    let per_ordering: Vec<ExponentReport> = orderings.iter().map(|h| solve_at(h, chi)).collect();
    let mut best: Option<&ExponentReport> = None;
    for rep in &per_ordering {
        let better = match best {
            None => true,
            Some(b) => match rep.exponent_symbolic.cmp_at(&b.exponent_symbolic, chi) {
                Ordering::Greater => true,
                Ordering::Equal => rep.r > b.r,
                Ordering::Less => false,
            },
        };
        if better {
            best = Some(rep);
        }
    }
    let best = best?.clone();
    Some(UnorderedReport { best, per_ordering })
}

/// Candidate for `s`, as the exponent line `k + candidate(s) = a + b·χ`.
fn candidate_lines(h: &OrderedSubgraph) -> Vec<AffineExponent> {
    let k = h.k();
    let (din, dout) = (h.in_degrees(), h.out_degrees());
    let mut lines = vec![AffineExponent::new(0, 0); k + 1];
    let (mut slope, mut offset) = (0i64, 0i64);
    for s in (0..=k).rev() {
        lines[s] = AffineExponent::new(k as i64 - s as i64 + offset, slope);
        if s >= 1 {
            slope += din[s] as i64 - dout[s] as i64;
            offset -= din[s] as i64;
        }
    }
    lines
}

pub(crate) fn solve_at(h: &OrderedSubgraph, chi: ChiValue) -> ExponentReport {
    let k = h.k();
    let lines = candidate_lines(h);
    // s = 0 candidate is -ℓ exactly
    assert_eq!(lines[0], AffineExponent::new(k as i64 - h.edge_count() as i64, 0));

    let mut best = lines[0];
    for line in &lines[1..] {
        if line.cmp_at(&best, chi) == Ordering::Greater {
            best = *line;
        }
    }
    let optimizers: Vec<usize> = (0..=k).filter(|&s| lines[s].cmp_at(&best, chi) == Ordering::Equal).collect();
    let r = optimizers.len();
    let chi_f = chi.to_f64();
    let (din, dout) = (h.in_degrees(), h.out_degrees());
    let beta: Vec<f64> = (1..=k).map(|i| chi_f * (din[i] as f64 - dout[i] as f64) - din[i] as f64).collect();

    // consecutive optimizers s1 < s2: the β block between them sums to s1 - s2,
    // and every s strictly between is strictly worse
    for w in optimizers.windows(2) {
        let (s1, s2) = (w[0], w[1]);
        let block: f64 = beta[s1..s2].iter().sum();
        assert!((block - (s1 as f64 - s2 as f64)).abs() < 1e-9 * (1.0 + block.abs()));
        for s in (s1 + 1)..s2 {
            assert_eq!(lines[s].cmp_at(&lines[s2], chi), Ordering::Less);
        }
    }

    let (lo, hi) = (optimizers[0], optimizers[r - 1]);
    let classes: Vec<DegreeClass> = (1..=k)
        .map(|i| {
            if i <= lo {
                DegreeClass::OldHub
            } else if i > hi {
                DegreeClass::YoungConstant
            } else {
                DegreeClass::Free
            }
        })
        .collect();
    let exponent = best.value(chi_f);
    ExponentReport {
        subgraph: h.clone(),
        beta,
        b: exponent - k as f64,
        optimizers,
        r,
        exponent,
        exponent_symbolic: best,
        log_power: r - 1,
        classes,
    }
}
