use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::{candidate_lines, solve_orderings, AffineExponent, ChiValue, UnorderedReport};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::subgraph::{catalog, UnorderedDigraph};

/// A maximal `χ`-interval on which the growth `(exponent, log_power)` of a
/// digraph is constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Regime {
    pub chi_lo: f64,
    pub chi_hi: f64,
    pub tau_lo: f64,
    pub tau_hi: f64,
    pub exponent: AffineExponent,
    pub log_power: usize,
}

fn tau_of_chi(chi: f64) -> f64 {
    if chi >= 1.0 {
        f64::INFINITY
    } else {
        (2.0 - chi) / (1.0 - chi)
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Growth regimes of `g` for `χ` in the open interval `(chi_lo, chi_hi)`.
///
/// The optimum over orderings and `s` is a maximum of finitely many lines in
/// `χ`, so it can only change where two of them cross. Each gap between
/// consecutive crossings is probed at its midpoint.
pub fn exponent_regimes(g: &UnorderedDigraph, m: u32, chi_lo: Ratio<i64>, chi_hi: Ratio<i64>) -> Result<Vec<Regime>> {
    if chi_lo >= chi_hi {
        return Err(Error::OutOfRange(format!("empty χ interval ({chi_lo}, {chi_hi})")));
    }
    let orderings = g.attainable_orderings(m)?;
    if orderings.is_empty() {
        return Err(Error::NotAttainable(format!("no attainable ordering of {g} with m = {m}")));
    }
    let mut lines: Vec<AffineExponent> = orderings.iter().flat_map(candidate_lines).collect();
    lines.sort_unstable_by_key(|l| (l.a, l.b));
    lines.dedup();

    let mut cuts = vec![chi_lo, chi_hi];
    for (i, l1) in lines.iter().enumerate() {
        for l2 in &lines[i + 1..] {
            if l1.b != l2.b {
                let x = Ratio::new(l2.a - l1.a, l1.b - l2.b);
                if x > chi_lo && x < chi_hi {
                    cuts.push(x);
                }
            }
        }
    }
    cuts.sort_unstable();
    cuts.dedup();

    let mut regimes: Vec<Regime> = Vec::new();
    for w in cuts.windows(2) {
        let mid = (w[0] + w[1]) / 2;
        let rep = solve_orderings(orderings.clone(), ChiValue::Exact(mid)).expect("orderings non-empty");
        let (exponent, log_power) = rep.best.growth();
        match regimes.last_mut() {
            Some(last) if last.exponent == exponent && last.log_power == log_power => {
                last.chi_hi = ratio_f64(w[1]);
                last.tau_hi = tau_of_chi(last.chi_hi);
            }
            _ => regimes.push(Regime {
                chi_lo: ratio_f64(w[0]),
                chi_hi: ratio_f64(w[1]),
                tau_lo: tau_of_chi(ratio_f64(w[0])),
                tau_hi: tau_of_chi(ratio_f64(w[1])),
                exponent,
                log_power,
            }),
        }
    }
    Ok(regimes)
}

/// Whether the growth of `g` changes within the τ-band containing `params`:
/// `2 < τ < 3` or `τ > 3`. At `τ = 3` exactly the band is a point and the
/// answer is `false`.
pub fn depends_on_tau(g: &UnorderedDigraph, params: &ModelParams) -> Result<bool> {
    let half = Ratio::new(1, 2);
    let (lo, hi) = match ChiValue::of(params) {
        ChiValue::Exact(c) if c == half => return Ok(false),
        c if c.to_f64() < 0.5 => (Ratio::from_integer(0), half),
        _ => (half, Ratio::from_integer(1)),
    };
    Ok(exponent_regimes(g, params.m(), lo, hi)?.len() > 1)
}

/// One catalog digraph evaluated at fixed parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtlasRow {
    pub id: String,
    pub k: usize,
    pub edges: String,
    /// Best ordering, vertex ids replaced by positions.
    pub ordering: String,
    pub exponent_symbolic: AffineExponent,
    pub exponent: f64,
    pub log_power: usize,
    /// Degree class per position, `;`-separated.
    pub classes: String,
    pub depends_on_tau: bool,
}

/// Every connected acyclic digraph on 3 and 4 vertices attainable with
/// `params.m()` edges per vertex.
pub fn atlas(params: &ModelParams) -> Result<Vec<AtlasRow>> {
    let mut entries = catalog(3)?;
    entries.extend(catalog(4)?);
    let rows: Vec<Option<AtlasRow>> = entries
        .par_iter()
        .map(|e| -> Result<Option<AtlasRow>> {
            let orderings = e.graph.attainable_orderings(params.m())?;
            let Some(UnorderedReport { best, .. }) = solve_orderings(orderings, ChiValue::of(params)) else {
                return Ok(None);
            };
            Ok(Some(AtlasRow {
                id: e.id.clone(),
                k: e.graph.k(),
                edges: e.graph.to_inline(),
                ordering: best.subgraph.to_inline(),
                exponent_symbolic: best.exponent_symbolic,
                exponent: best.exponent,
                log_power: best.log_power,
                classes: best.classes.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(";"),
                depends_on_tau: depends_on_tau(&e.graph, params)?,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}
