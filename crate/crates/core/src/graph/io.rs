//! Edge-list text format.
//!
//! ```text
//! PAM <t> <m> <delta> <provenance>
//! <v> <j> <u>
//! ...
//! ```
//!
//! One line per labeled edge, `v` ascending then `j` ascending. `delta` is
//! written with Rust's shortest round-trip float formatting.

use std::io::{BufRead, Write};

use super::{PAGraph, Provenance};
use crate::error::{Error, Result};
use crate::model::ModelParams;

pub fn write_edge_list<W: Write>(graph: &PAGraph, mut out: W) -> Result<()> {
    writeln!(out, "PAM {} {} {} {}", graph.t(), graph.m(), graph.params().delta(), graph.provenance().as_str())?;
    for v in 2..=graph.t() {
        for (j, u) in graph.targets_of(v).iter().enumerate() {
            writeln!(out, "{v} {} {u}", j + 1)?;
        }
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<PAGraph> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))??;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "PAM" {
        return Err(Error::Parse(format!("bad header '{header}'")));
    }
    let t: usize = parse(fields[1], "t")?;
    let m: u32 = parse(fields[2], "m")?;
    let delta: f64 = parse(fields[3], "delta")?;
    let provenance: Provenance = fields[4].parse()?;
    let params = ModelParams::new(m, delta)?;
    if t < 2 {
        return Err(Error::GraphTooSmall(t, 2));
    }

    let m = m as usize;
    let mut targets = Vec::with_capacity(m * (t - 1));
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let nums: Vec<&str> = line.split_whitespace().collect();
        if nums.len() != 3 {
            return Err(Error::Parse(format!("line {}: expected 'v j u'", lineno + 2)));
        }
        let v: usize = parse(nums[0], "v")?;
        let j: usize = parse(nums[1], "j")?;
        let u: u32 = parse(nums[2], "u")?;
        let idx = targets.len();
        if v != idx / m + 2 || j != idx % m + 1 {
            return Err(Error::Parse(format!(
                "line {}: expected edge ({} {}), found ({v} {j})",
                lineno + 2,
                idx / m + 2,
                idx % m + 1
            )));
        }
        targets.push(u);
    }
    PAGraph::from_targets(params, t, targets, provenance)
}

fn parse<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("invalid {what} '{s}'")))
}
