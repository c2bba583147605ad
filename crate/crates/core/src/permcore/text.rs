//! Line-oriented text format for permutations and groups.
//!
//! ```text
//! group: S3
//! domain: 3
//! gen: 1 2 0
//! gen: 1 0 2
//! ```
//!
//! Single permutations are written as `perm: 1 0 2`.

use super::group::{FiniteGroup, DEFAULT_ENUMERATION_CAP};
use super::perm::Permutation;
use crate::error::{Error, Result};

pub fn write_perm(p: &Permutation) -> String {
    format!("perm: {p}")
}

pub fn read_perm(line: &str) -> Result<Permutation> {
    let body = line
        .trim()
        .strip_prefix("perm:")
        .ok_or_else(|| Error::Parse(format!("expected `perm:` line, got `{line}`")))?;
    Permutation::parse(None, body)
}

pub fn write_group(g: &FiniteGroup) -> String {
    let mut out = format!("group: {}\ndomain: {}\n", g.label(), g.degree());
    for p in g.generators() {
        out.push_str(&format!("gen: {p}\n"));
    }
    out
}

/// Reads a group block from the start of `text`; returns the group and the
/// number of lines consumed. The group is enumerated when it fits `cap`.
pub fn read_group(text: &str, cap: usize) -> Result<(FiniteGroup, usize)> {
    let mut label = String::new();
    let mut degree = None;
    let mut gens = Vec::new();
    let mut consumed = 0;
    for line in text.lines() {
        let line = line.trim_end();
        if let Some(v) = line.strip_prefix("group:") {
            if degree.is_some() {
                break;
            }
            label = v.trim().to_string();
        } else if let Some(v) = line.strip_prefix("domain:") {
            degree = Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(e.to_string()))?,
            );
        } else if let Some(v) = line.strip_prefix("gen:") {
            gens.push(Permutation::parse(degree, v)?);
        } else if line.is_empty() && degree.is_none() {
        } else {
            break;
        }
        consumed += 1;
    }
    let degree = degree.ok_or_else(|| Error::Parse("missing `domain:` line".into()))?;
    let g = FiniteGroup::generate_or_handle(&label, degree, gens, cap)?;
    Ok((g, consumed))
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    read_group(text, DEFAULT_ENUMERATION_CAP).map(|(g, _)| g)
}
