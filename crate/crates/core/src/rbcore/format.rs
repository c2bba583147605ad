//! Operator files: a group block, a `provenance:` line, then either
//! `op:` with `|G|` image indices into the canonical element list or
//! `proc:` with the construction descriptor.

use super::{Body, RbOperator};
use crate::error::{Error, Result};
use crate::permcore::text::{read_group, write_group};
use crate::permcore::{FiniteGroup, DEFAULT_ENUMERATION_CAP};

pub fn write_operator(op: &RbOperator) -> String {
    let mut out = write_group(op.group());
    out.push_str(&format!("provenance: {}\n", op.provenance()));
    match op.body() {
        Body::Table(t) => {
            let idx: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("op: {}\n", idx.join(" ")));
        }
        Body::Procedural(rule) => out.push_str(&format!("proc: {}\n", rule.descriptor())),
    }
    out
}

/// What an operator file holds: a table operator, or the group plus the
/// descriptor of a procedural one (rebuilt by the caller).
#[derive(Debug)]
pub enum OperatorFile {
    Table(RbOperator),
    Procedural {
        group: FiniteGroup,
        provenance: String,
        descriptor: String,
    },
}

/// Parses an operator file. Table operators are verified on load.
pub fn read_operator(text: &str) -> Result<OperatorFile> {
    read_operator_with(text, true)
}

pub fn read_operator_with(text: &str, verify: bool) -> Result<OperatorFile> {
    let (group, used) = read_group(text, DEFAULT_ENUMERATION_CAP)?;
    let mut provenance = String::new();
    for line in text.lines().skip(used) {
        let line = line.trim_end();
        if let Some(p) = line.strip_prefix("provenance:") {
            provenance = p.trim().to_string();
        } else if let Some(body) = line.strip_prefix("op:") {
            let table = body
                .split_whitespace()
                .map(|s| s.parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            let op = if verify {
                RbOperator::from_table(&group, table, &provenance)?
            } else {
                RbOperator::from_table_unchecked(&group, table, &provenance)?
            };
            return Ok(OperatorFile::Table(op));
        } else if let Some(d) = line.strip_prefix("proc:") {
            return Ok(OperatorFile::Procedural {
                group,
                provenance,
                descriptor: d.trim().to_string(),
            });
        } else if !line.is_empty() {
            return Err(Error::Parse(format!("unexpected line `{line}`")));
        }
    }
    Err(Error::Parse("missing `op:` or `proc:` line".into()))
}
