//! Exhaustive enumeration of Rota-Baxter operators on small groups, their
//! equivalence classes, and classification reports.

mod classes;
mod lattice;

use crate::error::{Error, Result};
use crate::permcore::{iso_label_table, FiniteGroup};
use crate::rbcore::graph_table;
use crate::rbcore::RbOperator;

pub use classes::{classify, equivalence_classes, ClassCheck, ClassSummary, ClassificationReport};
pub use lattice::LATTICE_CAP;

use lattice::Ambient;

/// Default cap on `|G|` for [`subgroups_of_order`].
pub const SUBGROUP_SEARCH_CAP: usize = 600;

/// Largest group handled by [`oracle_enumerate`].
pub const ORACLE_CAP: usize = 10;

/// Size limits for operator enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_order: usize,
    /// Limit on `|G x G|`.
    pub max_square_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 48,
            max_square_order: 2304,
        }
    }
}

fn order_of(group: &FiniteGroup) -> Result<usize> {
    group
        .order()
        .ok_or_else(|| Error::NotEnumerated(group.label().to_string()))
}

/// All subgroups of order `k`, canonically sorted by member indices.
pub fn subgroups_of_order(group: &FiniteGroup, k: usize) -> Result<Vec<FiniteGroup>> {
    subgroups_of_order_capped(group, k, SUBGROUP_SEARCH_CAP)
}

pub fn subgroups_of_order_capped(
    group: &FiniteGroup,
    k: usize,
    cap: usize,
) -> Result<Vec<FiniteGroup>> {
    let n = order_of(group)?;
    if n > cap {
        return Err(Error::cap(
            format!("subgroup search on {}", group.label()),
            cap,
        ));
    }
    if k == 0 || n % k != 0 {
        return Err(Error::precondition(
            "k divides |G|",
            format!("k = {k}, |G| = {n}"),
        ));
    }
    let t = group.cayley()?;
    let ambient = Ambient {
        n,
        identity: t.identity(),
        mul: |a, b| t.mul(a, b),
        forbidden: |_| false,
    };
    ambient
        .subgroups(k)?
        .into_iter()
        .filter(|m| m.len() == k)
        .map(|m| group.subgroup_from_indices(&iso_label_table(&t.subtable(&m)), &m))
        .collect()
}

fn check_caps(group: &FiniteGroup, caps: &Caps) -> Result<usize> {
    let n = order_of(group)?;
    if n > caps.max_order {
        return Err(Error::cap(
            format!("operator enumeration on {}", group.label()),
            caps.max_order,
        ));
    }
    if n * n > caps.max_square_order {
        return Err(Error::cap(
            format!("|G x G| for {}", group.label()),
            caps.max_square_order,
        ));
    }
    Ok(n)
}

fn finish(group: &FiniteGroup, mut tables: Vec<Vec<u32>>, how: &str) -> Result<Vec<RbOperator>> {
    tables.sort_unstable();
    tables
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            RbOperator::from_table_unchecked(group, t, &format!("{how} {} #{i}", group.label()))
        })
        .collect()
}

/// Every operator on `G`, read off the subgroups of `G x G` of order `|G|`
/// that meet the diagonal trivially. Sorted by table.
pub fn enumerate_rb(group: &FiniteGroup, caps: &Caps) -> Result<Vec<RbOperator>> {
    let n = check_caps(group, caps)?;
    let t = group.cayley()?;
    let m = n as u32;
    let ambient = Ambient {
        n: n * n,
        identity: t.identity() * m + t.identity(),
        mul: |x, y| t.mul(x / m, y / m) * m + t.mul(x % m, y % m),
        forbidden: |x| x / m == x % m,
    };
    let tables = ambient
        .subgroups(n)?
        .into_iter()
        .filter(|s| s.len() == n)
        .map(|s| {
            let pairs: Vec<(u32, u32)> = s.iter().map(|&x| (x / m, x % m)).collect();
            graph_table(group, &pairs)
        })
        .collect::<Result<Vec<_>>>()?;
    finish(group, tables, "enumerated")
}

/// Every operator on `G` by depth-first assignment of values, propagating
/// the identity after each choice. Sorted by table.
pub fn oracle_enumerate(group: &FiniteGroup) -> Result<Vec<RbOperator>> {
    let n = order_of(group)?;
    if n > ORACLE_CAP {
        return Err(Error::cap(
            format!("oracle enumeration on {}", group.label()),
            ORACLE_CAP,
        ));
    }
    let t = group.cayley()?;
    let mut out = Vec::new();
    let mut assignment = vec![None; n];
    assignment[t.identity() as usize] = Some(t.identity());
    search(t, assignment, &mut out);
    finish(group, out, "oracle")
}

fn propagate(t: &crate::permcore::CayleyTable, b: &mut [Option<u32>]) -> bool {
    let n = b.len() as u32;
    loop {
        let mut changed = false;
        for g in 0..n {
            let Some(bg) = b[g as usize] else { continue };
            let left = t.mul(g, bg);
            let bg_inv = t.inv(bg);
            for h in 0..n {
                let Some(bh) = b[h as usize] else { continue };
                let arg = t.mul(t.mul(left, h), bg_inv) as usize;
                let value = t.mul(bg, bh);
                match b[arg] {
                    Some(v) if v != value => return false,
                    Some(_) => {}
                    None => {
                        b[arg] = Some(value);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(t: &crate::permcore::CayleyTable, mut b: Vec<Option<u32>>, out: &mut Vec<Vec<u32>>) {
    if !propagate(t, &mut b) {
        return;
    }
    match b.iter().position(Option::is_none) {
        None => out.push(b.into_iter().map(|v| v.expect("assigned")).collect()),
        Some(x) => {
            for v in 0..b.len() as u32 {
                let mut next = b.clone();
                next[x] = Some(v);
                search(t, next, out);
            }
        }
    }
}
