use super::RbOperator;
use crate::error::{Error, Result};
use crate::permcore::FiniteGroup;

/// A subgroup of `G x G`, stored as sorted index pairs `(a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphSubgroup {
    pub group: FiniteGroup,
    pub pairs: Vec<(u32, u32)>,
}

impl RbOperator {
    /// `H_B = {(B(g), g B(g))}`.
    pub fn graph(&self) -> Result<GraphSubgroup> {
        let t = self.require_table()?;
        let mut pairs: Vec<(u32, u32)> = (0..t.len() as u32)
            .map(|g| (t[g as usize], self.group.mul_index(g, t[g as usize])))
            .collect();
        pairs.sort_unstable();
        Ok(GraphSubgroup {
            group: self.group.clone(),
            pairs,
        })
    }

    /// Reads `B` off a subgroup `H <= G x G` of order `|G|` meeting the
    /// diagonal trivially: `B(b a^-1) = a` for `(a, b)` in `H`.
    pub fn from_graph(group: &FiniteGroup, pairs: &[(u32, u32)]) -> Result<RbOperator> {
        let table = graph_table(group, pairs)?;
        let t = group.cayley()?;
        let mut set: Vec<(u32, u32)> = pairs.to_vec();
        set.sort_unstable();
        for &(a, b) in pairs {
            for &(c, d) in pairs {
                if set.binary_search(&(t.mul(a, c), t.mul(b, d))).is_err() {
                    return Err(Error::NotSubgroup("pairs are not closed in G x G".into()));
                }
            }
        }
        RbOperator::from_table(group, table, "graph")
    }
}

/// The table read off a graph, checking size and the diagonal condition only.
pub(crate) fn graph_table(group: &FiniteGroup, pairs: &[(u32, u32)]) -> Result<Vec<u32>> {
    let n = group
        .order()
        .ok_or_else(|| Error::NotEnumerated(group.label().to_string()))?;
    if pairs.len() != n {
        return Err(Error::InvalidOperator(format!(
            "graph has {} pairs, expected {n}",
            pairs.len()
        )));
    }
    let mut table = vec![u32::MAX; n];
    for &(a, b) in pairs {
        let g = group.mul_index(b, group.inv_index(a));
        if table[g as usize] != u32::MAX {
            return Err(Error::InvalidOperator("subgroup meets the diagonal".into()));
        }
        table[g as usize] = a;
    }
    Ok(table)
}
