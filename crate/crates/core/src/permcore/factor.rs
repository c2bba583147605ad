use std::sync::Arc;

use super::group::FiniteGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// A pair of subgroups `H`, `L` of `G`, with the decomposition `x = h l`
/// tabulated when the product `G = HL` is exact.
#[derive(Clone, Debug)]
pub struct FactorizationWitness {
    pub group: FiniteGroup,
    pub left: FiniteGroup,
    pub right: FiniteGroup,
    pub exact: bool,
    /// For each element index of `group`, the indices of `(h, l)` in `left`, `right`.
    decomposition: Option<Arc<Vec<(u32, u32)>>>,
}

/// Checks whether `G = HL` is an exact factorization and tabulates it if so.
pub fn exact_factorization(
    g: &FiniteGroup,
    h: &FiniteGroup,
    l: &FiniteGroup,
) -> Result<FactorizationWitness> {
    let n = g
        .order()
        .ok_or_else(|| Error::NotEnumerated(g.label().to_string()))?;
    for sub in [h, l] {
        let els = sub.elements()?;
        let idx = g.indices_of(els)?;
        if !g.cayley()?.is_subgroup(&idx) {
            return Err(Error::NotSubgroup(sub.label().to_string()));
        }
    }
    let (hs, ls) = (h.elements()?, l.elements()?);
    let mut exact = hs.len() * ls.len() == n;
    let mut decomposition = vec![(u32::MAX, u32::MAX); n];
    if exact {
        'outer: for (i, a) in hs.iter().enumerate() {
            for (j, b) in ls.iter().enumerate() {
                let x = g.index_of(&a.then(b)).expect("closed") as usize;
                if decomposition[x].0 != u32::MAX {
                    exact = false;
                    break 'outer;
                }
                decomposition[x] = (i as u32, j as u32);
            }
        }
    }
    Ok(FactorizationWitness {
        group: g.clone(),
        left: h.clone(),
        right: l.clone(),
        exact,
        decomposition: exact.then(|| Arc::new(decomposition)),
    })
}

impl FactorizationWitness {
    /// The unique `(h, l)` with `x = h l`.
    pub fn decompose(&self, x: &Permutation) -> Result<(Permutation, Permutation)> {
        let i = self.group.require_index(x)?;
        let (a, b) = self.decompose_index(i)?;
        Ok((self.left.element(a).clone(), self.right.element(b).clone()))
    }

    /// Indices into `left` and `right` for the element of `group` at index `x`.
    pub fn decompose_index(&self, x: u32) -> Result<(u32, u32)> {
        let table = self.decomposition.as_ref().ok_or(Error::NotExact)?;
        Ok(table[x as usize])
    }

    pub fn require_exact(&self) -> Result<()> {
        if self.exact {
            Ok(())
        } else {
            Err(Error::NotExact)
        }
    }
}
