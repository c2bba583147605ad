use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Upper bound on the number of subgroups a single search may visit.
pub const LATTICE_CAP: usize = 2_000_000;

/// A group given by its order, identity and product on indices `0..n`.
pub(crate) struct Ambient<M, F> {
    pub n: usize,
    pub identity: u32,
    pub mul: M,
    /// Nonidentity elements no subgroup may contain.
    pub forbidden: F,
}

#[derive(Clone)]
struct Node {
    members: Vec<u32>,
    mask: Vec<u64>,
    gens: Vec<u32>,
}

fn has(mask: &[u64], x: u32) -> bool {
    mask[x as usize / 64] >> (x % 64) & 1 == 1
}

fn set(mask: &mut [u64], x: u32) {
    mask[x as usize / 64] |= 1 << (x % 64);
}

impl<M, F> Ambient<M, F>
where
    M: Fn(u32, u32) -> u32 + Sync,
    F: Fn(u32) -> bool + Sync,
{
    /// Elements whose cyclic subgroup has order dividing `target` and avoids
    /// the forbidden set.
    fn usable(&self, target: usize) -> Vec<bool> {
        (0..self.n as u32)
            .into_par_iter()
            .map(|x| {
                let mut y = x;
                let mut k = 1;
                while y != self.identity {
                    if (self.forbidden)(y) || k > target {
                        return false;
                    }
                    y = (self.mul)(y, x);
                    k += 1;
                }
                target.is_multiple_of(k)
            })
            .collect()
    }

    /// `<S, x>`, or `None` once it outgrows `target` or meets the forbidden set.
    fn extend(&self, s: &Node, x: u32, target: usize) -> Option<Node> {
        let mut members = s.members.clone();
        let mut mask = s.mask.clone();
        let mut gens = s.gens.clone();
        gens.push(x);
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for &g in &gens {
                let p = (self.mul)(a, g);
                if !has(&mask, p) {
                    if (self.forbidden)(p) || members.len() == target {
                        return None;
                    }
                    set(&mut mask, p);
                    members.push(p);
                }
            }
            i += 1;
        }
        if !target.is_multiple_of(members.len()) {
            return None;
        }
        members.sort_unstable();
        Some(Node {
            members,
            mask,
            gens,
        })
    }

    fn children(&self, s: &Node, usable: &[bool], target: usize) -> Vec<Node> {
        let mut seen = s.mask.clone();
        let mut out = Vec::new();
        for x in 0..self.n as u32 {
            if !usable[x as usize] || has(&seen, x) {
                continue;
            }
            for &m in &s.members {
                set(&mut seen, (self.mul)(m, x));
            }
            if let Some(child) = self.extend(s, x, target) {
                out.push(child);
            }
        }
        out
    }

    /// Every subgroup of order dividing `target` that avoids the forbidden
    /// set, as sorted member lists in canonical order.
    pub fn subgroups(&self, target: usize) -> Result<Vec<Vec<u32>>> {
        let usable = self.usable(target);
        let words = self.n.div_ceil(64);
        let mut root = Node {
            members: vec![self.identity],
            mask: vec![0; words],
            gens: Vec::new(),
        };
        set(&mut root.mask, self.identity);
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        seen.insert(root.mask.clone());
        let mut found = vec![root.members.clone()];
        let mut frontier = vec![root];
        while !frontier.is_empty() {
            let next: Vec<Node> = frontier
                .par_iter()
                .filter(|s| s.members.len() < target)
                .flat_map_iter(|s| self.children(s, &usable, target))
                .collect();
            frontier = Vec::new();
            for node in next {
                if seen.insert(node.mask.clone()) {
                    found.push(node.members.clone());
                    frontier.push(node);
                }
            }
            if found.len() > LATTICE_CAP {
                return Err(Error::cap("subgroup lattice", LATTICE_CAP));
            }
        }
        found.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::CayleyTable;

    fn all(t: &CayleyTable, target: usize) -> Vec<Vec<u32>> {
        let a = Ambient {
            n: t.order(),
            identity: t.identity(),
            mul: |x, y| t.mul(x, y),
            forbidden: |_| false,
        };
        a.subgroups(target).unwrap()
    }

    #[test]
    fn cyclic_lattice() {
        let subs = all(&CayleyTable::cyclic(12), 12);
        let orders: Vec<usize> = subs.iter().map(Vec::len).collect();
        assert_eq!(orders, [1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn klein_lattice() {
        let t = CayleyTable::cyclic(2).direct_product(&CayleyTable::cyclic(2));
        assert_eq!(all(&t, 4).len(), 5);
        assert_eq!(all(&t, 2).len(), 4);
    }

    #[test]
    fn forbidden_elements_prune() {
        let t = CayleyTable::cyclic(6);
        let a = Ambient {
            n: 6,
            identity: t.identity(),
            mul: |x, y| t.mul(x, y),
            forbidden: |x| x == 3,
        };
        let subs = a.subgroups(6).unwrap();
        assert_eq!(subs, vec![vec![0], vec![0, 2, 4]]);
    }
}
