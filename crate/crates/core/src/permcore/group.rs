use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::perm::Permutation;
use super::table::CayleyTable;
use crate::error::{Error, Result};

/// Default cap on the number of elements a group may have and still be enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 5000;

/// Largest order for which a dense Cayley table is built.
pub const CAYLEY_TABLE_CAP: usize = 4096;

/// All products of `generators`, sorted lexicographically by image list.
pub fn closure(generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::precondition("closure", "empty generator list"))?;
    let n = first.degree();
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::DomainMismatch(n, g.degree()));
    }
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in generators {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::cap("group closure", cap));
                    }
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

struct Enumeration {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    table: OnceLock<Option<CayleyTable>>,
}

/// A permutation group: its generators plus, when small enough, the sorted
/// list of all its elements. Cheap to clone.
#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    degree: usize,
    generators: Vec<Permutation>,
    enumeration: Option<Arc<Enumeration>>,
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators`; fails past `cap` elements.
    pub fn generate(
        label: &str,
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DomainMismatch(degree, g.degree()));
        }
        let gens_for_closure = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators.clone()
        };
        let elements = closure(&gens_for_closure, cap)?;
        Ok(Self::from_sorted_elements(
            label, degree, generators, elements,
        ))
    }

    /// Like [`FiniteGroup::generate`], but keeps a generator-only handle when the
    /// group is larger than `cap`.
    pub fn generate_or_handle(
        label: &str,
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self> {
        match Self::generate(label, degree, generators.clone(), cap) {
            Err(Error::CapExceeded { .. }) => Ok(Self::handle(label, degree, generators)),
            other => other,
        }
    }

    /// Generator-only handle.
    pub fn handle(label: &str, degree: usize, generators: Vec<Permutation>) -> Self {
        FiniteGroup {
            label: label.to_string(),
            degree,
            generators,
            enumeration: None,
        }
    }

    fn from_sorted_elements(
        label: &str,
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        FiniteGroup {
            label: label.to_string(),
            degree,
            generators,
            enumeration: Some(Arc::new(Enumeration {
                elements,
                index,
                table: OnceLock::new(),
            })),
        }
    }

    /// Regular permutation representation of an abstract group table: element
    /// `g` acts as `x -> x g` on `0..n`.
    pub fn from_table(label: &str, table: &CayleyTable) -> Self {
        let n = table.order();
        let perm_of = |g: u32| {
            Permutation::from_images_unchecked(
                (0..n as u32).map(|x| table.mul(x, g) as u16).collect(),
            )
        };
        let gens: Vec<Permutation> = table.generating_set().into_iter().map(perm_of).collect();
        let mut elements: Vec<Permutation> = (0..n as u32).map(perm_of).collect();
        elements.sort_unstable();
        Self::from_sorted_elements(label, n, gens, elements)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_enumerated(&self) -> bool {
        self.enumeration.is_some()
    }

    fn enumeration(&self) -> Result<&Enumeration> {
        self.enumeration
            .as_deref()
            .ok_or_else(|| Error::NotEnumerated(self.label.clone()))
    }

    pub fn order(&self) -> Option<usize> {
        self.enumeration.as_ref().map(|e| e.elements.len())
    }

    /// Canonically sorted element list.
    pub fn elements(&self) -> Result<&[Permutation]> {
        Ok(&self.enumeration()?.elements)
    }

    /// Element at a canonical index. Panics for handles or bad indices.
    pub fn element(&self, i: u32) -> &Permutation {
        &self
            .enumeration
            .as_ref()
            .expect("enumerated group")
            .elements[i as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.enumeration.as_ref()?.index.get(p).copied()
    }

    /// Index of `p`, or an error naming the element.
    pub fn require_index(&self, p: &Permutation) -> Result<u32> {
        self.enumeration()?;
        self.index_of(p)
            .ok_or_else(|| Error::NotInGroup(format!("{} not in {}", p.cycle_string(), self.label)))
    }

    pub fn identity_index(&self) -> u32 {
        self.index_of(&self.identity()).expect("enumerated group")
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    /// Dense Cayley table (indices follow the canonical element order).
    pub fn cayley(&self) -> Result<&CayleyTable> {
        let e = self.enumeration()?;
        let n = e.elements.len();
        e.table
            .get_or_init(|| {
                if n > CAYLEY_TABLE_CAP {
                    return None;
                }
                let mut mul = Vec::with_capacity(n * n);
                for a in &e.elements {
                    for b in &e.elements {
                        mul.push(e.index[&a.then(b)]);
                    }
                }
                let identity = e.index[&Permutation::identity(self.degree)];
                let inverse = e.elements.iter().map(|a| e.index[&a.inverse()]).collect();
                Some(CayleyTable::from_parts(n, mul, identity, inverse))
            })
            .as_ref()
            .ok_or_else(|| Error::cap(format!("Cayley table for {}", self.label), CAYLEY_TABLE_CAP))
    }

    /// Index of a product, via the table when present.
    pub fn mul_index(&self, a: u32, b: u32) -> u32 {
        match self.cayley() {
            Ok(t) => t.mul(a, b),
            Err(_) => self
                .index_of(&self.element(a).then(self.element(b)))
                .expect("closed"),
        }
    }

    pub fn inv_index(&self, a: u32) -> u32 {
        match self.cayley() {
            Ok(t) => t.inv(a),
            Err(_) => self.index_of(&self.element(a).inverse()).expect("closed"),
        }
    }

    /// Indices of the given elements, sorted; errors on elements outside.
    pub fn indices_of(&self, set: &[Permutation]) -> Result<Vec<u32>> {
        let mut out = set
            .iter()
            .map(|p| self.require_index(p))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Materializes the subgroup with the given (sorted) member indices.
    pub fn subgroup_from_indices(&self, label: &str, members: &[u32]) -> Result<FiniteGroup> {
        let t = self.cayley()?;
        if !t.is_subgroup(members) {
            return Err(Error::NotSubgroup(label.to_string()));
        }
        let gens = t
            .generating_set_of(members)
            .into_iter()
            .map(|i| self.element(i).clone())
            .collect();
        let elements: Vec<Permutation> = members.iter().map(|&i| self.element(i).clone()).collect();
        Ok(Self::from_sorted_elements(
            label,
            self.degree,
            gens,
            elements,
        ))
    }

    /// Subgroup generated by elements of this group.
    pub fn subgroup_generated(&self, label: &str, gens: &[Permutation]) -> Result<FiniteGroup> {
        for g in gens {
            self.require_index(g)?;
        }
        let sub = FiniteGroup::generate(
            label,
            self.degree,
            gens.to_vec(),
            self.order().unwrap_or(usize::MAX),
        )?;
        Ok(sub)
    }

    /// Whether every element of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &FiniteGroup) -> Result<bool> {
        Ok(self.elements()?.iter().all(|p| other.contains(p)))
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        match (&self.enumeration, &other.enumeration) {
            (Some(a), Some(b)) => self.degree == other.degree && a.elements == b.elements,
            _ => self.degree == other.degree && self.generators == other.generators,
        }
    }
}

/// Whether `set` is a subgroup of `group`. Errors if some element lies outside.
pub fn is_subgroup(group: &FiniteGroup, set: &[Permutation]) -> Result<bool> {
    let idx = group.indices_of(set)?;
    if idx.len() != set.len() {
        // duplicates are fine, but the check runs on the distinct set
    }
    Ok(group.cayley()?.is_subgroup(&idx))
}

pub fn is_normal(group: &FiniteGroup, set: &[Permutation]) -> Result<bool> {
    let idx = group.indices_of(set)?;
    Ok(group.cayley()?.is_normal(&idx))
}

pub fn center(group: &FiniteGroup) -> Result<FiniteGroup> {
    let z = group.cayley()?.center();
    group.subgroup_from_indices(&format!("Z({})", group.label()), &z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cs).unwrap()
    }

    #[test]
    fn closure_of_s3() {
        let els = closure(&[cyc(3, &[&[0, 1, 2]]), cyc(3, &[&[0, 1]])], 100).unwrap();
        assert_eq!(els.len(), 6);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn closure_of_identity() {
        let els = closure(&[Permutation::identity(4)], 10).unwrap();
        assert_eq!(els, vec![Permutation::identity(4)]);
    }

    #[test]
    fn closure_cap() {
        let gens = [cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])];
        assert!(matches!(
            closure(&gens, 100),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(closure(&gens, 720).unwrap().len(), 720);
    }

    #[test]
    fn example_sharply_two_transitive_group_has_72_elements() {
        // (1456)(2789), (1683)(2579) on 1..9, shifted to 0-based
        let a = cyc(9, &[&[0, 3, 4, 5], &[1, 6, 7, 8]]);
        let b = cyc(9, &[&[0, 5, 7, 2], &[1, 4, 6, 8]]);
        assert_eq!(closure(&[a, b], 5000).unwrap().len(), 72);
    }

    #[test]
    fn normality_and_center() {
        let a4 = FiniteGroup::generate(
            "A4",
            4,
            vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])],
            100,
        )
        .unwrap();
        assert_eq!(a4.order(), Some(12));
        let v4 = vec![
            Permutation::identity(4),
            cyc(4, &[&[0, 1], &[2, 3]]),
            cyc(4, &[&[0, 2], &[1, 3]]),
            cyc(4, &[&[0, 3], &[1, 2]]),
        ];
        assert!(is_subgroup(&a4, &v4).unwrap());
        assert!(is_normal(&a4, &v4).unwrap());
        let c3 = FiniteGroup::generate("C3", 4, vec![cyc(4, &[&[0, 1, 2]])], 10).unwrap();
        assert!(!is_normal(&a4, c3.elements().unwrap()).unwrap());
        assert_eq!(center(&a4).unwrap().order(), Some(1));
        // an odd permutation is outside A4
        assert!(is_subgroup(&a4, &[cyc(4, &[&[0, 1]])]).is_err());
    }

    #[test]
    fn regular_representation() {
        let t = CayleyTable::metacyclic(4, 2, 2, 3).unwrap();
        let q8 = FiniteGroup::from_table("Q8", &t);
        assert_eq!(q8.order(), Some(8));
        assert_eq!(q8.degree(), 8);
        assert!(q8.cayley().unwrap().is_isomorphic(&t));
    }
}
