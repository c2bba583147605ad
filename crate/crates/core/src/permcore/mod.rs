//! Permutations, enumerated groups and the table machinery built on them.

mod factor;
mod group;
mod label;
mod perm;
mod table;
pub mod text;

pub use factor::{exact_factorization, FactorizationWitness};
pub use group::{
    center, closure, is_normal, is_subgroup, FiniteGroup, CAYLEY_TABLE_CAP, DEFAULT_ENUMERATION_CAP,
};
pub use label::{iso_label, iso_label_table, named_table};
pub use perm::{compose, Permutation, Point};
pub use table::CayleyTable;

/// Default cap on the group order for automorphism searches.
pub const AUTOMORPHISM_CAP: usize = 48;

/// All automorphisms of an enumerated group as element-index tables.
pub fn automorphism_group(group: &FiniteGroup) -> crate::Result<Vec<Vec<u32>>> {
    automorphism_group_capped(group, AUTOMORPHISM_CAP)
}

pub fn automorphism_group_capped(group: &FiniteGroup, cap: usize) -> crate::Result<Vec<Vec<u32>>> {
    let n = group
        .order()
        .ok_or_else(|| crate::Error::NotEnumerated(group.label().to_string()))?;
    if n > cap {
        return Err(crate::Error::cap(
            format!("automorphisms of {}", group.label()),
            cap,
        ));
    }
    group.cayley()?.automorphisms(cap)
}
