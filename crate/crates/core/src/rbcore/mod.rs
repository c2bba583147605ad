//! Rota-Baxter operators: verification, derived operators, images and graphs.

mod derived;
pub mod format;
mod graph;
pub mod properties;
mod verify;

use std::any::Any;
use std::fmt;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::permcore::{iso_label, FiniteGroup, Permutation, CAYLEY_TABLE_CAP};

pub use derived::{Descendent, Images};
pub(crate) use graph::graph_table;
pub use graph::GraphSubgroup;
pub use verify::{Verdict, VerifyMode, DEFAULT_SEED};

/// Groups up to this order are fully verified when an operator is built from a table.
pub const VERIFY_AT_CONSTRUCTION_CAP: usize = 1024;

/// Evaluation rule for operators on groups too large to tabulate.
pub trait ProceduralRule: Send + Sync + fmt::Debug {
    fn apply(&self, g: &Permutation) -> Permutation;
    /// Membership in the underlying group.
    fn contains(&self, g: &Permutation) -> bool;
    /// A uniformly random element of the underlying group.
    fn random_element(&self, rng: &mut ChaCha8Rng) -> Permutation;
    /// Kernels and images, known from the construction.
    fn structure(&self) -> Images;
    fn descriptor(&self) -> String;
    /// The inner rule, when this rule is itself a tilde.
    fn untilde(&self) -> Option<Arc<dyn ProceduralRule>> {
        None
    }
    /// Access to the concrete rule, for callers that know its type.
    fn as_any(&self) -> Option<&dyn Any> {
        None
    }
}

#[derive(Clone, Debug)]
pub enum Body {
    /// `table[i]` is the index of `B(g_i)` in the canonical element list.
    Table(Arc<[u32]>),
    Procedural(Arc<dyn ProceduralRule>),
}

/// A map `B: G -> G` together with how it was built.
#[derive(Clone)]
pub struct RbOperator {
    group: FiniteGroup,
    body: Body,
    provenance: String,
}

impl RbOperator {
    /// Builds a table operator, checking the identity on every pair when
    /// `|G| <= VERIFY_AT_CONSTRUCTION_CAP`.
    pub fn from_table(group: &FiniteGroup, table: Vec<u32>, provenance: &str) -> Result<Self> {
        let op = Self::from_table_unchecked(group, table, provenance)?;
        if op.order() <= VERIFY_AT_CONSTRUCTION_CAP {
            let verdict = op.verify(VerifyMode::Full)?;
            if !verdict.pass {
                return Err(Error::InvalidOperator(format!("{provenance}: {verdict}")));
            }
        }
        Ok(op)
    }

    /// Builds a table operator without checking the Rota-Baxter identity.
    pub fn from_table_unchecked(
        group: &FiniteGroup,
        table: Vec<u32>,
        provenance: &str,
    ) -> Result<Self> {
        let n = group
            .order()
            .ok_or_else(|| Error::NotEnumerated(group.label().to_string()))?;
        if table.len() != n || table.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvalidOperator(format!(
                "{provenance}: table does not fit a group of order {n}"
            )));
        }
        Ok(RbOperator {
            group: group.clone(),
            body: Body::Table(table.into()),
            provenance: provenance.to_string(),
        })
    }

    /// Tabulates `f` over the group and checks the result.
    pub fn from_fn(
        group: &FiniteGroup,
        provenance: &str,
        f: impl Fn(&Permutation) -> Permutation,
    ) -> Result<Self> {
        let table = group
            .elements()?
            .iter()
            .map(|g| group.require_index(&f(g)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(group, table, provenance)
    }

    pub fn procedural(
        group: &FiniteGroup,
        rule: Arc<dyn ProceduralRule>,
        provenance: &str,
    ) -> Self {
        RbOperator {
            group: group.clone(),
            body: Body::Procedural(rule),
            provenance: provenance.to_string(),
        }
    }

    /// `B_e: g -> e`.
    pub fn trivial_be(group: &FiniteGroup) -> Result<Self> {
        let e = group.identity_index();
        Self::from_table_unchecked(group, vec![e; group.order().unwrap_or(0)], "trivial e")
    }

    /// `B_-1: g -> g^-1`.
    pub fn trivial_binv(group: &FiniteGroup) -> Result<Self> {
        let n = group
            .order()
            .ok_or_else(|| Error::NotEnumerated(group.label().to_string()))?;
        let table = (0..n as u32).map(|g| group.inv_index(g)).collect();
        Self::from_table_unchecked(group, table, "trivial inverse")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: &str) -> Self {
        self.provenance = provenance.to_string();
        self
    }

    /// Group order (table operators only; 0 for procedural ones).
    pub fn order(&self) -> usize {
        self.group.order().unwrap_or(0)
    }

    pub fn table(&self) -> Option<&[u32]> {
        match &self.body {
            Body::Table(t) => Some(t),
            Body::Procedural(_) => None,
        }
    }

    pub(crate) fn require_table(&self) -> Result<&[u32]> {
        self.table().ok_or_else(|| {
            Error::NotEnumerated(format!("procedural operator on {}", self.group.label()))
        })
    }

    pub fn rule(&self) -> Option<&Arc<dyn ProceduralRule>> {
        match &self.body {
            Body::Procedural(r) => Some(r),
            Body::Table(_) => None,
        }
    }

    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        match &self.body {
            Body::Table(t) => {
                let i = self.group.require_index(g)?;
                Ok(self.group.element(t[i as usize]).clone())
            }
            Body::Procedural(rule) => {
                if g.degree() != self.group.degree() {
                    return Err(Error::DomainMismatch(self.group.degree(), g.degree()));
                }
                if !rule.contains(g) {
                    return Err(Error::NotInGroup(format!(
                        "{} not in {}",
                        g.cycle_string(),
                        self.group.label()
                    )));
                }
                Ok(rule.apply(g))
            }
        }
    }

    /// Table lookup by element index. Panics for procedural operators.
    #[inline]
    pub fn apply_index(&self, g: u32) -> u32 {
        match &self.body {
            Body::Table(t) => t[g as usize],
            Body::Procedural(_) => panic!("apply_index on a procedural operator"),
        }
    }

    /// `B_+(g) = g B(g)`.
    pub fn bplus(&self, g: &Permutation) -> Result<Permutation> {
        Ok(g * &self.apply(g)?)
    }

    /// The descendent product `g o h = g B(g) h B(g)^-1`.
    pub fn circ(&self, g: &Permutation, h: &Permutation) -> Result<Permutation> {
        let b = self.apply(g)?;
        Ok(&(&(g * &b) * h) * &b.inverse())
    }

    /// `{label(ker B), label(ker B~)}`, sorted.
    pub fn kernel_invariant(&self) -> Result<(String, String)> {
        let im = self.images()?;
        let (a, b) = (group_label(&im.ker), group_label(&im.ker_tilde));
        Ok(if a <= b { (a, b) } else { (b, a) })
    }
}

/// Isomorphism label when the group is small enough to tabulate; otherwise
/// the label it was built with.
pub fn group_label(g: &FiniteGroup) -> String {
    match g.order() {
        Some(n) if n <= CAYLEY_TABLE_CAP => iso_label(g),
        _ => g.label().to_string(),
    }
}

impl fmt::Debug for RbOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RbOperator")
            .field("group", &self.group.label())
            .field("provenance", &self.provenance)
            .field("table", &self.table())
            .finish()
    }
}

/// Table operators compare by group and table; procedural ones by descriptor.
impl PartialEq for RbOperator {
    fn eq(&self, other: &Self) -> bool {
        if self.group != other.group {
            return false;
        }
        match (&self.body, &other.body) {
            (Body::Table(a), Body::Table(b)) => a == b,
            (Body::Procedural(a), Body::Procedural(b)) => a.descriptor() == b.descriptor(),
            _ => false,
        }
    }
}
