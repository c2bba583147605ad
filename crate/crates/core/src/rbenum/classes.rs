use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use super::{enumerate_rb, Caps};
use crate::error::{Error, Result};
use crate::permcore::{iso_label_table, CayleyTable, FiniteGroup};
use crate::rbcore::{group_label, RbOperator};
use crate::stdgroups::{Family, GroupSpec};

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(parent, a), find(parent, b));
    if a != b {
        parent[a.max(b)] = a.min(b);
    }
}

type PairMap<'a> = Box<dyn Fn(u32, u32) -> (u32, u32) + Sync + 'a>;

/// Orbits of `ops` under the equivalences of operator graphs: `(phi, phi)`
/// for automorphisms `phi`, `(id, conjugation by x)` for generators `x`, and
/// the swap of coordinates, which must act as `B -> B~`. Images outside `ops`
/// are ignored. Classes are lists of positions in `ops`, ordered by their
/// first member.
pub fn equivalence_classes(group: &FiniteGroup, ops: &[RbOperator]) -> Result<Vec<Vec<usize>>> {
    let t = group.cayley()?;
    let graphs: Vec<Vec<(u32, u32)>> = ops
        .iter()
        .map(|op| op.graph().map(|g| g.pairs))
        .collect::<Result<_>>()?;
    let position: HashMap<&[(u32, u32)], usize> = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| (g.as_slice(), i))
        .collect();
    let autos = t.automorphisms(usize::MAX)?;
    let conjugators = t.generating_set();
    let maps: Vec<PairMap<'_>> = autos
        .iter()
        .map(|phi| {
            Box::new(move |a: u32, b: u32| (phi[a as usize], phi[b as usize]))
                as Box<dyn Fn(u32, u32) -> (u32, u32) + Sync>
        })
        .chain(
            conjugators
                .iter()
                .map(|&x| Box::new(move |a: u32, b: u32| (a, t.conj(b, x))) as Box<_>),
        )
        .chain(std::iter::once(Box::new(|a: u32, b: u32| (b, a)) as Box<_>))
        .collect();
    let (position, maps) = (&position, &maps);
    let edges: Vec<(usize, usize)> = graphs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            maps.iter().filter_map(move |f| {
                let mut image: Vec<(u32, u32)> = g.iter().map(|&(a, b)| f(a, b)).collect();
                image.sort_unstable();
                position.get(image.as_slice()).map(|&j| (i, j))
            })
        })
        .collect();
    let mut parent: Vec<usize> = (0..ops.len()).collect();
    for (i, j) in edges {
        union(&mut parent, i, j);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..ops.len() {
        let root = find(&mut parent, i);
        let k = *slot.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(i);
    }
    for class in &classes {
        let rep = &ops[class[0]];
        let mut swapped: Vec<(u32, u32)> = graphs[class[0]].iter().map(|&(a, b)| (b, a)).collect();
        swapped.sort_unstable();
        if swapped != rep.tilde().graph()?.pairs {
            return Err(Error::InvalidOperator(format!(
                "swapping the graph of {} does not give B~",
                rep.provenance()
            )));
        }
    }
    Ok(classes)
}

/// Invariants of one operator, computed from its tables.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Profile {
    splitting: bool,
    r_label: String,
    r_order: usize,
    kernel_invariant: (String, String),
    descendent: String,
    /// `G = ker(X) Im(X)` exactly with `X~` a homomorphism from `Im(X)` onto
    /// `R`, for `X = B` or `X = B~`.
    ker_im_shape: bool,
}

fn members(n: usize, pred: impl Fn(u32) -> bool) -> Vec<u32> {
    (0..n as u32).filter(|&x| pred(x)).collect()
}

fn image(map: &[u32]) -> Vec<u32> {
    let mut v = map.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn shape(t: &CayleyTable, x: &[u32], xt: &[u32], r: &[u32]) -> bool {
    let e = t.identity();
    let ker = members(x.len(), |g| x[g as usize] == e);
    let im = image(x);
    if ker.len() * im.len() != x.len()
        || ker.iter().any(|&k| k != e && im.binary_search(&k).is_ok())
    {
        return false;
    }
    let hom = im.iter().all(|&a| {
        im.iter()
            .all(|&b| xt[t.mul(a, b) as usize] == t.mul(xt[a as usize], xt[b as usize]))
    });
    let onto = image(&im.iter().map(|&a| xt[a as usize]).collect::<Vec<_>>());
    hom && onto == r
}

fn profile(op: &RbOperator, t: &CayleyTable) -> Result<Profile> {
    let b = op
        .table()
        .ok_or_else(|| Error::NotEnumerated(op.provenance().to_string()))?;
    let tilde = op.tilde();
    let bt = tilde.table().expect("table");
    let n = b.len();
    let e = t.identity();
    let (im, im_t) = (image(b), image(bt));
    let r: Vec<u32> = im
        .iter()
        .copied()
        .filter(|x| im_t.binary_search(x).is_ok())
        .collect();
    let label = |set: &[u32]| iso_label_table(&t.subtable(set));
    let (k1, k2) = (
        label(&members(n, |g| b[g as usize] == e)),
        label(&members(n, |g| bt[g as usize] == e)),
    );
    Ok(Profile {
        splitting: b.iter().all(|&x| bt[x as usize] == e),
        r_label: label(&r),
        r_order: r.len(),
        kernel_invariant: if k1 <= k2 { (k1, k2) } else { (k2, k1) },
        descendent: op.descendent_group()?.label,
        ker_im_shape: shape(t, b, bt, &r) || shape(t, bt, b, &r),
    })
}

#[derive(Clone, Debug)]
pub struct ClassSummary {
    pub representative: RbOperator,
    pub size: usize,
    pub splitting: bool,
    pub r_label: String,
    pub kernel_invariant: (String, String),
    pub descendent_label: String,
}

/// A named claim checked against every operator of the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub group_label: String,
    pub total: usize,
    pub splitting: usize,
    pub non_splitting: usize,
    pub classes: Vec<ClassSummary>,
    /// Whether every member of every class shares the representative's
    /// splitting flag, `R`, kernel invariant and descendent group.
    pub orbit_invariants_hold: bool,
    pub checks: Vec<ClassCheck>,
}

impl ClassificationReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn all_checks_hold(&self) -> bool {
        self.orbit_invariants_hold && self.checks.iter().all(|c| c.holds)
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {}", self.group_label)?;
        writeln!(f, "total: {}", self.total)?;
        writeln!(f, "splitting: {}", self.splitting)?;
        writeln!(f, "non_splitting: {}", self.non_splitting)?;
        writeln!(f, "classes: {}", self.classes.len())?;
        for (i, c) in self.classes.iter().enumerate() {
            writeln!(
                f,
                "class {i}: size={} splitting={} R={} ker={},{} descendent={}",
                c.size,
                c.splitting,
                c.r_label,
                c.kernel_invariant.0,
                c.kernel_invariant.1,
                c.descendent_label
            )?;
        }
        writeln!(f, "check orbit_invariants: {}", self.orbit_invariants_hold)?;
        for c in &self.checks {
            writeln!(f, "check {}: {}", c.name, c.holds)?;
        }
        Ok(())
    }
}

/// Enumerates, partitions and summarizes the operators on `group`. When
/// `spec` names a dihedral or generalized quaternion group, the structural
/// claims for that family are checked on every non-splitting operator.
pub fn classify(
    group: &FiniteGroup,
    spec: Option<GroupSpec>,
    caps: &Caps,
) -> Result<ClassificationReport> {
    let ops = enumerate_rb(group, caps)?;
    let t = group.cayley()?;
    let profiles: Vec<Profile> = ops
        .par_iter()
        .map(|op| profile(op, t))
        .collect::<Result<_>>()?;
    let classes = equivalence_classes(group, &ops)?;
    let orbit_invariants_hold = classes.iter().all(|c| {
        c.iter()
            .all(|&i| same_class_data(&profiles[i], &profiles[c[0]]))
    });
    let splitting = profiles.iter().filter(|p| p.splitting).count();
    let non_split: Vec<&Profile> = profiles.iter().filter(|p| !p.splitting).collect();
    let mut checks = Vec::new();
    let mut check = |name: &str, holds: bool| {
        checks.push(ClassCheck {
            name: name.to_string(),
            holds,
        })
    };
    if let Some(spec) = spec {
        match spec.family {
            Family::Dihedral if spec.parameter % 2 == 1 => {
                check("odd_dihedral_all_splitting", non_split.is_empty())
            }
            Family::Dihedral => {
                check(
                    "r_is_z2_or_klein",
                    non_split
                        .iter()
                        .all(|p| p.r_label == "Z2" || p.r_label == "Z2xZ2"),
                );
                check(
                    "ker_im_shape_up_to_tilde",
                    non_split.iter().all(|p| p.ker_im_shape),
                );
            }
            Family::GeneralizedQuaternion if spec.parameter % 2 == 1 => {
                check(
                    "odd_quaternion_r_order_2",
                    non_split.iter().all(|p| p.r_order == 2),
                );
            }
            _ => {}
        }
    }
    let classes = classes
        .into_iter()
        .map(|c| {
            let p = &profiles[c[0]];
            ClassSummary {
                representative: ops[c[0]].clone(),
                size: c.len(),
                splitting: p.splitting,
                r_label: p.r_label.clone(),
                kernel_invariant: p.kernel_invariant.clone(),
                descendent_label: p.descendent.clone(),
            }
        })
        .collect();
    Ok(ClassificationReport {
        group_label: group_label(group),
        total: ops.len(),
        splitting,
        non_splitting: ops.len() - splitting,
        classes,
        orbit_invariants_hold,
        checks,
    })
}

fn same_class_data(a: &Profile, b: &Profile) -> bool {
    a.splitting == b.splitting
        && a.r_label == b.r_label
        && a.kernel_invariant == b.kernel_invariant
        && a.descendent == b.descendent
}
