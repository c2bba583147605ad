//! Named group families: cyclic, dihedral, generalized quaternion, symmetric,
//! alternating and the Klein four-group.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::permcore::{CayleyTable, FiniteGroup, Permutation, DEFAULT_ENUMERATION_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic,
    Dihedral,
    GeneralizedQuaternion,
    Symmetric,
    Alternating,
    Klein,
}

/// A family and its parameter. Dihedral `n` has order `2n`, generalized
/// quaternion `n` has order `4n`; the others act on `n` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub parameter: usize,
}

impl GroupSpec {
    pub fn new(family: Family, parameter: usize) -> Result<Self> {
        let ok = match family {
            Family::Cyclic | Family::Dihedral | Family::Symmetric => parameter >= 1,
            Family::GeneralizedQuaternion => parameter >= 2,
            Family::Alternating => parameter >= 3,
            Family::Klein => parameter == 4,
        };
        if !ok {
            return Err(Error::precondition(
                "group parameter",
                format!("{family:?} does not accept {parameter}"),
            ));
        }
        Ok(GroupSpec { family, parameter })
    }

    pub fn dihedral(n: usize) -> Self {
        GroupSpec::new(Family::Dihedral, n).expect("n >= 1")
    }

    pub fn quaternion(n: usize) -> Self {
        GroupSpec::new(Family::GeneralizedQuaternion, n).expect("n >= 2")
    }

    /// Group order, when it fits in a `usize`.
    pub fn order(&self) -> Option<usize> {
        let n = self.parameter;
        match self.family {
            Family::Cyclic => Some(n),
            Family::Dihedral => Some(2 * n),
            Family::GeneralizedQuaternion => Some(4 * n),
            Family::Symmetric => (1..=n).try_fold(1usize, |a, k| a.checked_mul(k)),
            Family::Alternating => (3..=n).try_fold(1usize, |a, k| a.checked_mul(k)),
            Family::Klein => Some(4),
        }
    }

    pub fn label(&self) -> String {
        let n = self.parameter;
        match self.family {
            Family::Cyclic => format!("Z{n}"),
            Family::Dihedral => format!("D{}", 2 * n),
            Family::GeneralizedQuaternion => format!("Q{}", 4 * n),
            Family::Symmetric => format!("S{n}"),
            Family::Alternating => format!("A{n}"),
            Family::Klein => "V4".to_string(),
        }
    }
}

/// Parses `D:2n`, `Q:4n`, `S:n`, `A:n`, `Z:n` and `V:4`.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (fam, num) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group specifier `{s}` (expected e.g. D:8)")))?;
        let k: usize = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("group specifier `{s}`")))?;
        let bad = || Error::Parse(format!("order in `{s}` does not fit the family"));
        match fam.trim() {
            "D" if k.is_multiple_of(2) && k >= 2 => GroupSpec::new(Family::Dihedral, k / 2),
            "Q" if k.is_multiple_of(4) && k >= 8 => {
                GroupSpec::new(Family::GeneralizedQuaternion, k / 4)
            }
            "S" => GroupSpec::new(Family::Symmetric, k),
            "A" => GroupSpec::new(Family::Alternating, k),
            "Z" => GroupSpec::new(Family::Cyclic, k),
            "V" => GroupSpec::new(Family::Klein, k),
            "D" | "Q" => Err(bad()),
            other => Err(Error::Unknown(format!("group family `{other}`"))),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, k) = match self.family {
            Family::Cyclic => ('Z', self.parameter),
            Family::Dihedral => ('D', 2 * self.parameter),
            Family::GeneralizedQuaternion => ('Q', 4 * self.parameter),
            Family::Symmetric => ('S', self.parameter),
            Family::Alternating => ('A', self.parameter),
            Family::Klein => ('V', 4),
        };
        write!(f, "{c}:{k}")
    }
}

/// A built group with the presentation generators `r`, `s` where the family has them.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
    pub r: Option<Permutation>,
    pub s: Option<Permutation>,
}

pub fn build(spec: GroupSpec) -> Result<BuiltGroup> {
    build_with_cap(spec, DEFAULT_ENUMERATION_CAP)
}

/// Builds the group; large symmetric and alternating groups stay generator-only.
pub fn build_with_cap(spec: GroupSpec, cap: usize) -> Result<BuiltGroup> {
    let spec = GroupSpec::new(spec.family, spec.parameter)?;
    let n = spec.parameter;
    let label = spec.label();
    let cyc = |deg: usize, cs: &[&[usize]]| Permutation::from_cycles(deg, cs);
    let built = match spec.family {
        Family::Cyclic => {
            let r = cyc(n, &[&(0..n).collect::<Vec<_>>()])?;
            let group = FiniteGroup::generate(&label, n, vec![r.clone()], cap)?;
            BuiltGroup {
                spec,
                group,
                r: Some(r),
                s: None,
            }
        }
        Family::Dihedral if n >= 3 => {
            let r = cyc(n, &[&(0..n).collect::<Vec<_>>()])?;
            let s = Permutation::from_images((0..n).map(|i| (n - i) % n))?;
            let group = FiniteGroup::generate(&label, n, vec![r.clone(), s.clone()], cap)?;
            BuiltGroup {
                spec,
                group,
                r: Some(r),
                s: Some(s),
            }
        }
        Family::Dihedral => {
            // regular representation of <r> x <s> with r of order n
            let t = CayleyTable::metacyclic(n, 2, 0, n - 1)?;
            regular(spec, &t, 1 % n as u32, n as u32)
        }
        Family::GeneralizedQuaternion => {
            let t = CayleyTable::metacyclic(2 * n, 2, n, 2 * n - 1)?;
            regular(spec, &t, 1, 2 * n as u32)
        }
        Family::Symmetric => {
            let mut gens = vec![cyc(n, &[&(0..n).collect::<Vec<_>>()])?];
            if n >= 2 {
                gens.push(cyc(n, &[&[0, 1]])?);
            }
            BuiltGroup {
                spec,
                group: FiniteGroup::generate_or_handle(&label, n, gens, cap)?,
                r: None,
                s: None,
            }
        }
        Family::Alternating => BuiltGroup {
            spec,
            group: FiniteGroup::generate_or_handle(&label, n, alternating_generators(n), cap)?,
            r: None,
            s: None,
        },
        Family::Klein => {
            let gens = vec![cyc(4, &[&[0, 1], &[2, 3]])?, cyc(4, &[&[0, 2], &[1, 3]])?];
            BuiltGroup {
                spec,
                group: FiniteGroup::generate(&label, 4, gens, cap)?,
                r: None,
                s: None,
            }
        }
    };
    check_relations(&built)?;
    Ok(built)
}

/// Standard generators of `A_n`: a 3-cycle and an (n or n-1)-cycle.
pub fn alternating_generators(n: usize) -> Vec<Permutation> {
    assert!(n >= 3);
    let three = Permutation::from_cycles(n, &[&[0, 1, 2]]).expect("3-cycle");
    let long: Vec<usize> = if n % 2 == 1 {
        (0..n).collect()
    } else {
        (1..n).collect()
    };
    vec![
        three,
        Permutation::from_cycles(n, &[&long]).expect("long cycle"),
    ]
}

fn regular(spec: GroupSpec, t: &CayleyTable, r: u32, s: u32) -> BuiltGroup {
    let n = t.order();
    let perm_of = |g: u32| {
        Permutation::from_images((0..n as u32).map(|x| t.mul(x, g))).expect("regular action")
    };
    let (r, s) = (perm_of(r), perm_of(s));
    let group = FiniteGroup::generate(&spec.label(), n, vec![r.clone(), s.clone()], n)
        .expect("regular group");
    BuiltGroup {
        spec,
        group,
        r: Some(r),
        s: Some(s),
    }
}

fn check_relations(b: &BuiltGroup) -> Result<()> {
    let n = b.spec.parameter as i64;
    let fail = |what: &str| {
        Err(Error::precondition(
            "presentation",
            format!("{} fails {what}", b.spec.label()),
        ))
    };
    if let Some(order) = b.spec.order() {
        if b.group.is_enumerated() && b.group.order() != Some(order) {
            return fail("the order formula");
        }
    }
    let (Some(r), Some(s)) = (&b.r, &b.s) else {
        return Ok(());
    };
    let e = b.group.identity();
    let r_inv = r.inverse();
    match b.spec.family {
        Family::Dihedral => {
            if r.pow(n) != e || s.pow(2) != e {
                return fail("r^n = s^2 = e");
            }
        }
        Family::GeneralizedQuaternion if (r.pow(2 * n) != e || s.pow(2) != r.pow(n)) => {
            return fail("r^2n = e, s^2 = r^n");
        }
        _ => {}
    }
    if s.conjugate_of(r) != r_inv {
        return fail("r^s = r^-1");
    }
    Ok(())
}

/// Direct product acting on the disjoint union of the two domains.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (da, db) = (a.degree(), b.degree());
    let lift = |p: &Permutation, offset: usize, total: usize| {
        let mut images: Vec<usize> = (0..total).collect();
        for i in 0..p.degree() {
            images[offset + i] = offset + p.apply(i);
        }
        Permutation::from_images(images)
    };
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(lift(g, 0, da + db)?);
    }
    for g in b.generators() {
        gens.push(lift(g, da, da + db)?);
    }
    let cap =
        a.order().unwrap_or(DEFAULT_ENUMERATION_CAP) * b.order().unwrap_or(DEFAULT_ENUMERATION_CAP);
    FiniteGroup::generate(
        &format!("{}x{}", a.label(), b.label()),
        da + db,
        gens,
        cap.max(1),
    )
}

/// The groups of order at most 8 used for cross-checks: Z2, Z3, Z4, Z2xZ2,
/// Z5, Z6, S3, Z7, Z8, Z4xZ2, Z2xZ2xZ2, D8, Q8.
pub fn small_catalog() -> Vec<FiniteGroup> {
    let z = |n| {
        build(GroupSpec::new(Family::Cyclic, n).unwrap())
            .unwrap()
            .group
    };
    let klein = build(GroupSpec::new(Family::Klein, 4).unwrap())
        .unwrap()
        .group
        .with_label("Z2xZ2");
    let z4z2 = direct_product(&z(4), &z(2)).unwrap().with_label("Z4xZ2");
    let z2cubed = direct_product(&klein, &z(2))
        .unwrap()
        .with_label("Z2xZ2xZ2");
    vec![
        z(2),
        z(3),
        z(4),
        klein,
        z(5),
        z(6),
        build(GroupSpec::dihedral(3))
            .unwrap()
            .group
            .with_label("S3"),
        z(7),
        z(8),
        z4z2,
        z2cubed,
        build(GroupSpec::dihedral(4)).unwrap().group,
        build(GroupSpec::quaternion(2)).unwrap().group,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::iso_label;

    #[test]
    fn orders_and_labels() {
        let d6 = build(GroupSpec::dihedral(3)).unwrap();
        assert_eq!(d6.group.order(), Some(6));
        assert_eq!(iso_label(&d6.group), "S3");
        let q60 = build(GroupSpec::quaternion(15)).unwrap();
        assert_eq!(q60.group.order(), Some(60));
        let (r, s) = (q60.r.unwrap(), q60.s.unwrap());
        assert_eq!(s.pow(2), r.pow(15));
        let a4 = build(GroupSpec::new(Family::Alternating, 4).unwrap()).unwrap();
        assert_eq!(a4.group.order(), Some(12));
        assert_eq!(iso_label(&a4.group), "A4");
    }

    #[test]
    fn presentations_hold_up_to_thirty() {
        for n in 1..=30 {
            let d = build(GroupSpec::dihedral(n)).unwrap();
            assert_eq!(d.group.order(), Some(2 * n));
            if n >= 2 {
                let q = build(GroupSpec::quaternion(n)).unwrap();
                assert_eq!(q.group.order(), Some(4 * n));
            }
        }
    }

    #[test]
    fn alternating_orders() {
        let mut fact = 1usize;
        for n in 1..=8 {
            fact *= n;
            if n >= 3 {
                let a =
                    build_with_cap(GroupSpec::new(Family::Alternating, n).unwrap(), 30000).unwrap();
                assert_eq!(a.group.order(), Some(fact / 2));
            }
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        for n in 2..=15 {
            let q = build(GroupSpec::quaternion(n)).unwrap();
            let invols: Vec<_> = q
                .group
                .elements()
                .unwrap()
                .iter()
                .filter(|p| p.order() == 2)
                .collect();
            assert_eq!(invols, vec![&q.r.as_ref().unwrap().pow(n as i64)]);
        }
    }

    #[test]
    fn specifiers() {
        assert_eq!("D:8".parse::<GroupSpec>().unwrap(), GroupSpec::dihedral(4));
        assert_eq!(
            "Q:12".parse::<GroupSpec>().unwrap(),
            GroupSpec::quaternion(3)
        );
        assert_eq!(GroupSpec::quaternion(3).to_string(), "Q:12");
        assert!("D:7".parse::<GroupSpec>().is_err());
        assert!("X:3".parse::<GroupSpec>().is_err());
        assert!(GroupSpec::new(Family::Alternating, 2).is_err());
    }

    #[test]
    fn small_catalog_labels() {
        let labels: Vec<String> = small_catalog().iter().map(iso_label).collect();
        assert_eq!(
            labels,
            [
                "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z4xZ2", "Z2xZ2xZ2", "D8",
                "Q8"
            ]
        );
    }
}
