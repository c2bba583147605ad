//! Operator constructions: splitting operators of exact factorizations,
//! homomorphisms into abelian subgroups, extensions over factorizations,
//! the index-2 construction, and a catalog of worked examples.

use crate::error::{Error, Result};
use crate::permcore::{exact_factorization, FactorizationWitness, FiniteGroup, Permutation};
use crate::rbcore::RbOperator;
use crate::stdgroups::{build, Family, GroupSpec};

/// `B(hl) = l^-1` for an exact factorization `G = HL`.
pub fn from_factorization(w: &FactorizationWitness) -> Result<RbOperator> {
    w.require_exact()?;
    let g = &w.group;
    let n = g.order().expect("enumerated");
    let table = (0..n as u32)
        .map(|x| {
            let (_, l) = w.decompose_index(x)?;
            g.require_index(&w.right.element(l).inverse())
        })
        .collect::<Result<Vec<_>>>()?;
    RbOperator::from_table(
        g,
        table,
        &format!(
            "split {} = {} {}",
            g.label(),
            w.left.label(),
            w.right.label()
        ),
    )
}

/// The homomorphism determined by `gens[i] -> images[i]`, whose image must be
/// an abelian subgroup.
pub fn from_homomorphism(
    group: &FiniteGroup,
    gens: &[Permutation],
    images: &[Permutation],
    provenance: &str,
) -> Result<RbOperator> {
    if gens.len() != images.len() {
        return Err(Error::precondition(
            "homomorphism",
            "generator and image lists differ in length",
        ));
    }
    let t = group.cayley()?;
    let gi: Vec<u32> = gens
        .iter()
        .map(|p| group.require_index(p))
        .collect::<Result<_>>()?;
    let ii: Vec<u32> = images
        .iter()
        .map(|p| group.require_index(p))
        .collect::<Result<_>>()?;
    if t.generate(&gi).len() != t.order() {
        return Err(Error::precondition(
            "homomorphism",
            "the given elements do not generate the group",
        ));
    }
    let map = t.extend_homomorphism(t, &gi, &ii).ok_or_else(|| {
        Error::precondition(
            "homomorphism",
            "the assignment does not extend to a homomorphism",
        )
    })?;
    from_endomorphism_table(group, map, provenance)
}

/// A homomorphism given as a full index table.
pub fn from_endomorphism_table(
    group: &FiniteGroup,
    map: Vec<u32>,
    provenance: &str,
) -> Result<RbOperator> {
    let t = group.cayley()?;
    let n = t.order() as u32;
    if map.len() != n as usize {
        return Err(Error::precondition(
            "homomorphism",
            "table has the wrong length",
        ));
    }
    for a in 0..n {
        for b in 0..n {
            if map[t.mul(a, b) as usize] != t.mul(map[a as usize], map[b as usize]) {
                return Err(Error::precondition(
                    "homomorphism",
                    "the map does not preserve products",
                ));
            }
        }
    }
    let mut image = map.clone();
    image.sort_unstable();
    image.dedup();
    if !image
        .iter()
        .all(|&x| image.iter().all(|&y| t.mul(x, y) == t.mul(y, x)))
    {
        return Err(Error::precondition(
            "abelian image",
            "the image is not abelian",
        ));
    }
    RbOperator::from_table(group, map, provenance)
}

/// `B(hl) = C(l)` for an exact factorization `G = HL` and an operator `C` on
/// `L` such that `Im(C~)` normalizes `H`.
pub fn extend_over_factorization(w: &FactorizationWitness, c: &RbOperator) -> Result<RbOperator> {
    w.require_exact()?;
    if c.group() != &w.right {
        return Err(Error::precondition(
            "operator domain",
            "C must act on the right factor",
        ));
    }
    let g = &w.group;
    let ct = c.tilde();
    for x in w.right.elements()? {
        let y = ct.apply(x)?;
        for h in w.left.elements()? {
            if !w.left.contains(&y.conjugate_of(h)) {
                return Err(Error::precondition(
                    "Im(C~) normalizes H",
                    format!(
                        "{} conjugates {} out of H",
                        y.cycle_string(),
                        h.cycle_string()
                    ),
                ));
            }
        }
    }
    let n = g.order().expect("enumerated");
    let table = (0..n as u32)
        .map(|x| {
            let (_, l) = w.decompose_index(x)?;
            g.require_index(&c.apply(w.right.element(l))?)
        })
        .collect::<Result<Vec<_>>>()?;
    RbOperator::from_table(
        g,
        table,
        &format!("extend {} over {}", c.provenance(), w.left.label()),
    )
}

/// `B(kl) = l^-1 r^d(l)`, where `d` indicates the nontrivial coset of `S` in `L`.
pub fn index2_construction(
    g: &FiniteGroup,
    k: &FiniteGroup,
    l: &FiniteGroup,
    s: &FiniteGroup,
    t: &Permutation,
    r: &Permutation,
) -> Result<RbOperator> {
    let w = exact_factorization(g, k, l)?;
    if !w.exact {
        return Err(Error::precondition(
            "exact factorization",
            format!("{} is not exactly {} {}", g.label(), k.label(), l.label()),
        ));
    }
    let (ls, ss) = (l.elements()?, s.elements()?);
    if !s.is_subset_of(l)? || 2 * ss.len() != ls.len() {
        return Err(Error::precondition(
            "S has index 2 in L",
            format!("|S| = {}, |L| = {}", ss.len(), ls.len()),
        ));
    }
    if !l.contains(t) || s.contains(t) {
        return Err(Error::precondition("t in L minus S", t.cycle_string()));
    }
    if !l.contains(r) {
        return Err(Error::precondition("r in L", r.cycle_string()));
    }
    if !r.pow(2).is_identity() {
        return Err(Error::precondition("r is an involution", r.cycle_string()));
    }
    for h in k.generators() {
        if !k.contains(&r.conjugate_of(h)) {
            return Err(Error::precondition(
                "r normalizes K",
                format!(
                    "{} conjugates {} out of K",
                    r.cycle_string(),
                    h.cycle_string()
                ),
            ));
        }
    }
    let e = g.identity();
    let twist = |x: &Permutation| if s.contains(x) { e.clone() } else { r.clone() };
    for a in ls {
        for b in ls {
            if twist(&(a * b)) != &twist(a) * &twist(b) {
                return Err(Error::precondition(
                    "delta homomorphism",
                    format!("fails at ({}, {})", a.cycle_string(), b.cycle_string()),
                ));
            }
        }
    }
    let n = g.order().expect("enumerated");
    let table = (0..n as u32)
        .map(|x| {
            let (_, li) = w.decompose_index(x)?;
            let lp = l.element(li);
            g.require_index(&(&lp.inverse() * &twist(lp)))
        })
        .collect::<Result<Vec<_>>>()?;
    RbOperator::from_table(
        g,
        table,
        &format!(
            "index2 K={} L={} S={} r={}",
            k.label(),
            l.label(),
            s.label(),
            r.cycle_string()
        ),
    )
}

/// Names accepted by [`named_example`]; `d2n_klein` takes an even `n >= 4`,
/// written `d2n_klein(10)`.
pub const EXAMPLE_NAMES: [&str; 7] = ["s3", "a4_b1", "a4_b2", "d16", "d2n_klein(n)", "d60", "q60"];

pub fn named_example(name: &str) -> Result<RbOperator> {
    let name = name.trim();
    if let Some(arg) = name.strip_prefix("d2n_klein") {
        let n: usize = arg
            .trim_matches(|c| c == '(' || c == ')' || c == ':')
            .parse()
            .map_err(|_| Error::Unknown(name.to_string()))?;
        if n < 4 || n % 2 == 1 {
            return Err(Error::precondition(
                "d2n_klein",
                format!("n = {n} must be even and at least 4"),
            ));
        }
        let d = build(GroupSpec::dihedral(n))?;
        return klein_operator(&d.group, d.r.as_ref().unwrap(), d.s.as_ref().unwrap(), n)
            .map(|op| op.with_provenance(&format!("example d2n_klein({n})")));
    }
    let op = match name {
        "s3" => s3_example()?,
        "a4_b1" => {
            let (a4, h, v) = a4_parts()?;
            from_factorization(&exact_factorization(&a4, &h, &v)?)?
        }
        "a4_b2" => {
            let (a4, h, v) = a4_parts()?;
            let w = exact_factorization(&a4, &v, &h)?;
            let map = (0..12u32)
                .map(|x| a4.require_index(h.element(w.decompose_index(x)?.1)))
                .collect::<Result<Vec<_>>>()?;
            from_endomorphism_table(&a4, map, "a4_b2")?
        }
        "d16" => d16_example()?,
        "d60" => {
            let d = build(GroupSpec::dihedral(30))?;
            let (r, s) = (d.r.unwrap(), d.s.unwrap());
            let h = d.group.subgroup_generated("<r^10>", &[r.pow(10)])?;
            let l = d
                .group
                .subgroup_generated("<r^3,s>", &[r.pow(3), s.clone()])?;
            let c = klein_operator(&l, &r.pow(3), &s, 10)?;
            extend_over_factorization(&exact_factorization(&d.group, &h, &l)?, &c)?
        }
        "q60" => {
            let q = build(GroupSpec::quaternion(15))?;
            let (r, s) = (q.r.unwrap(), q.s.unwrap());
            let h = q.group.subgroup_generated("<r^10>", &[r.pow(10)])?;
            let l = q
                .group
                .subgroup_generated("<r^3,s>", &[r.pow(3), s.clone()])?;
            let ct =
                from_homomorphism(&l, &[r.pow(3), s.clone()], &[l.identity(), r.pow(15)], "C~")?;
            extend_over_factorization(&exact_factorization(&q.group, &h, &l)?, &ct.tilde())?
        }
        _ => return Err(Error::Unknown(format!("example `{name}`"))),
    };
    Ok(op.with_provenance(&format!("example {name}")))
}

/// `tilde(phi)` for the homomorphism `phi: r -> r^(n/2) s, s -> r^(n/2)` of a
/// dihedral group of order `2n` onto a Klein four-group.
pub fn klein_operator(
    group: &FiniteGroup,
    r: &Permutation,
    s: &Permutation,
    n: usize,
) -> Result<RbOperator> {
    let half = r.pow(n as i64 / 2);
    let phi = from_homomorphism(
        group,
        &[r.clone(), s.clone()],
        &[&half * s, half.clone()],
        "klein",
    )?;
    Ok(phi.tilde())
}

fn s3_example() -> Result<RbOperator> {
    let s3 = build(GroupSpec::new(Family::Symmetric, 3)?)?.group;
    let target = Permutation::from_cycles(3, &[&[1, 2]])?;
    RbOperator::from_fn(&s3, "s3", |g| {
        if g.order() == 2 {
            target.clone()
        } else {
            s3.identity()
        }
    })
}

/// `A4`, `<(1 2 3)>` and the Klein subgroup, on points `0..4`.
fn a4_parts() -> Result<(FiniteGroup, FiniteGroup, FiniteGroup)> {
    let a4 = build(GroupSpec::new(Family::Alternating, 4)?)?.group;
    let h = a4.subgroup_generated("<(1 2 3)>", &[Permutation::from_cycles(4, &[&[1, 2, 3]])?])?;
    let v = a4.subgroup_generated(
        "V4",
        &[
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?,
            Permutation::from_cycles(4, &[&[0, 2], &[1, 3]])?,
        ],
    )?;
    Ok((a4, h, v))
}

fn d16_example() -> Result<RbOperator> {
    let d = build(GroupSpec::dihedral(8))?;
    let (r, s) = (d.r.unwrap(), d.s.unwrap());
    let h = d
        .group
        .subgroup_generated("<s>", std::slice::from_ref(&s))?;
    let rs = &r * &s;
    let l = d
        .group
        .subgroup_generated("<r^2,rs>", &[r.pow(2), rs.clone()])?;
    // C: L -> <r^4> with kernel <r^4, rs>
    let c = from_homomorphism(&l, &[r.pow(2), rs], &[r.pow(4), l.identity()], "C")?;
    let dd = extend_over_factorization(&exact_factorization(&d.group, &h, &l)?, &c.tilde())?;
    Ok(dd.tilde())
}
