use rbgroups::permcore::{exact_factorization, iso_label, FiniteGroup, Permutation};
use rbgroups::rbbuild::{
    extend_over_factorization, from_factorization, from_homomorphism, index2_construction,
    klein_operator, named_example,
};
use rbgroups::rbcore::{properties, RbOperator};
use rbgroups::stdgroups::{build, Family, GroupSpec};
use rbgroups::Error;

fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cs).unwrap()
}

fn assert_properties(op: &RbOperator) {
    let failed = properties::check_all(op);
    assert!(failed.is_empty(), "{}: {failed:?}", op.provenance());
}

#[test]
fn s3_example_table() {
    let b = named_example("s3").unwrap();
    let t12 = cyc(3, &[&[0, 1]]);
    assert_eq!(b.apply(&t12).unwrap(), cyc(3, &[&[1, 2]]));
    assert!(b.apply(&cyc(3, &[&[0, 1, 2]])).unwrap().is_identity());
    assert_eq!(b.descendent_group().unwrap().label, "Z6");
    let im = b.images().unwrap();
    assert_eq!(im.ker.elements().unwrap().len(), 3);
    assert!(im.ker.contains(&cyc(3, &[&[0, 1, 2]])));
    assert_eq!(
        im.ker_tilde.elements().unwrap(),
        &[Permutation::identity(3), cyc(3, &[&[1, 2]])]
    );
    assert_eq!(
        b.kernel_invariant().unwrap(),
        ("Z2".to_string(), "Z3".to_string())
    );
    assert!(b.is_splitting().unwrap());
    assert_properties(&b);
}

#[test]
fn a4_examples() {
    let b1 = named_example("a4_b1").unwrap();
    assert!(b1.is_splitting().unwrap());
    assert_properties(&b1);
    let b2 = named_example("a4_b2").unwrap();
    assert!(!b2.is_splitting().unwrap());
    assert_eq!(iso_label(&b2.images().unwrap().r), "Z3");
    // B_+(v c^k) = v c^2k is injective, so the descendent group embeds in A4
    assert_eq!(b2.descendent_group().unwrap().label, "A4");
    assert_eq!(b1.descendent_group().unwrap().label, "Z6xZ2");
    assert_properties(&b2);
}

#[test]
fn d16_example_values() {
    let d = build(GroupSpec::dihedral(8)).unwrap();
    let (r, s) = (d.r.unwrap(), d.s.unwrap());
    let b = named_example("d16").unwrap();
    let bt = b.tilde();
    let bbt = b.apply(&bt.apply(&r).unwrap()).unwrap();
    let btb = bt.apply(&b.apply(&r).unwrap()).unwrap();
    assert_eq!(bbt, r.pow(4));
    assert!(btb.is_identity());
    assert_eq!(bt.apply(&r).unwrap(), &r.pow(3) * &s);
    let im = b.images().unwrap();
    assert_eq!(im.ker_tilde.elements().unwrap().len(), 2);
    assert!(im.ker_tilde.contains(&s));
    assert_properties(&b);
}

#[test]
fn d16_decomposition() {
    let d = build(GroupSpec::dihedral(8)).unwrap();
    let (r, s) = (d.r.unwrap(), d.s.unwrap());
    let h = d
        .group
        .subgroup_generated("H", std::slice::from_ref(&s))
        .unwrap();
    let l = d
        .group
        .subgroup_generated("L", &[r.pow(2), &r * &s])
        .unwrap();
    let w = exact_factorization(&d.group, &h, &l).unwrap();
    assert!(w.exact);
    let (x, y) = w.decompose(&r).unwrap();
    assert_eq!(x, s);
    assert_eq!(y, &s * &r);
    assert!(l.contains(&y));
}

#[test]
fn klein_family() {
    for n in [4, 6, 8, 10, 12] {
        let b = named_example(&format!("d2n_klein({n})")).unwrap();
        assert_eq!(iso_label(&b.images().unwrap().im_tilde), "Z2xZ2", "n = {n}");
        assert_properties(&b);
    }
    assert!(named_example("d2n_klein(5)").is_err());
}

#[test]
fn d60_and_q60() {
    for name in ["d60", "q60"] {
        let b = named_example(name).unwrap();
        assert_eq!(b.order(), 60);
        assert!(b.verify(rbgroups::rbcore::VerifyMode::Full).unwrap().pass);
        assert_properties(&b);
    }
}

#[test]
fn trivial_factorizations() {
    let a4 = build(GroupSpec::new(Family::Alternating, 4).unwrap())
        .unwrap()
        .group;
    let one = a4.subgroup_generated("1", &[]).unwrap();
    let w = exact_factorization(&a4, &one, &a4).unwrap();
    assert_eq!(
        from_factorization(&w).unwrap().table(),
        RbOperator::trivial_binv(&a4).unwrap().table()
    );
    let w = exact_factorization(&a4, &a4, &one).unwrap();
    assert_eq!(
        from_factorization(&w).unwrap().table(),
        RbOperator::trivial_be(&a4).unwrap().table()
    );
}

#[test]
fn homomorphisms_on_cyclic_groups() {
    let z6 = build(GroupSpec::new(Family::Cyclic, 6).unwrap()).unwrap();
    let r = z6.r.unwrap();
    let id = from_homomorphism(
        &z6.group,
        std::slice::from_ref(&r),
        std::slice::from_ref(&r),
        "id",
    )
    .unwrap();
    assert_properties(&id);
    let zero = from_homomorphism(
        &z6.group,
        std::slice::from_ref(&r),
        &[z6.group.identity()],
        "zero",
    )
    .unwrap();
    assert_eq!(
        zero.table(),
        RbOperator::trivial_be(&z6.group).unwrap().table()
    );
    let bad = from_homomorphism(&z6.group, std::slice::from_ref(&r), &[r.pow(2)], "double");
    assert!(bad.is_ok());
    let s3 = build(GroupSpec::dihedral(3)).unwrap();
    let (a, b) = (s3.r.unwrap(), s3.s.unwrap());
    let err = from_homomorphism(
        &s3.group,
        &[a.clone(), b.clone()],
        &[a.clone(), b.clone()],
        "id",
    )
    .unwrap_err();
    assert!(matches!(err, Error::Precondition { ref name, .. } if name == "abelian image"));
}

#[test]
fn extension_requires_normalizing() {
    // S3 = <(1 2)> <(0 1 2)>; C = B_-1 on the 3-cycles has C~ = e, fine.
    let s3 = build(GroupSpec::new(Family::Symmetric, 3).unwrap())
        .unwrap()
        .group;
    let h = s3.subgroup_generated("H", &[cyc(3, &[&[1, 2]])]).unwrap();
    let l = s3
        .subgroup_generated("L", &[cyc(3, &[&[0, 1, 2]])])
        .unwrap();
    let w = exact_factorization(&s3, &h, &l).unwrap();
    let ok = extend_over_factorization(&w, &RbOperator::trivial_binv(&l).unwrap()).unwrap();
    assert_properties(&ok);
    // and C = B_e on L has C~ = B_-1, whose image <(0 1 2)> does not normalize H
    let err = extend_over_factorization(&w, &RbOperator::trivial_be(&l).unwrap()).unwrap_err();
    assert!(matches!(err, Error::Precondition { ref name, .. } if name == "Im(C~) normalizes H"));
}

#[test]
fn index2_degenerate_and_negative() {
    let d = build(GroupSpec::dihedral(8)).unwrap();
    let (r, s) = (d.r.unwrap(), d.s.unwrap());
    let g = &d.group;
    let k = g.subgroup_generated("K", std::slice::from_ref(&s)).unwrap();
    let l = g.subgroup_generated("L", &[r.pow(2), &r * &s]).unwrap();
    let sub = g.subgroup_generated("S", &[r.pow(2)]).unwrap();
    let t = &r * &s;
    // r = e gives the splitting operator of K L
    let b = index2_construction(g, &k, &l, &sub, &t, &g.identity()).unwrap();
    let split = from_factorization(&exact_factorization(g, &k, &l).unwrap()).unwrap();
    assert_eq!(b.table(), split.table());
    // r^4 is central, so it normalizes K
    let b = index2_construction(g, &k, &l, &sub, &t, &r.pow(4)).unwrap();
    assert_properties(&b);
    assert_eq!(b.images().unwrap().r.order(), Some(2));
    // r s does not normalize {e, s}
    let err = index2_construction(g, &k, &l, &sub, &t, &(&r * &s)).unwrap_err();
    assert!(
        matches!(err, Error::Precondition { ref name, .. } if name == "r normalizes K"),
        "{err}"
    );
    let err = index2_construction(g, &k, &l, &sub, &r.pow(2), &r.pow(4)).unwrap_err();
    assert!(matches!(err, Error::Precondition { ref name, .. } if name == "t in L minus S"));
}

#[test]
fn literal_d8_table_is_not_an_operator() {
    // B(r^k) = e, B(r^k s) = r, read literally
    let d = build(GroupSpec::dihedral(4)).unwrap();
    let (r, s) = (d.r.unwrap(), d.s.unwrap());
    let g = &d.group;
    let table: Vec<u32> = g
        .elements()
        .unwrap()
        .iter()
        .map(|x| {
            let rotation = (0..4).any(|k| &r.pow(k) == x);
            g.index_of(&if rotation { g.identity() } else { r.clone() })
                .unwrap()
        })
        .collect();
    let b = RbOperator::from_table_unchecked(g, table.clone(), "literal").unwrap();
    let v = b.verify(rbgroups::rbcore::VerifyMode::Full).unwrap();
    assert!(!v.pass);
    assert!(!b.identity_holds(&s, &s));
    assert!(RbOperator::from_table(g, table, "literal").is_err());
}

#[test]
fn klein_operator_on_subgroup() {
    let d = build(GroupSpec::dihedral(6)).unwrap();
    let (r, s) = (d.r.unwrap(), d.s.unwrap());
    let b = klein_operator(&d.group, &r, &s, 6).unwrap();
    assert_properties(&b);
    let g: &FiniteGroup = b.group();
    assert_eq!(g.order(), Some(12));
}

fn all_subgroups(g: &FiniteGroup) -> Vec<FiniteGroup> {
    let n = g.order().unwrap();
    (1..=n)
        .filter(|k| n.is_multiple_of(*k))
        .flat_map(|k| rbgroups::rbenum::subgroups_of_order(g, k).unwrap())
        .collect()
}

#[test]
fn factorization_builders_over_all_exact_pairs() {
    let mut groups = rbgroups::stdgroups::small_catalog();
    groups.push(
        build(GroupSpec::new(Family::Alternating, 4).unwrap())
            .unwrap()
            .group,
    );
    groups.push(build(GroupSpec::dihedral(6)).unwrap().group);
    let mut extended = 0;
    for g in &groups {
        let subs = all_subgroups(g);
        for h in &subs {
            for l in &subs {
                let w = exact_factorization(g, h, l).unwrap();
                if !w.exact {
                    continue;
                }
                let b = from_factorization(&w).unwrap();
                assert!(b.is_splitting().unwrap());
                let im = b.images().unwrap();
                assert!(im.ker.is_subset_of(h).unwrap() && h.is_subset_of(&im.ker).unwrap());
                assert!(im.im.is_subset_of(l).unwrap() && l.is_subset_of(&im.im).unwrap());
                for c in rbgroups::rbenum::enumerate_rb(l, &Default::default()).unwrap() {
                    let Ok(ext) = extend_over_factorization(&w, &c) else {
                        continue;
                    };
                    extended += 1;
                    for x in h.elements().unwrap() {
                        assert!(ext.apply(x).unwrap().is_identity());
                    }
                    for x in l.elements().unwrap() {
                        assert_eq!(ext.apply(x).unwrap(), c.apply(x).unwrap());
                    }
                }
            }
        }
    }
    assert!(extended > 0);
}

#[test]
fn splitting_operators_come_from_their_kernel_and_image() {
    for g in rbgroups::stdgroups::small_catalog() {
        for op in rbgroups::rbenum::oracle_enumerate(&g).unwrap() {
            if !op.is_splitting().unwrap() {
                continue;
            }
            let im = op.images().unwrap();
            let w = exact_factorization(&g, &im.ker, &im.im).unwrap();
            assert!(w.exact, "{}", g.label());
            assert_eq!(from_factorization(&w).unwrap().table(), op.table());
        }
    }
}
