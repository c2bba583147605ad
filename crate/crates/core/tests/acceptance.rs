//! End-to-end acceptance run. Every criterion prints one line, bypassing the
//! output capture, and the test fails if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::Write;
use std::time::{Duration, Instant};

use rbgroups::antops::{
    admissible, build_an_operator, descendent_structure, sharply2, sharply3, verify_an_operator,
    Variant,
};
use rbgroups::permcore::{iso_label, FiniteGroup};
use rbgroups::rbbuild::named_example;
use rbgroups::rbcore::{properties, RbOperator, VerifyMode};
use rbgroups::rbenum::{classify, enumerate_rb, oracle_enumerate, Caps};
use rbgroups::stdgroups::{build, small_catalog, Family, GroupSpec};

const LIMIT_S3: Duration = Duration::from_secs(1);
const LIMIT_A4: Duration = Duration::from_secs(30);
const LIMIT_ODD_DIHEDRAL: Duration = Duration::from_secs(120);
const LIMIT_EVEN_DIHEDRAL: Duration = Duration::from_secs(600);
const LIMIT_QUATERNION: Duration = Duration::from_secs(120);
const LIMIT_D16: Duration = Duration::from_secs(1);
const LIMIT_ZASSENHAUS: Duration = Duration::from_secs(10);
const LIMIT_A9: Duration = Duration::from_secs(60);
const LIMIT_A10: Duration = Duration::from_secs(120);
const LIMIT_DESCENDENT: Duration = Duration::from_secs(30);
const LIMIT_ADMISSIBLE: Duration = Duration::from_secs(1);
const LIMIT_ORACLE: Duration = Duration::from_secs(300);
const LIMIT_PROPERTIES: Duration = Duration::from_secs(600);

const AN_SAMPLES: usize = 100_000;
const DESCENDENT_SAMPLES: usize = 10_000;
const SEED: u64 = 7;

const ADMISSIBLE_FIXTURE: &str = include_str!("fixtures/admissible_1000.txt");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Table operators seen during the run, for the property suite.
#[derive(Default)]
struct Seen(Vec<RbOperator>);

impl Seen {
    fn add(&mut self, ops: impl IntoIterator<Item = RbOperator>) {
        self.0
            .extend(ops.into_iter().filter(|op| op.table().is_some()));
    }
}

fn group(spec: GroupSpec) -> FiniteGroup {
    build(spec).unwrap().group
}

fn tables(ops: &[RbOperator]) -> BTreeSet<Vec<u32>> {
    ops.iter().map(|op| op.table().unwrap().to_vec()).collect()
}

/// Each ordered `k`-tuple of distinct points is the image of `0..k` under exactly one element.
fn sharply_transitive(g: &FiniteGroup, k: usize) -> bool {
    let mut seen = HashSet::new();
    let els = g.elements().unwrap();
    let unique = els
        .iter()
        .all(|x| seen.insert((0..k).map(|p| x.apply(p)).collect::<Vec<_>>()));
    unique && seen.len() == (0..k).map(|i| g.degree() - i).product::<usize>()
}

fn spectrum(g: &FiniteGroup) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for x in g.elements().unwrap() {
        *out.entry(x.order()).or_default() += 1;
    }
    out
}

fn s3(seen: &mut Seen) -> Outcome {
    let g = group(GroupSpec::new(Family::Symmetric, 3).unwrap());
    let ops = enumerate_rb(&g, &Caps::default()).unwrap();
    let all_split = ops.iter().all(|op| op.is_splitting().unwrap());
    let example = named_example("s3").unwrap();
    let present = tables(&ops).contains(example.table().unwrap());
    let label = example.descendent_group().unwrap().label;
    seen.add(ops.clone());
    seen.add([example]);
    outcome(
        all_split && present && label == "Z6",
        format!(
            "operators={} all_splitting={all_split} example_present={present} descendent={label}",
            ops.len()
        ),
    )
}

fn a4(seen: &mut Seen) -> Outcome {
    let g = group(GroupSpec::new(Family::Alternating, 4).unwrap());
    let report = classify(&g, None, &Caps::default()).unwrap();
    let trivial = |k: &(String, String)| k.0 == "1" && k.1 == "A4";
    let nontrivial: Vec<_> = report
        .classes
        .iter()
        .filter(|c| !trivial(&c.kernel_invariant))
        .collect();
    let split = nontrivial.iter().find(|c| c.splitting);
    let other = nontrivial.iter().find(|c| !c.splitting);
    let split_shape = split.is_some_and(|c| c.kernel_invariant == ("Z2xZ2".into(), "Z3".into()));
    let r = other.map_or("-".to_string(), |c| c.r_label.clone());
    let desc = other.map_or("-".to_string(), |c| c.descendent_label.clone());
    seen.add(enumerate_rb(&g, &Caps::default()).unwrap());
    outcome(
        nontrivial.len() == 2 && split_shape && r == "Z3" && desc == "Z6xZ2",
        format!(
            "nontrivial_classes={} splitting_shape={split_shape} non_splitting_R={r} non_splitting_descendent={desc} (expected Z6xZ2)",
            nontrivial.len()
        ),
    )
}

fn odd_dihedral(seen: &mut Seen) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for n in [3, 5, 7, 9] {
        let spec = GroupSpec::dihedral(n);
        let g = group(spec);
        let report = classify(&g, Some(spec), &Caps::default()).unwrap();
        pass &= report.non_splitting == 0 && report.all_checks_hold();
        detail.push(format!(
            "D{}:{}/{}",
            2 * n,
            report.non_splitting,
            report.total
        ));
        seen.add(enumerate_rb(&g, &Caps::default()).unwrap());
    }
    outcome(pass, format!("non_splitting/total {}", detail.join(" ")))
}

fn even_dihedral(seen: &mut Seen) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for n in [2, 4, 6, 8] {
        let spec = GroupSpec::dihedral(n);
        let g = group(spec);
        let report = classify(&g, Some(spec), &Caps::default()).unwrap();
        pass &= report.all_checks_hold() && report.checks.len() == 2;
        detail.push(format!(
            "D{}:total={},non_splitting={},classes={}",
            2 * n,
            report.total,
            report.non_splitting,
            report.class_count()
        ));
        seen.add(enumerate_rb(&g, &Caps::default()).unwrap());
    }
    outcome(pass, detail.join(" "))
}

fn quaternion(seen: &mut Seen) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for n in [3, 5] {
        let spec = GroupSpec::quaternion(n);
        let g = group(spec);
        let ops = enumerate_rb(&g, &Caps::default()).unwrap();
        let non_split: Vec<&RbOperator> = ops
            .iter()
            .filter(|op| !op.is_splitting().unwrap())
            .collect();
        let ok = non_split
            .iter()
            .all(|op| op.images().unwrap().r.order() == Some(2));
        pass &= ok && !non_split.is_empty();
        detail.push(format!(
            "Q{}:non_splitting={} all_|R|=2:{ok}",
            4 * n,
            non_split.len()
        ));
        seen.add(ops);
    }
    let q60 = named_example("q60").unwrap();
    let v = q60.verify(VerifyMode::Full).unwrap();
    pass &= v.pass;
    detail.push(format!("Q60 {v}"));
    seen.add([q60]);
    outcome(pass, detail.join(" "))
}

fn d16(seen: &mut Seen) -> Outcome {
    let d = build(GroupSpec::dihedral(8)).unwrap();
    let r = d.r.unwrap();
    let op = named_example("d16").unwrap();
    let tilde = op.tilde();
    let b_bt = op.apply(&tilde.apply(&r).unwrap()).unwrap();
    let bt_b = tilde.apply(&op.apply(&r).unwrap()).unwrap();
    let pass = b_bt == r.pow(4) && bt_b.is_identity();
    seen.add([op, tilde]);
    outcome(
        pass,
        format!(
            "BB~(r)={} B~B(r)={}",
            b_bt.cycle_string(),
            bt_b.cycle_string()
        ),
    )
}

fn zassenhaus() -> Outcome {
    let l = sharply2(2, 3, 1).unwrap();
    let n_label = iso_label(l.n_part.as_ref().unwrap());
    let small = l.order() == 72
        && sharply_transitive(&l.group, 2)
        && l.is_inside_alternating()
        && n_label == "Q8";
    let big = sharply2(2, 7, 1).unwrap();
    let differ = spectrum(&big.index2[0]) != spectrum(&big.index2[1]);
    outcome(
        small && big.order() == 2352 && differ,
        format!(
            "L(2,3,1) order={} N={n_label} in_A9={}; L(2,7,1) order={} S1_S2_spectra_differ={differ}",
            l.order(),
            l.is_inside_alternating(),
            big.order()
        ),
    )
}

fn a9() -> Outcome {
    let op = build_an_operator(9, Variant::Default).unwrap();
    let v = verify_an_operator(&op, AN_SAMPLES, SEED).unwrap();
    let images = op.images().unwrap();
    let ker_label = images.ker.label().to_string();
    let kt = iso_label(&images.ker_tilde);
    let r = iso_label(&images.r);
    let layer2 = v
        .layers
        .get(1)
        .is_some_and(|l| l.exhaustive && l.checked == 5184);
    let splitting = op.is_splitting().unwrap();
    let pass = v.pass()
        && layer2
        && ker_label == "A7"
        && images.ker_tilde.order() == Some(36)
        && kt == "(Z3xZ3):Z4"
        && r == "Z2"
        && !splitting;
    outcome(
        pass,
        format!(
            "verify={} layer2_exhaustive_5184={layer2} ker={ker_label} ker~={kt} |ker~|={:?} R={r} splitting={splitting}",
            v.pass(),
            images.ker_tilde.order()
        ),
    )
}

fn a10() -> Outcome {
    let m = sharply3(9).unwrap();
    let psl = &m.index2[0];
    let group_ok = m.order() == 720
        && sharply_transitive(&m.group, 3)
        && m.is_inside_alternating()
        && psl.order() == Some(360)
        && psl.is_subset_of(&m.group).unwrap();
    let op = build_an_operator(10, Variant::Default).unwrap();
    let v = verify_an_operator(&op, AN_SAMPLES, SEED).unwrap();
    outcome(
        group_ok && v.pass(),
        format!(
            "M(9) order={} valid={group_ok}; operator verify={} layers={}",
            m.order(),
            v.pass(),
            v.layers.len()
        ),
    )
}

fn descendent() -> Outcome {
    let op = build_an_operator(9, Variant::Default).unwrap();
    match descendent_structure(&op, DESCENDENT_SAMPLES, SEED) {
        Ok(r) => outcome(
            r.opposite_checks == 36 * 36 && r.kernel_checks == DESCENDENT_SAMPLES as u64,
            format!(
                "opposite={} kernel={} twist={}",
                r.opposite_checks, r.kernel_checks, r.twist_checks
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn admissibility() -> Outcome {
    let fixture: BTreeSet<u64> = ADMISSIBLE_FIXTURE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    let computed: BTreeSet<u64> = (5..=1000).filter(|&n| admissible(n).admissible).collect();
    let required_in = [9, 10, 49, 50, 529, 530];
    let required_out = [25, 27, 121];
    let inside = required_in.iter().all(|n| computed.contains(n));
    let wrongly_in: Vec<u64> = required_out
        .iter()
        .copied()
        .filter(|n| computed.contains(n))
        .collect();
    outcome(
        computed == fixture && inside && wrongly_in.is_empty(),
        format!(
            "matches_fixture={} admissible={:?} required_absent_but_admissible={wrongly_in:?}",
            computed == fixture,
            computed
        ),
    )
}

fn oracle(seen: &mut Seen) -> Outcome {
    let catalog = small_catalog();
    let mut mismatched = Vec::new();
    for g in &catalog {
        let fast = enumerate_rb(g, &Caps::default()).unwrap();
        let slow = oracle_enumerate(g).unwrap();
        if tables(&fast) != tables(&slow) {
            mismatched.push(g.label().to_string());
        }
        seen.add(fast);
    }
    outcome(
        catalog.len() == 13 && mismatched.is_empty(),
        format!("groups={} mismatched={mismatched:?}", catalog.len()),
    )
}

fn property_suite(seen: &Seen) -> Outcome {
    let mut failures = Vec::new();
    for op in &seen.0 {
        let failed = properties::check_all(op);
        if !failed.is_empty() {
            failures.push(format!("{}: {failed:?}", op.provenance()));
        }
        let tilde = op.tilde();
        let failed = properties::check_all(&tilde);
        if !failed.is_empty() {
            failures.push(format!("tilde of {}: {failed:?}", op.provenance()));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "table_operators={} properties={} failures={failures:?} (procedural A_n operators are covered by criteria 8-10)",
            seen.0.len(),
            properties::PROPERTIES.len()
        ),
    )
}

fn line(text: &str) {
    let mut err = std::io::stderr().lock();
    writeln!(err, "{text}").unwrap();
}

#[test]
fn acceptance() {
    line("");
    let mut seen = Seen::default();
    let mut results = Vec::new();
    let mut run = |id: u32, name: &str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed < limit;
        line(&format!(
            "acceptance {id:2} {name}: {} ({:.2}s, limit {}s) {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            out.detail
        ));
        results.push((id, pass));
    };
    run(1, "s3_classification", LIMIT_S3, &mut || s3(&mut seen));
    run(2, "a4_classification", LIMIT_A4, &mut || a4(&mut seen));
    run(3, "odd_dihedral", LIMIT_ODD_DIHEDRAL, &mut || {
        odd_dihedral(&mut seen)
    });
    run(4, "even_dihedral", LIMIT_EVEN_DIHEDRAL, &mut || {
        even_dihedral(&mut seen)
    });
    run(5, "quaternion", LIMIT_QUATERNION, &mut || {
        quaternion(&mut seen)
    });
    run(6, "d16_example", LIMIT_D16, &mut || d16(&mut seen));
    run(7, "zassenhaus_groups", LIMIT_ZASSENHAUS, &mut zassenhaus);
    run(8, "a9_operator", LIMIT_A9, &mut a9);
    run(9, "a10_operator", LIMIT_A10, &mut a10);
    run(
        10,
        "descendent_structure",
        LIMIT_DESCENDENT,
        &mut descendent,
    );
    run(11, "admissibility", LIMIT_ADMISSIBLE, &mut admissibility);
    run(12, "oracle_equivalence", LIMIT_ORACLE, &mut || {
        oracle(&mut seen)
    });
    run(13, "property_suite", LIMIT_PROPERTIES, &mut || {
        property_suite(&seen)
    });
    let failed: Vec<u32> = results
        .iter()
        .filter(|(_, p)| !p)
        .map(|(id, _)| *id)
        .collect();
    line(&format!(
        "acceptance summary: {} of {} pass",
        results.len() - failed.len(),
        results.len()
    ));
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
