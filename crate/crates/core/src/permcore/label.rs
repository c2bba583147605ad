use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::group::FiniteGroup;
use super::table::CayleyTable;

/// Isomorphism label of an enumerated group.
///
/// Abelian groups get their invariant factors (`Z6xZ2`); small nonabelian
/// groups are matched against a catalog; anything else falls back to an
/// invariant tuple `[order;nonabelian;ord:count,...]`.
pub fn iso_label(group: &FiniteGroup) -> String {
    match group.cayley() {
        Ok(t) => iso_label_table(t),
        Err(_) => match group.order() {
            Some(n) => format!("[{n};unlabeled]"),
            None => group.label().to_string(),
        },
    }
}

pub fn iso_label_table(t: &CayleyTable) -> String {
    let n = t.order();
    if n == 1 {
        return "1".to_string();
    }
    if t.is_abelian() {
        return abelian_label(t);
    }
    let spectrum = t.order_spectrum();
    for (name, cand) in catalog() {
        if cand.order() == n
            && !cand.is_abelian()
            && cand.order_spectrum() == spectrum
            && cand.is_isomorphic(t)
        {
            return name.clone();
        }
    }
    invariant_tuple(n, false, &spectrum)
}

fn invariant_tuple(n: usize, abelian: bool, spectrum: &BTreeMap<usize, usize>) -> String {
    let body: Vec<String> = spectrum.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    format!(
        "[{n};{};{}]",
        if abelian { "abelian" } else { "nonabelian" },
        body.join(",")
    )
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn abelian_label(t: &CayleyTable) -> String {
    let n = t.order();
    let orders = t.element_orders();
    // per prime: exponents of the cyclic factors of the p-part
    let mut factors: Vec<Vec<u32>> = Vec::new();
    for p in prime_factors(n) {
        let mut counts = vec![1usize];
        let mut pk = 1;
        loop {
            pk *= p;
            let c = orders.iter().filter(|&&o| pk % o == 0).count();
            if c == *counts.last().unwrap() {
                break;
            }
            counts.push(c);
        }
        // log_p of |{x : x^(p^k) = 1}|
        let logs: Vec<u32> = counts
            .iter()
            .map(|&c| {
                let mut e = 0;
                let mut v = 1;
                while v < c {
                    v *= p;
                    e += 1;
                }
                e
            })
            .collect();
        // number of factors of exponent >= k is logs[k] - logs[k-1]
        let mut exps = Vec::new();
        for k in 1..logs.len() {
            let at_least_k = logs[k] - logs[k - 1];
            let at_least_next = if k + 1 < logs.len() {
                logs[k + 1] - logs[k]
            } else {
                0
            };
            for _ in 0..(at_least_k - at_least_next) {
                exps.push(k as u32);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        factors.push(exps.into_iter().map(|e| (p as u32).pow(e)).collect());
    }
    let width = factors.iter().map(|f| f.len()).max().unwrap_or(0);
    let invariants: Vec<String> = (0..width)
        .map(|i| {
            let d: u32 = factors
                .iter()
                .map(|f| f.get(i).copied().unwrap_or(1))
                .product();
            format!("Z{d}")
        })
        .collect();
    invariants.join("x")
}

fn klein_like(m: u32) -> CayleyTable {
    CayleyTable::cyclic(m as usize).direct_product(&CayleyTable::cyclic(2))
}

/// Nonabelian groups recognized by name.
fn catalog() -> &'static [(String, CayleyTable)] {
    static CATALOG: OnceLock<Vec<(String, CayleyTable)>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut out: Vec<(String, CayleyTable)> = Vec::new();
        let mut push = |name: &str, t: crate::Result<CayleyTable>| {
            out.push((name.to_string(), t.expect("catalog table")));
        };
        push("S3", CayleyTable::metacyclic(3, 2, 0, 2));
        for n in 4..=32 {
            push(
                &format!("D{}", 2 * n),
                CayleyTable::metacyclic(n, 2, 0, n - 1),
            );
        }
        for n in 2..=16 {
            push(
                &format!("Q{}", 4 * n),
                CayleyTable::metacyclic(2 * n, 2, n, 2 * n - 1),
            );
        }
        push("SD16", CayleyTable::metacyclic(8, 2, 0, 3));
        push("M16", CayleyTable::metacyclic(8, 2, 0, 5));
        push("Z4:Z4", CayleyTable::metacyclic(4, 4, 0, 3));
        let d8 = CayleyTable::metacyclic(4, 2, 0, 3).unwrap();
        let q8 = CayleyTable::metacyclic(4, 2, 2, 3).unwrap();
        push("Z2xD8", Ok(CayleyTable::cyclic(2).direct_product(&d8)));
        push("Z2xQ8", Ok(CayleyTable::cyclic(2).direct_product(&q8)));
        // Z4 x Z2 with (a^i b^j) at index 2i + j
        let z4z2 = klein_like(4);
        let twist_b: Vec<u32> = (0..8u32)
            .map(|x| (x / 2) * 2 + ((x / 2 + x % 2) % 2))
            .collect();
        push(
            "Z2^2:Z4",
            CayleyTable::semidirect_cyclic(&z4z2, 2, &twist_b),
        );
        let central: Vec<u32> = (0..8u32)
            .map(|x| ((x / 2 + 2 * (x % 2)) % 4) * 2 + x % 2)
            .collect();
        push("Z4oD8", CayleyTable::semidirect_cyclic(&z4z2, 2, &central));
        push("F20", CayleyTable::metacyclic(5, 4, 0, 2));
        push("F21", CayleyTable::metacyclic(7, 3, 0, 2));
        let s3 = CayleyTable::metacyclic(3, 2, 0, 2).unwrap();
        push("Z3xS3", Ok(CayleyTable::cyclic(3).direct_product(&s3)));
        // Z3 x Z3 with (a, b) at index 3a + b
        let z3z3 = CayleyTable::cyclic(3).direct_product(&CayleyTable::cyclic(3));
        let negate: Vec<u32> = (0..9u32)
            .map(|x| ((3 - x / 3) % 3) * 3 + (3 - x % 3) % 3)
            .collect();
        push(
            "(Z3xZ3):Z2",
            CayleyTable::semidirect_cyclic(&z3z3, 2, &negate),
        );
        let rotate: Vec<u32> = (0..9u32).map(|x| ((3 - x % 3) % 3) * 3 + x / 3).collect();
        push(
            "(Z3xZ3):Z4",
            CayleyTable::semidirect_cyclic(&z3z3, 4, &rotate),
        );
        push("A4", Ok(alternating_table(4)));
        push(
            "Z2xA4",
            Ok(CayleyTable::cyclic(2).direct_product(&alternating_table(4))),
        );
        push("S4", Ok(symmetric_table(4)));
        push("A5", Ok(alternating_table(5)));
        out
    })
}

/// Table of a named catalog group, if known.
pub fn named_table(name: &str) -> Option<CayleyTable> {
    catalog()
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, t)| t.clone())
}

fn perm_group_table(degree: usize, cycles: &[&[&[usize]]]) -> CayleyTable {
    use super::perm::Permutation;
    let gens: Vec<Permutation> = cycles
        .iter()
        .map(|c| Permutation::from_cycles(degree, c).expect("generator"))
        .collect();
    FiniteGroup::generate("", degree, gens, 1000)
        .expect("small group")
        .cayley()
        .expect("table")
        .clone()
}

fn alternating_table(n: usize) -> CayleyTable {
    match n {
        4 => perm_group_table(4, &[&[&[0, 1, 2]], &[&[1, 2, 3]]]),
        5 => perm_group_table(5, &[&[&[0, 1, 2]], &[&[0, 1, 2, 3, 4]]]),
        _ => unreachable!(),
    }
}

fn symmetric_table(n: usize) -> CayleyTable {
    assert_eq!(n, 4);
    perm_group_table(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_labels() {
        assert_eq!(iso_label_table(&CayleyTable::cyclic(1)), "1");
        assert_eq!(iso_label_table(&CayleyTable::cyclic(6)), "Z6");
        assert_eq!(iso_label_table(&klein_like(2)), "Z2xZ2");
        assert_eq!(iso_label_table(&klein_like(4)), "Z4xZ2");
        assert_eq!(iso_label_table(&klein_like(6)), "Z6xZ2");
        assert_eq!(
            iso_label_table(&klein_like(2).direct_product(&CayleyTable::cyclic(2))),
            "Z2xZ2xZ2"
        );
        let z3z3 = CayleyTable::cyclic(3).direct_product(&CayleyTable::cyclic(3));
        assert_eq!(
            iso_label_table(&z3z3.direct_product(&CayleyTable::cyclic(4))),
            "Z12xZ3"
        );
    }

    #[test]
    fn order_sixteen_catalog_is_irredundant() {
        let sixteen: Vec<&(String, CayleyTable)> =
            catalog().iter().filter(|(_, t)| t.order() == 16).collect();
        assert_eq!(sixteen.len(), 9);
        for (i, (a, ta)) in sixteen.iter().enumerate() {
            assert_eq!(&iso_label_table(ta), a);
            for (b, tb) in &sixteen[i + 1..] {
                assert!(!ta.is_isomorphic(tb), "{a} ~ {b}");
            }
        }
    }

    #[test]
    fn every_catalog_entry_labels_itself() {
        for (name, t) in catalog() {
            assert!(!t.is_abelian(), "{name}");
            assert_eq!(&iso_label_table(t), name);
        }
    }

    #[test]
    fn frobenius_group_of_order_36() {
        let t = named_table("(Z3xZ3):Z4").unwrap();
        assert_eq!(t.order(), 36);
        // the Z4 acts without fixed points, so no element of order 6 or 12
        let spec = t.order_spectrum();
        assert_eq!(spec.get(&6), None);
        assert_eq!(spec.get(&3), Some(&8));
    }

    #[test]
    fn fallback_tuple() {
        let t = CayleyTable::metacyclic(9, 2, 0, 8)
            .unwrap()
            .direct_product(&CayleyTable::cyclic(4));
        assert!(iso_label_table(&t).starts_with("[72;nonabelian;"));
    }
}
