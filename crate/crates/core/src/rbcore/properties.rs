//! Structural identities every Rota-Baxter operator on a finite group satisfies.

use super::{RbOperator, VerifyMode};

/// Names of the checked identities, in check order.
pub const PROPERTIES: [&str; 10] = [
    "rb_identity",
    "kernel_and_image",
    "inverse_formula",
    "bplus_commutes",
    "circ_powers",
    "image_intersection",
    "splitting_factorization",
    "central_orders",
    "tilde_involution",
    "image_factorization",
];

/// Runs every identity on a table operator and returns the names of those
/// that fail. Intended for groups of order up to a few hundred.
pub fn check_all(op: &RbOperator) -> Vec<&'static str> {
    let mut failed = Vec::new();
    let Some(t) = op.table() else {
        return vec!["table"];
    };
    let g = op.group();
    let Ok(ct) = g.cayley() else {
        return vec!["table"];
    };
    let n = t.len() as u32;
    let e = ct.identity();
    let b = |x: u32| t[x as usize];
    let tilde = op.tilde();
    let tt = tilde.table().expect("table");
    let bt = |x: u32| tt[x as usize];

    if !op.verify(VerifyMode::Full).map(|v| v.pass).unwrap_or(false) {
        failed.push("rb_identity");
    }

    let ker: Vec<u32> = (0..n).filter(|&x| b(x) == e).collect();
    let mut im: Vec<u32> = t.to_vec();
    im.sort_unstable();
    im.dedup();
    let shift_ok = ker.iter().all(|&k| (0..n).all(|h| b(ct.mul(k, h)) == b(h)));
    if b(e) != e || !ct.is_subgroup(&ker) || !ct.is_subgroup(&im) || !shift_ok {
        failed.push("kernel_and_image");
    }

    // B(g)^-1 = B(B(g)^-1 g^-1 B(g))
    if !(0..n).all(|x| {
        let bx = b(x);
        ct.inv(bx) == b(ct.mul(ct.mul(ct.inv(bx), ct.inv(x)), bx))
    }) {
        failed.push("inverse_formula");
    }

    let bp = |x: u32| ct.mul(x, b(x));
    if !(0..n).all(|x| b(bp(x)) == bp(b(x))) {
        failed.push("bplus_commutes");
    }

    // a^(o k) = B_+(a)^k B(a)^-k, with o-inverses found by search
    let circ = |x: u32, y: u32| ct.mul(ct.mul(ct.mul(x, b(x)), y), ct.inv(b(x)));
    let powers_ok = (0..n).all(|a| {
        let Some(a_inv) = (0..n).find(|&y| circ(a, y) == e) else {
            return false;
        };
        let (mut up, mut down) = (e, e);
        (1..=n as i64).all(|k| {
            up = circ(up, a);
            down = circ(down, a_inv);
            let rhs = |k: i64| ct.mul(ct.pow(bp(a), k), ct.pow(b(a), -k));
            up == rhs(k) && down == rhs(-k)
        })
    });
    if !powers_ok {
        failed.push("circ_powers");
    }

    let mut bbt: Vec<u32> = (0..n).map(|x| b(bt(x))).collect();
    let mut btb: Vec<u32> = (0..n).map(|x| bt(b(x))).collect();
    let mut im_t: Vec<u32> = tt.to_vec();
    for v in [&mut bbt, &mut btb, &mut im_t] {
        v.sort_unstable();
        v.dedup();
    }
    let inter: Vec<u32> = im
        .iter()
        .copied()
        .filter(|x| im_t.binary_search(x).is_ok())
        .collect();
    if bbt != inter || btb != inter {
        failed.push("image_intersection");
    }

    // splitting exactly when B(hl) = l^-1 over ker(B) ker(B~)
    let splitting = btb == [e];
    let ker_t: Vec<u32> = (0..n).filter(|&x| bt(x) == e).collect();
    let mut split_table = vec![u32::MAX; n as usize];
    let mut exact = ker.len() * ker_t.len() == n as usize;
    if exact {
        for &h in &ker {
            for &l in &ker_t {
                let slot = &mut split_table[ct.mul(h, l) as usize];
                if *slot != u32::MAX {
                    exact = false;
                }
                *slot = ct.inv(l);
            }
        }
    }
    let matches_split = exact && split_table == t;
    if splitting != matches_split {
        failed.push("splitting_factorization");
    }

    if !ct
        .center()
        .iter()
        .all(|&c| ct.element_order(c) % ct.element_order(b(c)) == 0)
    {
        failed.push("central_orders");
    }

    let tilde_ok = tilde.tilde().table() == Some(t)
        && tilde
            .verify(VerifyMode::Full)
            .map(|v| v.pass)
            .unwrap_or(false);
    if !tilde_ok {
        failed.push("tilde_involution");
    }

    if op.images().is_err() {
        failed.push("image_factorization");
    }
    failed
}
