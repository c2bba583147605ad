//! Index-based view of an enumerated group.
//!
//! Elements are `0..n`; products are looked up in a dense `n x n` table.
//! Most combinatorial work (operators, subgroup search, isomorphism tests)
//! runs on this representation.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
}

impl CayleyTable {
    /// Wraps a product table, checking closure, identity and inverses.
    /// Associativity is checked too when `check_assoc` is set (cubic).
    pub fn new(n: usize, mul: Vec<u32>, check_assoc: bool) -> Result<Self> {
        if mul.len() != n * n || n == 0 {
            return Err(Error::InvalidOperator("table has wrong size".into()));
        }
        if mul.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvalidOperator("product outside the set".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidOperator("no two-sided identity".into()))?
            as u32;
        let mut inverse = vec![u32::MAX; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| mul[x * n + y] == identity && mul[y * n + x] == identity)
                .ok_or_else(|| Error::InvalidOperator(format!("element {x} has no inverse")))?;
            inverse[x] = y as u32;
        }
        if check_assoc {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul[a * n + b] as usize;
                    for c in 0..n {
                        let bc = mul[b * n + c] as usize;
                        if mul[ab * n + c] != mul[a * n + bc] {
                            return Err(Error::InvalidOperator(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(CayleyTable {
            n,
            mul,
            identity,
            inverse,
        })
    }

    pub(crate) fn from_parts(n: usize, mul: Vec<u32>, identity: u32, inverse: Vec<u32>) -> Self {
        CayleyTable {
            n,
            mul,
            identity,
            inverse,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `x^g = g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, a: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.n as u32).map(|a| self.element_order(a)).collect()
    }

    /// Multiset of element orders as `order -> count`.
    pub fn order_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for k in self.element_orders() {
            *m.entry(k).or_insert(0) += 1;
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n as u32).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<u32> {
        (0..self.n as u32)
            .filter(|&z| (0..self.n as u32).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn generate(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        seen[self.identity as usize] = true;
        queue.push_back(self.identity);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n as u32).filter(|&i| seen[i as usize]).collect()
    }

    /// Whether a set of indices is a subgroup (nonempty, closed).
    pub fn is_subgroup(&self, set: &[u32]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut mask = vec![false; self.n];
        for &x in set {
            mask[x as usize] = true;
        }
        set.iter()
            .all(|&a| set.iter().all(|&b| mask[self.mul(a, b) as usize]))
    }

    pub fn is_normal(&self, set: &[u32]) -> bool {
        let mut mask = vec![false; self.n];
        for &x in set {
            mask[x as usize] = true;
        }
        let gens = self.generating_set();
        self.is_subgroup(set)
            && gens
                .iter()
                .all(|&g| set.iter().all(|&s| mask[self.conj(s, g) as usize]))
    }

    /// A small generating set, chosen greedily from elements of largest order
    /// (ties broken by index). Deterministic.
    pub fn generating_set(&self) -> Vec<u32> {
        self.generating_set_of(&(0..self.n as u32).collect::<Vec<_>>())
    }

    /// Greedy generating set for the subgroup with the given elements.
    pub fn generating_set_of(&self, members: &[u32]) -> Vec<u32> {
        let mut cands: Vec<(usize, u32)> = members
            .iter()
            .map(|&a| (self.element_order(a), a))
            .collect();
        cands.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        let mut mask = vec![false; self.n];
        mask[self.identity as usize] = true;
        for (_, a) in cands {
            if span.len() == members.len() {
                break;
            }
            if mask[a as usize] {
                continue;
            }
            gens.push(a);
            span = self.generate(&gens);
            mask.iter_mut().for_each(|m| *m = false);
            for &x in &span {
                mask[x as usize] = true;
            }
        }
        gens
    }

    /// Tries to extend `gens[i] -> images[i]` to a homomorphism into `other`.
    /// `gens` must generate this group. Returns the full map on success.
    pub fn extend_homomorphism(
        &self,
        other: &CayleyTable,
        gens: &[u32],
        images: &[u32],
    ) -> Option<Vec<u32>> {
        let mut map = vec![u32::MAX; self.n];
        map[self.identity as usize] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x as usize];
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(fx, h);
                let slot = &mut map[y as usize];
                if *slot == u32::MAX {
                    *slot = fy;
                    queue.push_back(y);
                } else if *slot != fy {
                    return None;
                }
            }
        }
        if map.contains(&u32::MAX) {
            return None;
        }
        Some(map)
    }

    /// Isomorphisms from `self` onto `other`, stopping after `limit` of them.
    pub fn isomorphisms(&self, other: &CayleyTable, limit: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        if self.n != other.n || limit == 0 {
            return out;
        }
        if self.order_spectrum() != other.order_spectrum() {
            return out;
        }
        let gens = self.generating_set();
        let orders_other = other.element_orders();
        let cands: Vec<Vec<u32>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                (0..other.n as u32)
                    .filter(|&h| orders_other[h as usize] == k)
                    .collect()
            })
            .collect();
        let mut images = vec![0u32; gens.len()];
        self.search_images(other, &gens, &cands, 0, &mut images, &mut out, limit);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn search_images(
        &self,
        other: &CayleyTable,
        gens: &[u32],
        cands: &[Vec<u32>],
        depth: usize,
        images: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if depth == gens.len() {
            if let Some(map) = self.extend_homomorphism(other, gens, images) {
                let mut hit = vec![false; other.n];
                if map
                    .iter()
                    .all(|&y| !std::mem::replace(&mut hit[y as usize], true))
                {
                    out.push(map);
                }
            }
            return;
        }
        for &c in &cands[depth] {
            // pairwise product orders must match
            let ok = (0..depth).all(|i| {
                self.element_order(self.mul(gens[i], gens[depth]))
                    == other.element_order(other.mul(images[i], c))
            });
            if !ok {
                continue;
            }
            images[depth] = c;
            self.search_images(other, gens, cands, depth + 1, images, out, limit);
            if out.len() >= limit {
                return;
            }
        }
    }

    pub fn is_isomorphic(&self, other: &CayleyTable) -> bool {
        !self.isomorphisms(other, 1).is_empty()
    }

    /// All automorphisms, sorted, identity first.
    pub fn automorphisms(&self, cap: usize) -> Result<Vec<Vec<u32>>> {
        if self.n > cap {
            return Err(Error::cap(
                format!("automorphism search on order {}", self.n),
                cap,
            ));
        }
        let mut auts = self.isomorphisms(self, usize::MAX);
        auts.sort();
        Ok(auts)
    }

    /// Subtable for a subgroup given by sorted member indices; the i-th
    /// member becomes element `i`.
    pub fn subtable(&self, members: &[u32]) -> CayleyTable {
        let m = members.len();
        let mut pos = vec![u32::MAX; self.n];
        for (i, &x) in members.iter().enumerate() {
            pos[x as usize] = i as u32;
        }
        let mut mul = Vec::with_capacity(m * m);
        for &a in members {
            for &b in members {
                mul.push(pos[self.mul(a, b) as usize]);
            }
        }
        let identity = pos[self.identity as usize];
        let inverse = members.iter().map(|&a| pos[self.inv(a) as usize]).collect();
        CayleyTable::from_parts(m, mul, identity, inverse)
    }

    /// Direct product table; element `(a, b)` has index `a * other.n + b`.
    pub fn direct_product(&self, other: &CayleyTable) -> CayleyTable {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            let (a1, a2) = ((a / n2) as u32, (a % n2) as u32);
            for b in 0..n {
                let (b1, b2) = ((b / n2) as u32, (b % n2) as u32);
                mul.push(self.mul(a1, b1) * n2 as u32 + other.mul(a2, b2));
            }
        }
        let identity = self.identity * n2 as u32 + other.identity;
        let inverse = (0..n)
            .map(|a| self.inv((a / n2) as u32) * n2 as u32 + other.inv((a % n2) as u32))
            .collect();
        CayleyTable::from_parts(n, mul, identity, inverse)
    }

    /// Table of the cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> CayleyTable {
        let mul = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        let inverse = (0..n).map(|a| ((n - a) % n) as u32).collect();
        CayleyTable::from_parts(n, mul, 0, inverse)
    }

    /// Metacyclic group `<r, s | r^m, s^k = r^j, s r s^-1 = r^v>` on normal
    /// forms `r^a s^b` (index `a + m b`). Requires `v^k = 1` and `v j = j` mod `m`.
    pub fn metacyclic(m: usize, k: usize, j: usize, v: usize) -> Result<CayleyTable> {
        let vk = (0..k).fold(1usize, |acc, _| acc * v % m);
        if vk != 1 % m || (v * j) % m != j % m {
            return Err(Error::precondition(
                "metacyclic parameters",
                format!("m={m} k={k} j={j} v={v}"),
            ));
        }
        let n = m * k;
        let vpow: Vec<usize> = (0..k)
            .scan(1usize, |acc, _| {
                let cur = *acc;
                *acc = *acc * v % m;
                Some(cur)
            })
            .collect();
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            let (a, b) = (x % m, x / m);
            for y in 0..n {
                let (c, d) = (y % m, y / m);
                let mut e = a + c * vpow[b];
                let mut f = b + d;
                if f >= k {
                    f -= k;
                    e += j;
                }
                mul.push(((e % m) + m * f) as u32);
            }
        }
        CayleyTable::new(n, mul, true)
    }

    /// Semidirect product `N : Z_k` where the generator of `Z_k` acts on `N`
    /// by the automorphism `aut` (given as an image table, applied as
    /// `s^-1 x s = aut(x)`). Elements `(x, b)` have index `x + |N| b`.
    pub fn semidirect_cyclic(normal: &CayleyTable, k: usize, aut: &[u32]) -> Result<CayleyTable> {
        let m = normal.n;
        // aut^b
        let mut powers: Vec<Vec<u32>> = vec![(0..m as u32).collect()];
        for b in 1..=k {
            let prev = &powers[b - 1];
            powers.push(prev.iter().map(|&x| aut[x as usize]).collect());
        }
        if powers[k].iter().enumerate().any(|(i, &x)| i as u32 != x) {
            return Err(Error::precondition(
                "semidirect action",
                "aut^k is not the identity",
            ));
        }
        // (x s^b)(y s^d) = x (s^b y s^-b) s^(b+d); s^b y s^-b = aut^-b(y) = aut^(k-b)(y)
        let n = m * k;
        let mut mul = Vec::with_capacity(n * n);
        for p in 0..n {
            let (x, b) = ((p % m) as u32, p / m);
            for q in 0..n {
                let (y, d) = ((q % m) as u32, q / m);
                let moved = powers[(k - b) % k][y as usize];
                let z = normal.mul(x, moved);
                mul.push(z + (m * ((b + d) % k)) as u32);
            }
        }
        CayleyTable::new(n, mul, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_aut_count(t: &CayleyTable) -> usize {
        // every bijection, checked against the full table
        fn rec(t: &CayleyTable, map: &mut Vec<u32>, used: &mut Vec<bool>, count: &mut usize) {
            let k = map.len();
            let n = t.order();
            if k == n {
                let ok = (0..n as u32).all(|a| {
                    (0..n as u32).all(|b| {
                        map[t.mul(a, b) as usize] == t.mul(map[a as usize], map[b as usize])
                    })
                });
                if ok {
                    *count += 1;
                }
                return;
            }
            for y in 0..n {
                if !used[y] {
                    used[y] = true;
                    map.push(y as u32);
                    rec(t, map, used, count);
                    map.pop();
                    used[y] = false;
                }
            }
        }
        let mut count = 0;
        rec(t, &mut Vec::new(), &mut vec![false; t.order()], &mut count);
        count
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        let s3 = CayleyTable::metacyclic(3, 2, 0, 2).unwrap();
        let klein = CayleyTable::cyclic(2).direct_product(&CayleyTable::cyclic(2));
        let z3 = CayleyTable::cyclic(3);
        for (t, expected) in [(&s3, 6), (&klein, 6), (&z3, 2)] {
            assert_eq!(brute_force_aut_count(t), expected);
            assert_eq!(t.automorphisms(48).unwrap().len(), expected);
        }
    }

    #[test]
    fn automorphisms_form_a_group_with_inner_ones() {
        let d8 = CayleyTable::metacyclic(4, 2, 0, 3).unwrap();
        let auts = d8.automorphisms(48).unwrap();
        assert_eq!(auts.len(), 8);
        let set: std::collections::BTreeSet<_> = auts.iter().cloned().collect();
        for a in &auts {
            for b in &auts {
                let ab: Vec<u32> = a.iter().map(|&x| b[x as usize]).collect();
                assert!(set.contains(&ab));
            }
            let mut inv = vec![0u32; a.len()];
            for (i, &x) in a.iter().enumerate() {
                inv[x as usize] = i as u32;
            }
            assert!(set.contains(&inv));
        }
        for g in 0..8u32 {
            let inner: Vec<u32> = (0..8u32).map(|x| d8.conj(x, g)).collect();
            assert!(set.contains(&inner));
        }
    }

    #[test]
    fn quaternion_is_not_dihedral() {
        let q8 = CayleyTable::metacyclic(4, 2, 2, 3).unwrap();
        let d8 = CayleyTable::metacyclic(4, 2, 0, 3).unwrap();
        assert!(!q8.is_isomorphic(&d8));
        assert_eq!(q8.order_spectrum().get(&2), Some(&1));
        assert_eq!(q8.center().len(), 2);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(CayleyTable::new(2, vec![0, 1, 1, 1], false).is_err());
        assert!(CayleyTable::metacyclic(4, 2, 0, 2).is_err());
    }
}
