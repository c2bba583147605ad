//! Arithmetic in `GF(p^k)`.
//!
//! Elements are indexed by `0..p^k`: the element `c0 + c1 x + ... + c(k-1) x^(k-1)`
//! has index `c0 + c1 p + ... + c(k-1) p^(k-1)`. These indices double as
//! permutation-domain points.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field size supported.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    size: u32,
    /// Monic modulus, lowest coefficient first, length `k + 1`.
    modulus: Vec<u32>,
    w: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `Some((p, e))` when `n = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomial remainder of `a` modulo monic `m`, coefficients mod `p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = &mut r[shift + i];
                *t = (*t + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn digits(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    // trial division by every monic polynomial of degree 1..=k/2
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// `GF(p^k)` with the least monic irreducible modulus (ordered by the
    /// index of its lower coefficients) and the least primitive element.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::precondition(
                "field characteristic",
                format!("{p} is not prime"),
            ));
        }
        if k == 0 {
            return Err(Error::precondition(
                "field degree",
                "degree must be at least 1",
            ));
        }
        let size = p
            .checked_pow(k)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or_else(|| Error::cap(format!("field size {p}^{k}"), MAX_FIELD_SIZE as usize))?;
        let (p, size) = (p as u32, size as u32);
        let modulus = (0..size)
            .map(|low| {
                let mut f = digits(low, p, k);
                f.push(1);
                f
            })
            .find(|f| k == 1 || is_irreducible(f, p))
            .expect("an irreducible polynomial exists");
        let mut field = FiniteField {
            p,
            k,
            size,
            modulus,
            w: FieldElement(0),
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = (size - 1) as u64;
        let primes = prime_divisors(order);
        let w = (1..size)
            .map(FieldElement)
            .find(|&x| {
                field.slow_pow(x, order) == field.one()
                    && primes
                        .iter()
                        .all(|&l| field.slow_pow(x, order / l) != field.one())
            })
            .expect("a primitive element exists");
        field.w = w;
        let mut exp = Vec::with_capacity(size as usize);
        let mut log = vec![u32::MAX; size as usize];
        let mut cur = field.one();
        for i in 0..size - 1 {
            exp.push(cur.0);
            log[cur.index()] = i;
            cur = field.slow_mul(cur, w);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn slow_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (da, db) = (digits(a.0, self.p, self.k), digits(b.0, self.p, self.k));
        let mut prod = vec![0u32; 2 * self.k as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.element_from_coefficients(&r)
    }

    fn slow_pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn element_from_coefficients(&self, c: &[u32]) -> FieldElement {
        FieldElement(c.iter().rev().fold(0u32, |acc, &d| acc * self.p + d))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element.
    pub fn w(&self) -> FieldElement {
        self.w
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn element(&self, index: usize) -> Result<FieldElement> {
        if index < self.size() {
            Ok(FieldElement(index as u32))
        } else {
            Err(Error::precondition(
                "field element",
                format!("index {index} outside GF({})", self.size),
            ))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size).map(FieldElement)
    }

    pub fn coefficients(&self, x: FieldElement) -> Vec<u32> {
        digits(x.0, self.p, self.k)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let e = (self.log[a.index()] as u64 + self.log[b.index()] as u64) % (self.size as u64 - 1);
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::precondition("field inverse", "zero has no inverse"));
        }
        let l = self.log[a.index()];
        Ok(FieldElement(
            self.exp[((self.size - 1 - l) % (self.size - 1)) as usize],
        ))
    }

    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return match e {
                0 => Ok(self.one()),
                e if e > 0 => Ok(self.zero()),
                _ => Err(Error::precondition("field inverse", "zero has no inverse")),
            };
        }
        let m = self.size as i64 - 1;
        let l = (self.log[a.index()] as i64 * e.rem_euclid(m)).rem_euclid(m);
        Ok(FieldElement(self.exp[l as usize]))
    }

    /// `w^i` for any integer `i`.
    pub fn w_pow(&self, i: i64) -> FieldElement {
        let m = self.size as i64 - 1;
        FieldElement(self.exp[i.rem_euclid(m) as usize])
    }

    /// Discrete log base `w` of a nonzero element.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.index()])
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as i64).expect("nonnegative exponent")
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        a.0 == 0 || self.p == 2 || self.log[a.index()].is_multiple_of(2)
    }

    /// Coefficient tuple `c0,c1,...`.
    pub fn format_element(&self, a: FieldElement) -> String {
        let parts: Vec<String> = self.coefficients(a).iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

/// `GF(p,k,modulus=c0,c1,...,1)`.
impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "GF({},{},modulus={})", self.p, self.k, m.join(","))
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} w={}", self.format_element(self.w))
    }
}
