use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Point index in a permutation domain.
pub type Point = u16;

/// A bijection of `{0, .., n-1}`, stored as its image list.
///
/// Products are read left to right: `(p * q)(i) = q(p(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[Point]>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as Point).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images<I>(images: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: TryInto<Point>,
    {
        let mut out = Vec::new();
        for x in images {
            let p: Point = x
                .try_into()
                .map_err(|_| Error::NotAPermutation("point index out of range".into()))?;
            out.push(p);
        }
        let n = out.len();
        let mut seen = vec![false; n];
        for &x in &out {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{out:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: out.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<Point>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from disjoint cycles over 0-based points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n || touched[a] {
                    return Err(Error::NotAPermutation(format!("cycles {cycles:?}")));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Parses either cycle notation `(0 1 2)(3 4)` or a plain image list `1 2 0 4 3`.
    /// Cycle notation needs the domain size; image lists carry their own.
    pub fn parse(n: Option<usize>, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('(') || text.is_empty() {
            let n = n.ok_or_else(|| Error::Parse("cycle notation needs a domain size".into()))?;
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            for chunk in text.split('(').skip(1) {
                let body = chunk
                    .split(')')
                    .next()
                    .ok_or_else(|| Error::Parse(format!("bad cycle in `{text}`")))?;
                let cycle = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cycle);
            }
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            Permutation::from_cycles(n, &refs)
        } else {
            let images = text
                .split_whitespace()
                .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            let p = Permutation::from_images(images)?;
            if let Some(n) = n {
                if p.degree() != n {
                    return Err(Error::DomainMismatch(p.degree(), n));
                }
            }
            Ok(p)
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    /// Image of point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self * other`, i.e. apply `self` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DomainMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = self
            .images
            .iter()
            .map(|&i| other.images[i as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0 as Point; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as Point;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// `self^-1 * x * self`, the conjugate written `x^self`.
    pub fn conjugate_of(&self, x: &Permutation) -> Permutation {
        self.inverse().then(x).then(self)
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Cycle notation with 0-based points; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Group product `p * q` (apply `p`, then `q`).
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "domain size mismatch");
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

/// Space-separated image list, the serialization format.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in self.images.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cs).unwrap()
    }

    #[test]
    fn left_to_right_product() {
        // 1-based (12)(23) = (132): 1->3, 3->2, 2->1.
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        let ab = compose(&a, &b).unwrap();
        assert_eq!(ab, cyc(3, &[&[0, 2, 1]]));
        assert_eq!(ab.apply(0), 2);
        assert_eq!(ab.apply(2), 1);
        assert_eq!(ab.apply(1), 0);
    }

    #[test]
    fn identity_and_inverse() {
        let p = cyc(5, &[&[0, 3, 1], &[2, 4]]);
        assert_eq!(&p * &Permutation::identity(5), p);
        assert!((&p * &p.inverse()).is_identity());
        assert_eq!(p.order(), 6);
        assert_eq!(p.pow(6), Permutation::identity(5));
        assert_eq!(p.pow(-1), p.inverse());
        assert!(!p.is_even());
    }

    #[test]
    fn mismatched_domains() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(compose(&a, &b), Err(Error::DomainMismatch(3, 4)));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0usize, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0usize, 3]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn parse_both_notations() {
        let a = Permutation::parse(Some(4), "(0 1)(2 3)").unwrap();
        let b = Permutation::parse(None, "1 0 3 2").unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_string(), "1 0 3 2");
        assert_eq!(a.cycle_string(), "(0 1)(2 3)");
        assert_eq!(
            Permutation::parse(Some(3), "()").unwrap(),
            Permutation::identity(3)
        );
    }

    #[test]
    fn conjugation_notation() {
        // x^g = g^-1 x g
        let x = cyc(3, &[&[0, 1]]);
        let g = cyc(3, &[&[0, 1, 2]]);
        let c = g.conjugate_of(&x);
        assert_eq!(c, &(&g.inverse() * &x) * &g);
        assert_eq!(c.order(), 2);
    }
}
