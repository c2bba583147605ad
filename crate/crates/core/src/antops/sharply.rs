use std::fmt;

use crate::error::{Error, Result};
use crate::finitefield::{prime_divisors, prime_power, FieldElement, FiniteField};
use crate::permcore::{FiniteGroup, Permutation};

/// Largest group order the constructions will enumerate.
pub const SHARPLY_ORDER_CAP: usize = 200_000;

/// `n (n-1) ... (n-k+1)`.
pub fn falling(n: usize, k: usize) -> usize {
    (0..k).map(|i| n - i).product()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A sharply `k`-transitive permutation group, `k` in `{2, 3}`, with the data
/// of its construction.
#[derive(Clone)]
pub struct SharplyTransitiveGroup {
    pub degree: usize,
    pub transitivity: usize,
    /// Field whose element indices are the points; the point at infinity, when
    /// present, is the last point.
    pub field: Option<FiniteField>,
    pub infinity: Option<usize>,
    pub group: FiniteGroup,
    /// Generators of the translation subgroup.
    pub translations: Vec<Permutation>,
    pub a: Option<Permutation>,
    pub b: Option<Permutation>,
    /// `N = <a, b>`, the stabilizer of the zero point.
    pub n_part: Option<FiniteGroup>,
    /// `F S1, F S2, F S3` for the degree-2 groups inside `A_n`; `PSL2(q)` for `M(q)`.
    pub index2: Vec<FiniteGroup>,
    pub twist: Option<Permutation>,
}

impl fmt::Debug for SharplyTransitiveGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SharplyTransitiveGroup")
            .field("label", &self.group.label())
            .field("degree", &self.degree)
            .field("transitivity", &self.transitivity)
            .field("order", &self.group.order())
            .finish()
    }
}

impl SharplyTransitiveGroup {
    pub fn order(&self) -> usize {
        self.group.order().expect("enumerated")
    }

    /// Validates user-supplied generators: the closure must have order
    /// `n (n-1) ... (n-k+1)` and carry the first `k` points to every tuple of
    /// distinct points exactly once.
    pub fn from_generators(
        label: &str,
        degree: usize,
        generators: Vec<Permutation>,
        k: usize,
    ) -> Result<Self> {
        if !(2..=3).contains(&k) || degree < k {
            return Err(Error::precondition(
                "transitivity",
                format!("k = {k} on {degree} points"),
            ));
        }
        let group = FiniteGroup::generate(label, degree, generators, falling(degree, k))
            .map_err(|e| Error::precondition("sharp transitivity", format!("closure: {e}")))?;
        validate_sharp(&group, k)?;
        Ok(SharplyTransitiveGroup {
            degree,
            transitivity: k,
            field: None,
            infinity: None,
            group,
            translations: Vec::new(),
            a: None,
            b: None,
            n_part: None,
            index2: Vec::new(),
            twist: None,
        })
    }

    pub fn is_inside_alternating(&self) -> bool {
        self.group.generators().iter().all(Permutation::is_even)
    }
}

fn validate_sharp(group: &FiniteGroup, k: usize) -> Result<TransporterTable> {
    let n = group.degree();
    if group.order() != Some(falling(n, k)) {
        return Err(Error::precondition(
            "sharp transitivity",
            format!("order {:?}, expected {}", group.order(), falling(n, k)),
        ));
    }
    let points: Vec<usize> = (0..k).collect();
    TransporterTable::build(group, &points)
}

/// Lookup from the images of a fixed tuple of distinct points to the unique
/// group element realizing them.
#[derive(Clone, Debug)]
pub struct TransporterTable {
    degree: usize,
    points: Vec<usize>,
    slots: Vec<u32>,
    filled: usize,
}

impl TransporterTable {
    /// Fails when two elements agree on the tuple, or when some tuple of
    /// distinct points is not reached.
    pub fn build(group: &FiniteGroup, points: &[usize]) -> Result<Self> {
        let n = group.degree();
        let k = points.len();
        if points.iter().any(|&p| p >= n) || (1..k).any(|i| points[..i].contains(&points[i])) {
            return Err(Error::precondition(
                "distinct points",
                format!("{points:?} on {n} points"),
            ));
        }
        let elements = group.elements()?;
        let mut slots = vec![u32::MAX; n.pow(k as u32)];
        for (i, g) in elements.iter().enumerate() {
            let key = points.iter().fold(0, |acc, &p| acc * n + g.apply(p));
            if slots[key] != u32::MAX {
                let other = &elements[slots[key] as usize];
                return Err(Error::precondition(
                    "sharp transitivity",
                    format!(
                        "{} and {} agree on {points:?}",
                        other.cycle_string(),
                        g.cycle_string()
                    ),
                ));
            }
            slots[key] = i as u32;
        }
        if elements.len() != falling(n, k) {
            return Err(Error::precondition(
                "sharp transitivity",
                format!(
                    "{} elements reach {} of {} tuples",
                    elements.len(),
                    elements.len(),
                    falling(n, k)
                ),
            ));
        }
        Ok(TransporterTable {
            degree: n,
            points: points.to_vec(),
            slots,
            filled: elements.len(),
        })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// Number of tuples with a transporter.
    pub fn len(&self) -> usize {
        self.filled
    }

    pub fn is_empty(&self) -> bool {
        self.filled == 0
    }

    /// Index of the element sending the base tuple to `images`.
    pub fn lookup(&self, images: &[usize]) -> Option<u32> {
        if images.len() != self.points.len() || images.iter().any(|&x| x >= self.degree) {
            return None;
        }
        let key = images.iter().fold(0, |acc, &p| acc * self.degree + p);
        let slot = self.slots[key];
        (slot != u32::MAX).then_some(slot)
    }

    /// Index of the element agreeing with `x` on the base tuple.
    #[inline]
    pub fn lookup_perm(&self, x: &Permutation) -> Option<u32> {
        if x.degree() != self.degree {
            return None;
        }
        let key = self
            .points
            .iter()
            .fold(0, |acc, &p| acc * self.degree + x.apply(p));
        let slot = self.slots[key];
        (slot != u32::MAX).then_some(slot)
    }
}

pub fn pair_table(
    l: &SharplyTransitiveGroup,
    alpha: usize,
    beta: usize,
) -> Result<TransporterTable> {
    TransporterTable::build(&l.group, &[alpha, beta])
}

pub fn triple_table(
    l: &SharplyTransitiveGroup,
    alpha: usize,
    beta: usize,
    gamma: usize,
) -> Result<TransporterTable> {
    TransporterTable::build(&l.group, &[alpha, beta, gamma])
}

fn field_map(field: &FiniteField, f: impl Fn(FieldElement) -> FieldElement) -> Permutation {
    Permutation::from_images(field.elements().map(|x| f(x).index())).expect("field bijection")
}

/// A map of the projective line; `None` is the point at infinity.
fn projective_map(
    field: &FiniteField,
    f: impl Fn(Option<FieldElement>) -> Option<FieldElement>,
) -> Permutation {
    let q = field.size();
    let images = field
        .elements()
        .map(Some)
        .chain(std::iter::once(None))
        .map(|x| f(x).map_or(q, FieldElement::index));
    Permutation::from_images(images).expect("projective bijection")
}

/// The sharply 2-transitive group `L(m,q,t)` on the points of `GF(q^m)`:
/// translations together with `a: x -> w^m x` and `b: x -> w^t x^q`.
pub fn sharply2(m: u32, q: u64, t: u32) -> Result<SharplyTransitiveGroup> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::precondition("q is a prime power", format!("q = {q}")))?;
    if m == 0
        || prime_divisors(m as u64)
            .iter()
            .any(|r| !(q - 1).is_multiple_of(*r))
    {
        return Err(Error::precondition(
            "prime divisors of m divide q-1",
            format!("m = {m}, q = {q}"),
        ));
    }
    if m.is_multiple_of(4) && !(q - 1).is_multiple_of(4) {
        return Err(Error::precondition(
            "4 | m implies 4 | q-1",
            format!("m = {m}, q = {q}"),
        ));
    }
    if gcd(m as u64, t as u64) != 1 {
        return Err(Error::precondition(
            "(m,t) = 1",
            format!("m = {m}, t = {t}"),
        ));
    }
    let k = e * m;
    let n = q
        .checked_pow(m)
        .filter(|&n| falling(n as usize, 2) <= SHARPLY_ORDER_CAP)
        .ok_or_else(|| Error::cap(format!("L({m},{q},{t})"), SHARPLY_ORDER_CAP))?
        as usize;
    let field = FiniteField::new(p, k)?;
    let a = field_map(&field, |x| field.mul(field.w_pow(m as i64), x));
    let b = field_map(&field, |x| {
        field.mul(field.w_pow(t as i64), field.pow(x, q as i64).expect("x^q"))
    });
    let translations: Vec<Permutation> = (0..k as i64)
        .map(|i| field_map(&field, |x| field.add(x, field.w_pow(i))))
        .collect();
    let mut gens = translations.clone();
    gens.extend([a.clone(), b.clone()]);
    let label = format!("L({m},{q},{t})");
    let group = FiniteGroup::generate(&label, n, gens, falling(n, 2))
        .map_err(|e| Error::precondition("sharp transitivity", format!("{label}: {e}")))?;
    validate_sharp(&group, 2)?;
    if b.conjugate_of(&a) != a.pow(q as i64) {
        return Err(Error::precondition("b^-1 a b = a^q", label));
    }
    let n_part = FiniteGroup::generate("N", n, vec![a.clone(), b.clone()], n - 1)?;
    let mut st = SharplyTransitiveGroup {
        degree: n,
        transitivity: 2,
        field: Some(field),
        infinity: None,
        group,
        translations,
        a: Some(a.clone()),
        b: Some(b.clone()),
        n_part: Some(n_part),
        index2: Vec::new(),
        twist: None,
    };
    if q % 4 == 3 && m % 4 == 2 {
        if !st.is_inside_alternating() {
            return Err(Error::precondition("L inside A_n", label));
        }
        let parts = [
            ("F.S1", [a.clone(), b.pow(2)]),
            ("F.S2", [a.pow(2), b.clone()]),
            ("F.S3", [a.pow(2), &a * &b]),
        ];
        for (name, extra) in parts {
            let mut gens = st.translations.clone();
            gens.extend(extra);
            let sub = st.group.subgroup_generated(name, &gens)?;
            if 2 * sub.order().expect("enumerated") != st.order() {
                return Err(Error::precondition(
                    "F S_i has index 2 in L",
                    format!("{name} in {label}"),
                ));
            }
            st.index2.push(sub);
        }
    }
    Ok(st)
}

/// The sharply 3-transitive group `M(q)`, `q` an even power of an odd prime,
/// on the projective line over `GF(q)`: `PSL2(q)` extended by the first
/// `x -> c x^(sqrt q)` that passes every check.
pub fn sharply3(q: u64) -> Result<SharplyTransitiveGroup> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::precondition("q is a prime power", format!("q = {q}")))?;
    if p == 2 || e % 2 == 1 {
        return Err(Error::precondition(
            "q is an even power of an odd prime",
            format!("q = {q}"),
        ));
    }
    let n = q as usize + 1;
    let order = falling(n, 3);
    if order > SHARPLY_ORDER_CAP {
        return Err(Error::cap(format!("M({q})"), SHARPLY_ORDER_CAP));
    }
    let field = FiniteField::new(p, e)?;
    let f = &field;
    let shift = projective_map(f, |x| x.map(|x| f.add(x, f.one())));
    let scale = projective_map(f, |x| x.map(|x| f.mul(f.w_pow(2), x)));
    let flip = projective_map(f, |x| match x {
        None => Some(f.zero()),
        Some(x) if x == f.zero() => None,
        Some(x) => Some(f.neg(f.inv(x).expect("nonzero"))),
    });
    let psl_gens = vec![shift.clone(), scale.clone(), flip.clone()];
    let psl = FiniteGroup::generate(&format!("PSL2({q})"), n, psl_gens.clone(), order / 2)?;
    if psl.order() != Some(order / 2) {
        return Err(Error::precondition(
            "PSL2 order",
            format!("{:?}", psl.order()),
        ));
    }
    let root = p.pow(e / 2) as i64;
    let mut failures = Vec::new();
    for c in f.elements().filter(|&c| c != f.zero()) {
        let twist = projective_map(f, |x| x.map(|x| f.mul(c, f.pow(x, root).expect("power"))));
        let tag = format!("c={}", f.format_element(c));
        let fixed = (0..n).filter(|&i| twist.apply(i) == i).count();
        if !twist.is_identity() && fixed >= 3 {
            failures.push(format!("{tag}: twist fixes {fixed} points"));
            continue;
        }
        if !twist.is_even() {
            failures.push(format!("{tag}: twist is odd"));
            continue;
        }
        let mut gens = psl_gens.clone();
        gens.push(twist.clone());
        let group = match FiniteGroup::generate(&format!("M({q})"), n, gens, order) {
            Ok(g) if g.order() == Some(order) => g,
            Ok(g) => {
                failures.push(format!("{tag}: order {:?}", g.order()));
                continue;
            }
            Err(err) => {
                failures.push(format!("{tag}: {err}"));
                continue;
            }
        };
        if let Err(err) = TransporterTable::build(&group, &[0, 1, q as usize]) {
            failures.push(format!("{tag}: {err}"));
            continue;
        }
        if !group.generators().iter().all(Permutation::is_even) {
            failures.push(format!("{tag}: not inside A_{n}"));
            continue;
        }
        if !psl.is_subset_of(&group)? || 2 * psl.order().expect("enumerated") != order {
            failures.push(format!("{tag}: PSL2 is not of index 2"));
            continue;
        }
        return Ok(SharplyTransitiveGroup {
            degree: n,
            transitivity: 3,
            field: Some(field.clone()),
            infinity: Some(q as usize),
            group,
            translations: vec![shift],
            a: None,
            b: None,
            n_part: None,
            index2: vec![psl],
            twist: Some(twist),
        });
    }
    Err(Error::precondition("M(q) twist", failures.join("; ")))
}
