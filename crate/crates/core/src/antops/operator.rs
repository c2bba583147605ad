use std::any::Any;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::sharply::{falling, sharply2, sharply3, TransporterTable};
use super::{admissible, AnCase};
use crate::error::{Error, Result};
use crate::permcore::{FiniteGroup, Permutation};
use crate::rbcore::{Images, ProceduralRule, RbOperator, VerifyMode};
use crate::stdgroups::alternating_generators;

/// `L x L` is checked pair by pair up to this many pairs.
pub const LAYER2_EXHAUSTIVE_CAP: usize = 6_000_000;

/// Seeded pairs from `L x L` checked when `L x L` is larger than the cap.
pub const LAYER2_SAMPLES: usize = 1_000_000;

/// Default number of random `A_n` pairs in the last verification layer.
pub const DEFAULT_AN_SAMPLES: usize = 100_000;

/// Choice of the index-2 subgroup `F S_i` in the degree-2 case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    S1,
    S2,
    S3,
    #[default]
    Default,
}

impl Variant {
    fn slot(self) -> usize {
        match self {
            Variant::S1 | Variant::Default => 0,
            Variant::S2 => 1,
            Variant::S3 => 2,
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "s1" => Ok(Variant::S1),
            "s2" => Ok(Variant::S2),
            "s3" => Ok(Variant::S3),
            "default" => Ok(Variant::Default),
            other => Err(Error::Parse(format!("unknown variant `{other}`"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::S1 => "S1",
            Variant::S2 => "S2",
            Variant::S3 => "S3",
            Variant::Default => "default",
        };
        f.write_str(s)
    }
}

/// `B(kl) = l^-1 r^d(l)` on `A_n = K L`, where `K` is the alternating group
/// on the points outside a distinguished tuple and `L` is sharply transitive
/// on that tuple. `l` is read off the images of the distinguished points.
pub struct AnOperator {
    n: usize,
    case: Option<AnCase>,
    variant: Option<Variant>,
    field: Option<String>,
    points: Vec<usize>,
    k: FiniteGroup,
    l: FiniteGroup,
    s: FiniteGroup,
    t: Permutation,
    r: Permutation,
    transport: TransporterTable,
    in_s: Vec<bool>,
    values: Vec<Permutation>,
}

impl fmt::Debug for AnOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnOperator({})", self.descriptor())
    }
}

/// `A_m` on points `0..m`, acting on `n` points.
fn alt_on_prefix(m: usize, n: usize) -> FiniteGroup {
    let gens = if m >= 3 {
        alternating_generators(m)
            .into_iter()
            .map(|g| {
                Permutation::from_images(g.images().iter().map(|&x| x as usize).chain(m..n))
                    .expect("lift")
            })
            .collect()
    } else {
        Vec::new()
    };
    FiniteGroup::handle(&format!("A{m}"), n, gens)
}

fn random_even(rng: &mut ChaCha8Rng, moved: usize, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..moved).collect();
    images.shuffle(rng);
    let p = Permutation::from_images(images.iter().copied().chain(moved..n)).expect("shuffle");
    if p.is_even() || moved < 2 {
        p
    } else {
        images.swap(0, 1);
        Permutation::from_images(images.into_iter().chain(moved..n)).expect("shuffle")
    }
}

impl AnOperator {
    fn assemble(
        n: usize,
        points: &[usize],
        l: FiniteGroup,
        s: FiniteGroup,
        t: Permutation,
        r: Permutation,
    ) -> Result<AnOperator> {
        let d = points.len();
        if points.iter().copied().ne(n - d..n) {
            return Err(Error::precondition(
                "distinguished points",
                format!("{points:?} must be the {d} largest points of 0..{n}"),
            ));
        }
        if [&t, &r].iter().any(|p| p.degree() != n) || l.degree() != n || s.degree() != n {
            return Err(Error::DomainMismatch(n, l.degree()));
        }
        let transport = TransporterTable::build(&l, points)?;
        let elements = l.elements()?;
        let in_s: Vec<bool> = elements.iter().map(|x| s.contains(x)).collect();
        let values = elements
            .par_iter()
            .zip(in_s.par_iter())
            .map(|(x, &inside)| {
                if inside {
                    x.inverse()
                } else {
                    &x.inverse() * &r
                }
            })
            .collect();
        Ok(AnOperator {
            n,
            case: None,
            variant: None,
            field: None,
            points: points.to_vec(),
            k: alt_on_prefix(n - d, n),
            l,
            s,
            t,
            r,
            transport,
            in_s,
            values,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn case(&self) -> Option<AnCase> {
        self.case
    }

    pub fn variant(&self) -> Option<Variant> {
        self.variant
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn k(&self) -> &FiniteGroup {
        &self.k
    }

    pub fn l(&self) -> &FiniteGroup {
        &self.l
    }

    pub fn s(&self) -> &FiniteGroup {
        &self.s
    }

    pub fn t(&self) -> &Permutation {
        &self.t
    }

    pub fn r(&self) -> &Permutation {
        &self.r
    }

    pub fn transporter(&self) -> &TransporterTable {
        &self.transport
    }

    /// `x = k l` with `k` in `K` and `l` in `L`.
    pub fn decompose(&self, x: &Permutation) -> Option<(Permutation, Permutation)> {
        let li = self.transport.lookup_perm(x)?;
        let l = self.l.element(li);
        Some((x * &l.inverse(), l.clone()))
    }

    /// `r^d(l)`: `e` on `S`, `r` off it.
    pub fn delta(&self, l: &Permutation) -> Option<Permutation> {
        let i = self.l.index_of(l)?;
        Some(if self.in_s[i as usize] {
            self.l.identity()
        } else {
            self.r.clone()
        })
    }

    /// A uniformly random element of `K`.
    pub fn random_k(&self, rng: &mut ChaCha8Rng) -> Permutation {
        random_even(rng, self.n - self.points.len(), self.n)
    }

    fn list(perms: &[Permutation]) -> String {
        perms
            .iter()
            .map(Permutation::cycle_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl ProceduralRule for AnOperator {
    fn apply(&self, g: &Permutation) -> Permutation {
        match self.transport.lookup_perm(g) {
            Some(i) => self.values[i as usize].clone(),
            None => panic!("{} is not in A{}", g.cycle_string(), self.n),
        }
    }

    fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.n && g.is_even()
    }

    fn random_element(&self, rng: &mut ChaCha8Rng) -> Permutation {
        random_even(rng, self.n, self.n)
    }

    fn structure(&self) -> Images {
        let d = self.points.len();
        let mut h_gens = self.k.generators().to_vec();
        h_gens.push(self.r.clone());
        let r = FiniteGroup::generate("<r>", self.n, vec![self.r.clone()], 2).expect("involution");
        Images {
            im: self.l.clone(),
            ker: self.k.clone(),
            im_tilde: FiniteGroup::handle(&format!("<A{},r>", self.n - d), self.n, h_gens),
            ker_tilde: self.s.clone(),
            r,
        }
    }

    fn descriptor(&self) -> String {
        let points: Vec<String> = self.points.iter().map(usize::to_string).collect();
        let mut parts = vec![format!("an n={}", self.n)];
        if let Some(case) = self.case {
            parts.push(format!("case={case}"));
        }
        if let Some(v) = self.variant {
            parts.push(format!("variant={v}"));
        }
        if let Some(f) = &self.field {
            parts.push(format!("field={f}"));
        }
        parts.push(format!("points={}", points.join(" ")));
        parts.push(format!("t={}", self.t.cycle_string()));
        parts.push(format!("r={}", self.r.cycle_string()));
        parts.push(format!("L={}", Self::list(self.l.generators())));
        parts.push(format!("S={}", Self::list(self.s.generators())));
        parts.join(" | ")
    }

    fn as_any(&self) -> Option<&dyn Any> {
        Some(self)
    }
}

fn an_group(n: usize) -> FiniteGroup {
    FiniteGroup::handle(&format!("A{n}"), n, alternating_generators(n))
}

fn wrap(rule: AnOperator, provenance: &str) -> RbOperator {
    let g = an_group(rule.n);
    RbOperator::procedural(&g, Arc::new(rule), provenance)
}

/// Involutions of `group` mapping the set `points` to itself, in canonical order.
pub fn involutions_stabilizing(group: &FiniteGroup, points: &[usize]) -> Result<Vec<Permutation>> {
    Ok(group
        .elements()?
        .iter()
        .filter(|x| !x.is_identity() && x.pow(2).is_identity())
        .filter(|x| points.iter().all(|&p| points.contains(&x.apply(p))))
        .cloned()
        .collect())
}

/// The non-splitting operator on `A_n` for admissible `n`.
pub fn build_an_operator(n: usize, variant: Variant) -> Result<RbOperator> {
    let verdict = admissible(n as u64);
    let (Some(case), Some(q), Some(m)) = (verdict.case, verdict.q, verdict.m) else {
        return Err(Error::precondition("admissible degree", format!("n = {n}")));
    };
    let (st, points, s) = match case {
        AnCase::A => {
            let st = sharply2(m, q, 1)?;
            let s = st.index2[variant.slot()].clone();
            (st, vec![n - 2, n - 1], s)
        }
        AnCase::B => {
            if !matches!(variant, Variant::Default | Variant::S1) {
                return Err(Error::precondition(
                    "variant",
                    format!("{variant} applies to n = q^m only"),
                ));
            }
            let st = sharply3(q.pow(m))?;
            let s = st.index2[0].clone();
            (st, vec![n - 3, n - 2, n - 1], s)
        }
    };
    let l = st.group.clone();
    let t = l
        .elements()?
        .iter()
        .find(|x| !s.contains(x))
        .cloned()
        .ok_or_else(|| Error::precondition("t in L minus S", "S is all of L"))?;
    let r = involutions_stabilizing(&l, &points)?
        .into_iter()
        .next()
        .ok_or_else(|| {
            Error::precondition(
                "involution r",
                format!("no involution of L stabilizes {points:?}"),
            )
        })?;
    let mut rule = AnOperator::assemble(n, &points, l, s, t, r)?;
    rule.case = Some(case);
    rule.variant = Some(variant);
    rule.field = st.field.as_ref().map(|f| f.to_string());
    Ok(wrap(rule, &format!("an(n={n}, variant={variant})")))
}

/// An operator of the same shape from explicit data. Nothing beyond the
/// transporter table is checked here; see [`verify_an_operator`].
pub fn assemble_an_operator(
    n: usize,
    points: &[usize],
    l_gens: Vec<Permutation>,
    s_gens: Vec<Permutation>,
    t: Permutation,
    r: Permutation,
) -> Result<RbOperator> {
    let cap = falling(n, points.len());
    let l = FiniteGroup::generate("L", n, l_gens, cap)?;
    let s = FiniteGroup::generate("S", n, s_gens, cap)?;
    let rule = AnOperator::assemble(n, points, l, s, t, r)?;
    Ok(wrap(rule, &format!("an(n={n}, assembled)")))
}

/// Rebuilds an operator from its descriptor line.
pub fn an_operator_from_descriptor(descriptor: &str) -> Result<RbOperator> {
    let mut n = None;
    let mut fields = std::collections::HashMap::new();
    for part in descriptor.split(" | ") {
        let part = part.trim();
        if let Some(v) = part.strip_prefix("an n=") {
            n = Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(e.to_string()))?,
            );
        } else if let Some((k, v)) = part.split_once('=') {
            fields.insert(k.trim(), v.trim());
        }
    }
    let n = n.ok_or_else(|| Error::Parse("descriptor lacks `an n=`".into()))?;
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| Error::Parse(format!("descriptor lacks `{k}`")))
    };
    let perm = |s: &str| Permutation::parse(Some(n), s);
    let perms = |s: &str| {
        s.split(',')
            .filter(|x| !x.trim().is_empty())
            .map(perm)
            .collect::<Result<Vec<_>>>()
    };
    let points = get("points")?
        .split_whitespace()
        .map(|x| x.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let op = assemble_an_operator(
        n,
        &points,
        perms(get("L")?)?,
        perms(get("S")?)?,
        perm(get("t")?)?,
        perm(get("r")?)?,
    )?;
    let rule = an_parts(&op).expect("assembled");
    let mut rule = AnOperator::assemble(
        n,
        &points,
        rule.l.clone(),
        rule.s.clone(),
        rule.t.clone(),
        rule.r.clone(),
    )?;
    rule.case = fields.get("case").and_then(|c| c.parse().ok());
    rule.variant = fields.get("variant").and_then(|v| v.parse().ok());
    rule.field = fields.get("field").map(|f| f.to_string());
    let prov = match rule.variant {
        Some(v) => format!("an(n={n}, variant={v})"),
        None => format!("an(n={n}, assembled)"),
    };
    Ok(wrap(rule, &prov))
}

/// The rule behind an operator from this module, if it is one.
pub fn an_parts(op: &RbOperator) -> Option<&AnOperator> {
    op.rule()?.as_any()?.downcast_ref::<AnOperator>()
}

/// Copy of `op` with `r` replaced, keeping everything else. For negative controls.
pub fn with_replaced_r(op: &RbOperator, r: Permutation) -> Result<RbOperator> {
    let a = an_parts(op)
        .ok_or_else(|| Error::precondition("procedural A_n operator", op.provenance()))?;
    let mut rule = AnOperator::assemble(a.n, &a.points, a.l.clone(), a.s.clone(), a.t.clone(), r)?;
    rule.case = a.case;
    rule.variant = a.variant;
    rule.field = a.field.clone();
    Ok(wrap(rule, &format!("{} with replaced r", op.provenance())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerFailure {
    pub condition: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerReport {
    pub name: &'static str,
    pub pass: bool,
    pub checked: u64,
    pub exhaustive: bool,
    pub failure: Option<LayerFailure>,
}

impl fmt::Display for LayerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "layer {}: {} checked={} {}",
            self.name,
            if self.pass { "pass" } else { "fail" },
            self.checked,
            if self.exhaustive {
                "exhaustive"
            } else {
                "sampled"
            }
        )?;
        if let Some(fail) = &self.failure {
            write!(
                f,
                " condition=\"{}\" witness={}",
                fail.condition, fail.witness
            )?;
        }
        Ok(())
    }
}

/// Outcome of the layered check; stops at the first failing layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnVerdict {
    pub layers: Vec<LayerReport>,
    pub seed: u64,
}

impl AnVerdict {
    pub fn pass(&self) -> bool {
        self.layers.len() == 3 && self.layers.iter().all(|l| l.pass)
    }

    pub fn first_failure(&self) -> Option<&LayerReport> {
        self.layers.iter().find(|l| !l.pass)
    }
}

impl fmt::Display for AnVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for layer in &self.layers {
            writeln!(f, "{layer}")?;
        }
        write!(
            f,
            "verify-an: {} seed={}",
            if self.pass() { "pass" } else { "fail" },
            self.seed
        )
    }
}

fn structural(op: &RbOperator, a: &AnOperator) -> Result<LayerReport> {
    let mut checked = 0u64;
    let fail = |condition: &str, witness: String, checked: u64| LayerReport {
        name: "structural",
        pass: false,
        checked,
        exhaustive: true,
        failure: Some(LayerFailure {
            condition: condition.to_string(),
            witness,
        }),
    };
    let elements = a.l.elements()?;
    let d = a.points.len();
    if let Some(g) = a.l.generators().iter().find(|g| !g.is_even()) {
        return Ok(fail("L inside A_n", g.cycle_string(), checked));
    }
    if let Some(g) =
        a.k.generators()
            .iter()
            .find(|g| a.points.iter().any(|&p| g.apply(p) != p) || !g.is_even())
    {
        return Ok(fail(
            "exact factorization K L",
            format!("K generator {}", g.cycle_string()),
            checked,
        ));
    }
    if elements.len() != falling(a.n, d) {
        return Ok(fail(
            "exact factorization K L",
            format!("|L| = {}", elements.len()),
            checked,
        ));
    }
    if let Some(x) = elements
        .iter()
        .find(|x| !x.is_identity() && a.points.iter().all(|&p| x.apply(p) == p))
    {
        return Ok(fail(
            "exact factorization K L",
            format!("{} lies in K and L", x.cycle_string()),
            checked,
        ));
    }
    checked += elements.len() as u64;
    if !a.s.is_subset_of(&a.l)? || 2 * a.s.order().unwrap_or(0) != elements.len() {
        return Ok(fail(
            "S has index 2 in L",
            format!("|S| = {:?}", a.s.order()),
            checked,
        ));
    }
    if !a.l.contains(&a.t) || a.s.contains(&a.t) {
        return Ok(fail("t in L minus S", a.t.cycle_string(), checked));
    }
    if !a.l.contains(&a.r) {
        return Ok(fail("r in L", a.r.cycle_string(), checked));
    }
    if a.r.is_identity() || !a.r.pow(2).is_identity() {
        return Ok(fail("r is an involution", a.r.cycle_string(), checked));
    }
    for k in a.k.generators() {
        let c = a.r.conjugate_of(k);
        if a.points.iter().any(|&p| c.apply(p) != p) {
            return Ok(fail(
                "r normalizes K",
                format!(
                    "{} conjugates {} out of K",
                    a.r.cycle_string(),
                    k.cycle_string()
                ),
                checked,
            ));
        }
    }
    for g in a.l.generators() {
        let gi = a.l.require_index(g)? as usize;
        for (bi, b) in elements.iter().enumerate() {
            let prod = a.l.require_index(&(g * b))? as usize;
            if a.in_s[prod] != (a.in_s[gi] == a.in_s[bi]) {
                return Ok(fail(
                    "delta homomorphism",
                    format!("({}, {})", g.cycle_string(), b.cycle_string()),
                    checked,
                ));
            }
            checked += 1;
        }
    }
    let tilde = op.tilde();
    let mut hit_r = false;
    for (i, x) in elements.iter().enumerate() {
        let expected = if a.in_s[i] {
            a.l.identity()
        } else {
            a.r.clone()
        };
        let got = tilde.apply(x)?;
        if got != expected {
            return Ok(fail(
                "tilde restricted to L is a homomorphism onto <r>",
                format!("B~({}) = {}", x.cycle_string(), got.cycle_string()),
                checked,
            ));
        }
        hit_r |= !a.in_s[i];
        checked += 1;
    }
    if !hit_r {
        return Ok(fail(
            "tilde restricted to L is a homomorphism onto <r>",
            "image is trivial".into(),
            checked,
        ));
    }
    Ok(LayerReport {
        name: "structural",
        pass: true,
        checked,
        exhaustive: true,
        failure: None,
    })
}

fn l_pairs(op: &RbOperator, a: &AnOperator, seed: u64) -> Result<LayerReport> {
    let elements = a.l.elements()?;
    let m = elements.len();
    let (bad, checked, exhaustive) = if m * m <= LAYER2_EXHAUSTIVE_CAP {
        let bad = (0..m).into_par_iter().find_map_first(|i| {
            let g = &elements[i];
            elements
                .iter()
                .find(|h| !op.identity_holds(g, h))
                .map(|h| (g.clone(), h.clone()))
        });
        (bad, (m * m) as u64, true)
    } else {
        let chunks = LAYER2_SAMPLES.div_ceil(1024);
        let bad = (0..chunks).into_par_iter().find_map_first(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64 + (1 << 32));
            (0..1024.min(LAYER2_SAMPLES - c * 1024)).find_map(|_| {
                let g = &elements[rng.gen_range(0..m)];
                let h = &elements[rng.gen_range(0..m)];
                (!op.identity_holds(g, h)).then(|| (g.clone(), h.clone()))
            })
        });
        (bad, LAYER2_SAMPLES as u64, false)
    };
    Ok(LayerReport {
        name: "l_pairs",
        pass: bad.is_none(),
        checked,
        exhaustive,
        failure: bad.map(|(g, h)| LayerFailure {
            condition: "identity on L x L".into(),
            witness: format!("g={} h={}", g.cycle_string(), h.cycle_string()),
        }),
    })
}

/// Three layers: structural conditions over `L`; the identity on `L x L`
/// (sampled past [`LAYER2_EXHAUSTIVE_CAP`] pairs); the identity on `samples`
/// seeded random pairs of `A_n`.
pub fn verify_an_operator(op: &RbOperator, samples: usize, seed: u64) -> Result<AnVerdict> {
    let a = an_parts(op)
        .ok_or_else(|| Error::precondition("procedural A_n operator", op.provenance()))?;
    let mut layers = vec![structural(op, a)?];
    if layers[0].pass {
        layers.push(l_pairs(op, a, seed)?);
    }
    if layers.iter().all(|l| l.pass) {
        let v = op.verify(VerifyMode::Sampled {
            count: samples,
            seed,
        })?;
        layers.push(LayerReport {
            name: "an_samples",
            pass: v.pass,
            checked: v.pairs,
            exhaustive: false,
            failure: v.counterexample.map(|(g, h)| LayerFailure {
                condition: "identity on A_n".into(),
                witness: format!("g={} h={}", g.cycle_string(), h.cycle_string()),
            }),
        });
    }
    Ok(AnVerdict { layers, seed })
}

/// Counts of the checked identities of the descendent product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DescendentReport {
    /// `l o h = h^(r^d(l)) o l` for `h` in `K`, `l` in `L`, sampled.
    pub twist_checks: u64,
    /// `h o h' = h h'` on `K`, sampled.
    pub kernel_checks: u64,
    /// `s o s' = s' s` on `S`, exhaustive.
    pub opposite_checks: u64,
}

impl fmt::Display for DescendentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "descendent: pass twist={} kernel={} opposite={}",
            self.twist_checks, self.kernel_checks, self.opposite_checks
        )
    }
}

/// Checks the descendent product on `K`, `L` and `S` for an operator with a
/// distinguished pair of points.
pub fn descendent_structure(
    op: &RbOperator,
    samples: usize,
    seed: u64,
) -> Result<DescendentReport> {
    let a = an_parts(op)
        .ok_or_else(|| Error::precondition("procedural A_n operator", op.provenance()))?;
    if a.points.len() != 2 {
        return Err(Error::precondition(
            "n = q^m",
            "the descendent structure needs a distinguished pair",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements = a.l.elements()?;
    let failure = |what: &str, x: &Permutation, y: &Permutation| {
        Err(Error::InvalidOperator(format!(
            "{what} fails at ({}, {})",
            x.cycle_string(),
            y.cycle_string()
        )))
    };
    for _ in 0..samples {
        let l = elements.choose(&mut rng).expect("nonempty");
        let h = a.random_k(&mut rng);
        let twisted = match a.delta(l) {
            Some(d) => d.conjugate_of(&h),
            None => return failure("delta", l, &h),
        };
        if op.circ(l, &h)? != op.circ(&twisted, l)? {
            return failure("l o h = h^(r^d) o l", l, &h);
        }
        let h2 = a.random_k(&mut rng);
        if op.circ(&h, &h2)? != &h * &h2 {
            return failure("h o h' = h h'", &h, &h2);
        }
    }
    let s = a.s.elements()?;
    let bad = s.par_iter().find_map_first(|x| {
        s.iter()
            .find(|y| op.circ(x, y).map(|c| c != *y * x).unwrap_or(true))
            .map(|y| (x.clone(), y.clone()))
    });
    if let Some((x, y)) = bad {
        return failure("s o s' = s' s", &x, &y);
    }
    Ok(DescendentReport {
        twist_checks: samples as u64,
        kernel_checks: samples as u64,
        opposite_checks: (s.len() * s.len()) as u64,
    })
}
