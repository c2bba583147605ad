use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use super::{Body, ProceduralRule, RbOperator};
use crate::error::{Error, Result};
use crate::permcore::{iso_label_table, CayleyTable, FiniteGroup, Permutation};

/// `Im(B)`, `ker(B)`, `Im(B~)`, `ker(B~)` and `R = Im(B) & Im(B~)`.
#[derive(Clone, Debug)]
pub struct Images {
    pub im: FiniteGroup,
    pub ker: FiniteGroup,
    pub im_tilde: FiniteGroup,
    pub ker_tilde: FiniteGroup,
    pub r: FiniteGroup,
}

impl Images {
    /// The same data seen from `B~`.
    pub fn swapped(&self) -> Images {
        Images {
            im: self.im_tilde.clone(),
            ker: self.ker_tilde.clone(),
            im_tilde: self.im.clone(),
            ker_tilde: self.ker.clone(),
            r: self.r.clone(),
        }
    }
}

/// The descendent group `(G, o)` as a table over the canonical element order.
#[derive(Clone, Debug)]
pub struct Descendent {
    pub table: CayleyTable,
    pub label: String,
}

#[derive(Debug)]
struct TildeRule {
    inner: Arc<dyn ProceduralRule>,
}

impl ProceduralRule for TildeRule {
    fn apply(&self, g: &Permutation) -> Permutation {
        let gi = g.inverse();
        &gi * &self.inner.apply(&gi)
    }

    fn contains(&self, g: &Permutation) -> bool {
        self.inner.contains(g)
    }

    fn random_element(&self, rng: &mut ChaCha8Rng) -> Permutation {
        self.inner.random_element(rng)
    }

    fn structure(&self) -> Images {
        self.inner.structure().swapped()
    }

    fn descriptor(&self) -> String {
        format!("tilde({})", self.inner.descriptor())
    }

    fn untilde(&self) -> Option<Arc<dyn ProceduralRule>> {
        Some(self.inner.clone())
    }
}

fn tilde_provenance(p: &str) -> String {
    match p.strip_prefix("tilde(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("tilde({p})"),
    }
}

impl RbOperator {
    /// `B~(g) = g^-1 B(g^-1)`.
    pub fn tilde(&self) -> RbOperator {
        let body = match &self.body {
            Body::Table(t) => {
                let g = &self.group;
                let n = t.len() as u32;
                let table: Vec<u32> = (0..n)
                    .map(|a| {
                        let ai = g.inv_index(a);
                        g.mul_index(ai, t[ai as usize])
                    })
                    .collect();
                Body::Table(table.into())
            }
            Body::Procedural(rule) => match rule.untilde() {
                Some(inner) => Body::Procedural(inner),
                None => Body::Procedural(Arc::new(TildeRule {
                    inner: rule.clone(),
                })),
            },
        };
        RbOperator {
            group: self.group.clone(),
            body,
            provenance: tilde_provenance(&self.provenance),
        }
    }

    /// `B_+` as an index table.
    pub fn bplus_table(&self) -> Result<Vec<u32>> {
        let t = self.require_table()?;
        Ok((0..t.len() as u32)
            .map(|a| self.group.mul_index(a, t[a as usize]))
            .collect())
    }

    /// The product table of `g o h = g B(g) h B(g)^-1`, checked to be a group
    /// on which `B` is a homomorphism to `G`.
    pub fn descendent_group(&self) -> Result<Descendent> {
        let t = self.require_table()?;
        let g = &self.group;
        let n = t.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n as u32 {
            let ba = t[a as usize];
            let left = g.mul_index(a, ba);
            let ba_inv = g.inv_index(ba);
            for b in 0..n as u32 {
                mul.push(g.mul_index(g.mul_index(left, b), ba_inv));
            }
        }
        let table = CayleyTable::new(n, mul, n <= 200).map_err(|e| {
            Error::InvalidOperator(format!("descendent product is not a group: {e}"))
        })?;
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                if t[table.mul(a, b) as usize] != g.mul_index(t[a as usize], t[b as usize]) {
                    return Err(Error::InvalidOperator(format!(
                        "B is not a homomorphism from the descendent group at ({}, {})",
                        g.element(a).cycle_string(),
                        g.element(b).cycle_string()
                    )));
                }
            }
        }
        let label = iso_label_table(&table);
        Ok(Descendent { table, label })
    }

    /// Kernels and images of `B` and `B~`, with the relations between them checked.
    pub fn images(&self) -> Result<Images> {
        if let Body::Procedural(rule) = &self.body {
            return Ok(rule.structure());
        }
        let t = self.require_table()?;
        let g = &self.group;
        let n = t.len();
        let e = g.identity_index();
        let tt = self.tilde();
        let tt = tt.table().expect("table");
        let set =
            |mask: Vec<bool>| -> Vec<u32> { (0..n as u32).filter(|&i| mask[i as usize]).collect() };
        let mut im = vec![false; n];
        let mut im_t = vec![false; n];
        for i in 0..n {
            im[t[i] as usize] = true;
            im_t[tt[i] as usize] = true;
        }
        let r_mask: Vec<bool> = (0..n).map(|i| im[i] && im_t[i]).collect();
        let ker = (0..n as u32)
            .filter(|&i| t[i as usize] == e)
            .collect::<Vec<_>>();
        let ker_t = (0..n as u32)
            .filter(|&i| tt[i as usize] == e)
            .collect::<Vec<_>>();
        let (im, im_t, r) = (set(im), set(im_t), set(r_mask));
        let sub = |name: &str, members: &[u32]| {
            g.subgroup_from_indices(name, members)
                .map_err(|_| Error::InvalidOperator(format!("{name} is not a subgroup")))
        };
        let images = Images {
            im: sub("Im(B)", &im)?,
            ker: sub("ker(B)", &ker)?,
            im_tilde: sub("Im(B~)", &im_t)?,
            ker_tilde: sub("ker(B~)", &ker_t)?,
            r: sub("R", &r)?,
        };
        let table = g.cayley()?;
        let normal_in = |h: &[u32], k: &[u32]| {
            let mut mask = vec![false; n];
            h.iter().for_each(|&x| mask[x as usize] = true);
            k.iter()
                .all(|&y| h.iter().all(|&x| mask[table.conj(x, y) as usize]))
        };
        if !normal_in(&ker_t, &im) || !normal_in(&ker, &im_t) {
            return Err(Error::InvalidOperator(
                "a kernel is not normal in the opposite image".into(),
            ));
        }
        if im_t.len() * im.len() != n * r.len() {
            return Err(Error::InvalidOperator(
                "G is not the product Im(B~) Im(B)".into(),
            ));
        }
        if r.len() * ker_t.len() != im.len() || r.len() * ker.len() != im_t.len() {
            return Err(Error::InvalidOperator(
                "|R| differs from the kernel indices".into(),
            ));
        }
        Ok(images)
    }

    /// Whether `Im(B~B)` is trivial.
    pub fn is_splitting(&self) -> Result<bool> {
        match &self.body {
            Body::Table(t) => {
                let tt = self.tilde();
                let tt = tt.table().expect("table");
                let e = self.group.identity_index();
                Ok(t.iter().all(|&b| tt[b as usize] == e))
            }
            Body::Procedural(rule) => Ok(rule.structure().r.order() == Some(1)),
        }
    }
}
