use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Body, RbOperator};
use crate::error::Result;
use crate::permcore::Permutation;

/// Seed used by sampled verification when none is given.
pub const DEFAULT_SEED: u64 = 20240501;

const CHUNK: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Full,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub pairs: u64,
    pub seed: Option<u64>,
    /// The first failing pair `(g, h)` in check order.
    pub counterexample: Option<(Permutation, Permutation)>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed.map_or("none".to_string(), |s| s.to_string());
        write!(
            f,
            "verify: {} pairs={} seed={}",
            if self.pass { "pass" } else { "fail" },
            self.pairs,
            seed
        )?;
        if let Some((g, h)) = &self.counterexample {
            write!(f, " g={} h={}", g.cycle_string(), h.cycle_string())?;
        }
        Ok(())
    }
}

/// Random number stream for chunk `c` of a sampled run.
pub(crate) fn chunk_rng(seed: u64, c: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(c);
    rng
}

impl RbOperator {
    /// Checks `B(g)B(h) = B(g B(g) h B(g)^-1)`, on every pair or on seeded
    /// random pairs. The outcome does not depend on the thread count.
    pub fn verify(&self, mode: VerifyMode) -> Result<Verdict> {
        match (&self.body, mode) {
            (Body::Table(t), VerifyMode::Full) => {
                let g = &self.group;
                let n = t.len() as u32;
                let bad = (0..n).into_par_iter().find_first(|&a| {
                    let ba = t[a as usize];
                    let ba_inv = g.inv_index(ba);
                    let left = g.mul_index(a, ba);
                    (0..n).any(|b| {
                        let lhs = g.mul_index(ba, t[b as usize]);
                        let arg = g.mul_index(g.mul_index(left, b), ba_inv);
                        lhs != t[arg as usize]
                    })
                });
                let counterexample = bad.map(|a| {
                    let ba = t[a as usize];
                    let b = (0..n)
                        .find(|&b| {
                            let lhs = g.mul_index(ba, t[b as usize]);
                            let arg =
                                g.mul_index(g.mul_index(g.mul_index(a, ba), b), g.inv_index(ba));
                            lhs != t[arg as usize]
                        })
                        .expect("failing pair");
                    (g.element(a).clone(), g.element(b).clone())
                });
                Ok(Verdict {
                    pass: counterexample.is_none(),
                    pairs: (n as u64) * (n as u64),
                    seed: None,
                    counterexample,
                })
            }
            (Body::Procedural(_), VerifyMode::Full) => Err(crate::Error::NotEnumerated(format!(
                "full verification of a procedural operator on {}",
                self.group.label()
            ))),
            (_, VerifyMode::Sampled { count, seed }) => {
                let chunks = count.div_ceil(CHUNK);
                let bad = (0..chunks).into_par_iter().find_map_first(|c| {
                    let mut rng = chunk_rng(seed, c as u64);
                    let len = CHUNK.min(count - c * CHUNK);
                    (0..len).find_map(|_| {
                        let g = self.random_element(&mut rng);
                        let h = self.random_element(&mut rng);
                        (!self.identity_holds(&g, &h)).then_some((g, h))
                    })
                });
                Ok(Verdict {
                    pass: bad.is_none(),
                    pairs: count as u64,
                    seed: Some(seed),
                    counterexample: bad,
                })
            }
        }
    }

    /// A uniformly random element of the group.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Permutation {
        match &self.body {
            Body::Table(t) => self.group.element(rng.gen_range(0..t.len() as u32)).clone(),
            Body::Procedural(rule) => rule.random_element(rng),
        }
    }

    /// The Rota-Baxter identity at one pair.
    pub fn identity_holds(&self, g: &Permutation, h: &Permutation) -> bool {
        let (Ok(bg), Ok(bh)) = (self.apply(g), self.apply(h)) else {
            return false;
        };
        let arg = &(&(g * &bg) * h) * &bg.inverse();
        match self.apply(&arg) {
            Ok(rhs) => &bg * &bh == rhs,
            Err(_) => false,
        }
    }
}
