//! Sharply 2- and 3-transitive groups over finite fields, admissible degrees,
//! and the non-splitting Rota-Baxter operators they induce on `A_n`.

mod operator;
mod sharply;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::finitefield::{prime_divisors, prime_power};

pub use operator::{
    an_operator_from_descriptor, an_parts, assemble_an_operator, build_an_operator,
    descendent_structure, involutions_stabilizing, verify_an_operator, with_replaced_r, AnOperator,
    AnVerdict, DescendentReport, LayerFailure, LayerReport, Variant, DEFAULT_AN_SAMPLES,
    LAYER2_EXHAUSTIVE_CAP, LAYER2_SAMPLES,
};
pub use sharply::{
    falling, pair_table, sharply2, sharply3, triple_table, SharplyTransitiveGroup,
    TransporterTable, SHARPLY_ORDER_CAP,
};

/// `n = q^m` (case a) or `n = q^m + 1` (case b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnCase {
    A,
    B,
}

impl fmt::Display for AnCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnCase::A => "a",
            AnCase::B => "b",
        })
    }
}

impl FromStr for AnCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "a" => Ok(AnCase::A),
            "b" => Ok(AnCase::B),
            other => Err(Error::Parse(format!("unknown case `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissibilityVerdict {
    pub n: u64,
    pub admissible: bool,
    pub case: Option<AnCase>,
    pub q: Option<u64>,
    pub m: Option<u32>,
    /// Predicted number of classes of these operators.
    pub s: Option<u32>,
}

impl fmt::Display for AdmissibilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.case, self.q, self.m, self.s) {
            (Some(case), Some(q), Some(m), Some(s)) => {
                write!(f, "yes case={case} q={q} m={m} s={s}")
            }
            _ => f.write_str("no"),
        }
    }
}

/// `(q, m)` with `x = q^m`, `q` a prime power, `q = 3 mod 4`, `m = 2 mod 4`
/// and every prime divisor of `m` dividing `q - 1`.
fn split(x: u64) -> Option<(u64, u32)> {
    let (p, e) = prime_power(x)?;
    (1..=e).filter(|j| e % j == 0).find_map(|j| {
        let q = p.pow(j);
        let m = e / j;
        let ok =
            q % 4 == 3 && m % 4 == 2 && prime_divisors(m as u64).iter().all(|&d| (q - 1) % d == 0);
        ok.then_some((q, m))
    })
}

/// Whether `A_n` carries a non-splitting operator of the sharply transitive
/// kind, with the predicted class count.
pub fn admissible(n: u64) -> AdmissibilityVerdict {
    let found = split(n).map(|(q, m)| (AnCase::A, q, m)).or_else(|| {
        n.checked_sub(1)
            .and_then(split)
            .map(|(q, m)| (AnCase::B, q, m))
    });
    match found {
        Some((case, q, m)) => {
            let s = match (case, n) {
                (_, 49 | 529) => 3,
                (AnCase::A, 9) | (AnCase::B, _) => 1,
                (AnCase::A, _) => 2,
            };
            AdmissibilityVerdict {
                n,
                admissible: true,
                case: Some(case),
                q: Some(q),
                m: Some(m),
                s: Some(s),
            }
        }
        None => AdmissibilityVerdict {
            n,
            admissible: false,
            case: None,
            q: None,
            m: None,
            s: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degrees() {
        assert_eq!(admissible(9).to_string(), "yes case=a q=3 m=2 s=1");
        assert_eq!(admissible(10).to_string(), "yes case=b q=3 m=2 s=1");
        assert_eq!(admissible(49).s, Some(3));
        assert_eq!(admissible(50).s, Some(1));
        assert_eq!(admissible(361).s, Some(2));
        assert!(!admissible(25).admissible);
        assert!(!admissible(27).admissible);
        assert!(!admissible(1).admissible);
    }
}
