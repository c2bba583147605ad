//! Rota-Baxter operators on finite groups.
//!
//! A map `B: G -> G` is a Rota-Baxter operator (of weight 1) when
//! `B(g)B(h) = B(g B(g) h B(g)^-1)` for all `g, h`. This crate builds such
//! operators from exact factorizations, homomorphisms and index-2 data,
//! verifies them, enumerates every operator on small groups through their
//! graphs in `G x G`, sorts them into equivalence classes, and constructs the
//! non-splitting operators on alternating groups that come from sharply 2- and
//! 3-transitive permutation groups over finite fields.
//!
//! All products use the right-action convention: `p * q` applies `p` first,
//! then `q`.

pub mod antops;
pub mod error;
pub mod finitefield;
pub mod permcore;
pub mod rbbuild;
pub mod rbcore;
pub mod rbenum;
pub mod stdgroups;

pub use error::{Error, Result};
pub use permcore::{FactorizationWitness, FiniteGroup, Permutation};
pub use rbcore::RbOperator;
