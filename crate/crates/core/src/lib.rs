//! Star graphs S(n,k), their automorphisms, and Cayley certification.
//!
//! Points are 1-based in every public representation. Permutations compose right to
//! left: `p.compose(q)` applies `q` first.

mod error;
mod util;

pub mod arith;
pub mod cayley;
pub mod fields;
pub mod numbers;
pub mod perm;
pub mod star;

pub use error::{Error, Result};
pub use util::{falling_u128, falling_u64, prime_power};
