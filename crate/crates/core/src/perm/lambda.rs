//! Flags of disjoint subsets and λ-transitivity.

use serde::{Deserialize, Serialize};

use super::group::orbit_size;
use super::{Perm, PermGroup};
use crate::error::{Error, Result};

/// Block sizes `(λ₁, …, λ_m)`; points beyond `Σλᵢ` are ignored by the action.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lambda {
    parts: Vec<usize>,
}

impl Lambda {
    pub fn new(parts: Vec<usize>) -> Result<Lambda> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidParameters(format!(
                "λ parts must be positive: {parts:?}"
            )));
        }
        Ok(Lambda { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of flags of this type on `n` points: `n! / (∏λᵢ! · (n − Σλᵢ)!)`.
    pub fn flag_count(&self, n: usize) -> Option<u128> {
        let total = self.total();
        if total > n {
            return Some(0);
        }
        // Multinomial as a product of binomials avoids the n! overflow at n = 33.
        let mut remaining = n as u64;
        let mut acc: u128 = 1;
        for &part in &self.parts {
            acc = acc.checked_mul(crate::util::binomial_u128(remaining, part as u64)?)?;
            remaining -= part as u64;
        }
        Some(acc)
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if self.total() > n {
            return Err(Error::InvalidParameters(format!(
                "Σλ = {} exceeds degree {n}",
                self.total()
            )));
        }
        Ok(())
    }
}

/// An ordered tuple `(P₁, …, P_m)` of pairwise disjoint subsets of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Flag {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Flag> {
        let mut seen = vec![false; n + 1];
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidParameters("empty flag block".into()));
            }
            for &x in &block {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::InvalidParameters(format!(
                        "flag blocks must be disjoint subsets of 1..={n}"
                    )));
                }
                seen[x] = true;
            }
            let mut block = block;
            block.sort_unstable();
            sorted_blocks.push(block);
        }
        Ok(Flag {
            n,
            blocks: sorted_blocks,
        })
    }

    /// Consecutive blocks: `P₁ = {1..λ₁}`, `P₂ = {λ₁+1..λ₁+λ₂}`, ….
    pub fn canonical(lambda: &Lambda, n: usize) -> Result<Flag> {
        lambda.check_degree(n)?;
        let mut next = 1;
        let blocks = lambda
            .parts
            .iter()
            .map(|&len| {
                let block: Vec<usize> = (next..next + len).collect();
                next += len;
                block
            })
            .collect();
        Flag::new(n, blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn lambda(&self) -> Lambda {
        Lambda {
            parts: self.blocks.iter().map(Vec::len).collect(),
        }
    }

    /// Per-point block label, 0-based points; `0` marks the ignored remainder.
    fn labels(&self) -> Vec<u8> {
        let mut labels = vec![0u8; self.n];
        for (i, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x - 1] = (i + 1) as u8;
            }
        }
        labels
    }
}

fn act_on_labels(g: &Perm, labels: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; labels.len()];
    for (x, &label) in labels.iter().enumerate() {
        out[g.apply0(x)] = label;
    }
    out
}

impl PermGroup {
    /// Elements mapping every block of `flag` onto itself.
    pub fn flag_stabilizer(&self, flag: &Flag) -> Result<PermGroup> {
        if flag.n != self.degree() {
            return Err(Error::DegreeMismatch(self.degree(), flag.n));
        }
        let labels = flag.labels();
        let kept: indexmap::IndexSet<Perm> = self
            .elements()?
            .iter()
            .filter(|g| (0..labels.len()).all(|x| labels[g.apply0(x)] == labels[x]))
            .cloned()
            .collect();
        let mut generators: Vec<Perm> = kept.iter().filter(|g| !g.is_identity()).cloned().collect();
        if generators.is_empty() {
            generators.push(Perm::identity(self.degree()));
        }
        Ok(PermGroup::from_parts(None, generators, kept))
    }

    /// Transitive on flags of type `lambda`, by orbit enumeration of the canonical flag.
    pub fn is_lambda_transitive(&self, lambda: &Lambda) -> Result<bool> {
        lambda.check_degree(self.degree())?;
        let count = lambda.flag_count(self.degree());
        let start = Flag::canonical(lambda, self.degree())?.labels();
        let limit = count.unwrap_or(u128::MAX).min(self.order());
        let orbit = orbit_size(start, self.generators(), limit, |g, l| act_on_labels(g, l));
        Ok(Some(orbit) == count)
    }

    /// Regular on flags of type `lambda`.
    ///
    /// When `|G|` equals the number of flags, regularity is equivalent to freeness, and
    /// freeness follows from a trivial stabilizer of the canonical flag (its orbit then
    /// has `|G|` elements, i.e. all of them). Any other order rules out regularity.
    pub fn is_sharply_lambda_transitive(&self, lambda: &Lambda) -> Result<bool> {
        lambda.check_degree(self.degree())?;
        if lambda.flag_count(self.degree()) != Some(self.order()) {
            return Ok(false);
        }
        let flag = Flag::canonical(lambda, self.degree())?;
        Ok(self.flag_stabilizer(&flag)?.order() == 1)
    }
}
