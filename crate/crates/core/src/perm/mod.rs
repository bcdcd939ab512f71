//! Permutations of `{1..n}` and finitely generated permutation groups.
//!
//! Points are 1-based everywhere outside this module. Internally a [`Perm`]
//! stores 0-based images in a compact byte slice, which caps the degree at 255.
//!
//! Composition is fixed once for the whole crate: `(p ∘ q)(x) = p(q(x))`,
//! so `p.compose(&q)` applies `q` first.

mod group;
mod lambda;
mod product;

pub use group::{closure, closure_filtered, PermGroup, DEFAULT_ELEMENT_CAP};
pub use lambda::{Flag, Lambda};
pub use product::{project_and_kernel, PairGroup};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 255;

/// A bijection of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm {
    images: Box<[u8]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        Perm {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    /// Builds a permutation from one-line notation with 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPerm(format!("{images:?}")));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Perm {
            images: out.into_boxed_slice(),
        })
    }

    /// Builds a permutation of degree `n` from disjoint cycles given in 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree || touched[x - 1] {
                    return Err(Error::InvalidPerm(format!("cycles {cycles:?}")));
                }
                touched[x - 1] = true;
                images[x - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(&images)
    }

    /// The transposition of two 1-based points.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Perm> {
        if a == b {
            return Ok(Perm::identity(degree));
        }
        Perm::from_cycles(degree, &[&[a, b]])
    }

    pub(crate) fn from_raw(images: Vec<u8>) -> Perm {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&x| {
                let fresh = !seen[x as usize];
                seen[x as usize] = true;
                fresh
            })
        });
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// One-line notation, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Unchecked composition; degrees must agree.
    #[inline]
    pub(crate) fn mul(&self, other: &Perm) -> Perm {
        Perm {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    /// Disjoint cycles in 1-based points, including fixed points, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths (fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        transpositions.is_multiple_of(2)
    }
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Perm> {
        let images: Vec<usize> = images.into_iter().map(|x| x as usize).collect();
        Perm::from_images(&images)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Vec<u32> {
        p.images.iter().map(|&x| x as u32 + 1).collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images())
    }
}

/// Cycle notation, omitting fixed points; the identity prints as `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// An ordered k-tuple of distinct points of `{1..n}`: a vertex of S(n,k).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KPerm {
    entries: Vec<u32>,
    ambient_n: u32,
}

impl KPerm {
    pub fn new(entries: Vec<u32>, ambient_n: usize) -> Result<KPerm> {
        if entries.is_empty() || entries.len() > ambient_n {
            return Err(Error::InvalidKPerm(format!(
                "{entries:?} has invalid length for n = {ambient_n}"
            )));
        }
        let mut sorted = entries.clone();
        sorted.sort_unstable();
        let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
        let in_range = sorted[0] >= 1 && (*sorted.last().unwrap() as usize) <= ambient_n;
        if !distinct || !in_range {
            return Err(Error::InvalidKPerm(format!(
                "{entries:?} for n = {ambient_n}"
            )));
        }
        Ok(KPerm {
            entries,
            ambient_n: ambient_n as u32,
        })
    }

    /// `[1, 2, …, k]`.
    pub fn base(n: usize, k: usize) -> KPerm {
        KPerm {
            entries: (1..=k as u32).collect(),
            ambient_n: n as u32,
        }
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<u32>, ambient_n: usize) -> KPerm {
        KPerm {
            entries,
            ambient_n: ambient_n as u32,
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.ambient_n as usize
    }
}

impl fmt::Debug for KPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for KPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "[{}]", body.join(","))
    }
}
