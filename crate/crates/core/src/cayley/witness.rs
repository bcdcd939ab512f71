//! Witness groups: serialized form, reconstruction, and the library of known witnesses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{agl1, mathieu11, mathieu12, pgammal2, pgl2, psl2};
use crate::perm::{PairGroup, Perm, PermGroup};
use crate::star::AutPair;
use crate::util::prime_power;

/// Second factor of a product witness `H × K`, `K ≤ S_{k−1}` on positions `2..k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RightFactor {
    Trivial,
    Symmetric,
}

/// A group of automorphisms as stored in a certificate.
///
/// Either `H × K` (`generators` generate `H`, `right_factor` names `K`) or an explicit
/// list of pairs `(generators[i], nu_generators[i])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_generators: Option<Vec<Perm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_factor: Option<RightFactor>,
}

fn right_group(n: usize, k: usize, right: RightFactor, cap: usize) -> Result<PermGroup> {
    match right {
        RightFactor::Trivial => Ok(PermGroup::trivial(n)),
        RightFactor::Symmetric => {
            let positions: Vec<usize> = (2..=k).collect();
            PermGroup::symmetric_on(n, &positions, cap)
        }
    }
}

impl Witness {
    pub fn product(h: &PermGroup, right: RightFactor, k: usize) -> Witness {
        let name = h.name().unwrap_or("H").to_string();
        let name = match right {
            RightFactor::Trivial => name,
            RightFactor::Symmetric => format!("{name} x S_{}", k - 1),
        };
        Witness {
            name,
            degree: h.degree(),
            generators: h.generators().to_vec(),
            nu_generators: None,
            right_factor: Some(right),
        }
    }

    pub fn from_pair_group(g: &PairGroup) -> Witness {
        let (n, k) = (g.n(), g.k());
        if let Some((left, right)) = g.factors() {
            let full = crate::util::factorial_u128(k as u64 - 1);
            let factor = match right.order() {
                1 => Some(RightFactor::Trivial),
                o if Some(o) == full => Some(RightFactor::Symmetric),
                _ => None,
            };
            if let Some(factor) = factor {
                let mut w = Witness::product(left, factor, k);
                if let Some(name) = g.name() {
                    w.name = name.to_string();
                }
                return w;
            }
        }
        let pairs = g.generators();
        Witness {
            name: g.name().unwrap_or("G").to_string(),
            degree: n,
            generators: pairs.iter().map(|p| p.mu.clone()).collect(),
            nu_generators: Some(pairs.iter().map(|p| p.nu.clone()).collect()),
            right_factor: None,
        }
    }

    /// `H`, the group generated by `generators`.
    pub fn left_group(&self, cap: usize) -> Result<PermGroup> {
        self.check_degrees()?;
        PermGroup::generate(self.name.clone(), &self.generators, cap)
    }

    /// The automorphism group the witness describes.
    pub fn pair_group(&self, k: usize, cap: usize) -> Result<PairGroup> {
        self.check_degrees()?;
        match (&self.nu_generators, self.right_factor) {
            (Some(nus), None) => {
                if nus.len() != self.generators.len() {
                    return Err(Error::Certificate(
                        "generator lists differ in length".into(),
                    ));
                }
                let pairs = self
                    .generators
                    .iter()
                    .zip(nus)
                    .map(|(mu, nu)| AutPair::new(mu.clone(), nu.clone(), k))
                    .collect::<Result<Vec<_>>>()?;
                Ok(PairGroup::generate(&pairs, cap)?.with_name(self.name.clone()))
            }
            (None, Some(right)) => {
                let left = self.left_group(cap)?;
                let right = right_group(self.degree, k, right, cap)?;
                Ok(PairGroup::product(left, right, k)?.with_name(self.name.clone()))
            }
            _ => Err(Error::Certificate(
                "witness needs exactly one of nu_generators and right_factor".into(),
            )),
        }
    }

    fn check_degrees(&self) -> Result<()> {
        let all = self
            .generators
            .iter()
            .chain(self.nu_generators.iter().flatten());
        match all.map(Perm::degree).find(|&d| d != self.degree) {
            Some(d) => Err(Error::DegreeMismatch(self.degree, d)),
            None if self.generators.is_empty() => Err(Error::NoGenerators),
            None => Ok(()),
        }
    }
}

/// How a library group witnesses Cayleyness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// Sharply k-transitive `H`; `H × 1` is regular.
    SharpK,
    /// Sharply `(n−k, k−1, 1)`-transitive `H`; `H × S_{k−1}` is regular.
    Lambda,
}

#[derive(Clone, Debug)]
pub struct LibraryWitness {
    pub kind: WitnessKind,
    pub group: PermGroup,
}

impl LibraryWitness {
    pub fn right_factor(&self) -> RightFactor {
        match self.kind {
            WitnessKind::SharpK => RightFactor::Trivial,
            WitnessKind::Lambda => RightFactor::Symmetric,
        }
    }

    pub fn pair_group(&self, k: usize, cap: usize) -> Result<PairGroup> {
        let n = self.group.degree();
        let right = right_group(n, k, self.right_factor(), cap)?;
        let g = PairGroup::product(self.group.clone(), right, k)?;
        let name = Witness::product(&self.group, self.right_factor(), k).name;
        Ok(g.with_name(name))
    }
}

/// A known witness group for `(n,k)`, if the library has one. Groups larger than `cap`
/// are returned with known order but without an element list.
pub fn library_witness(n: usize, k: usize, cap: usize) -> Result<Option<LibraryWitness>> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "no star graph for ({n},{k})"
        )));
    }
    let sharp = |group| {
        Ok(Some(LibraryWitness {
            kind: WitnessKind::SharpK,
            group,
        }))
    };
    let lambda = |group| {
        Ok(Some(LibraryWitness {
            kind: WitnessKind::Lambda,
            group,
        }))
    };
    match (n, k) {
        (_, 1) => sharp(PermGroup::cyclic(n)?),
        _ if k == n - 1 => sharp(PermGroup::symmetric(n, cap)?),
        _ if n == k + 2 => sharp(PermGroup::alternating(n, cap)?),
        (_, 2) if prime_power(n as u64).is_some() => sharp(agl1(n as u64)?),
        (_, 3) if prime_power(n as u64 - 1).is_some() => sharp(pgl2(n as u64 - 1)?),
        (11, 4) => sharp(mathieu11()?),
        (12, 5) => sharp(mathieu12()?),
        (9, 4) | (9, 6) => lambda(psl2(8)?),
        (33, 4) | (33, 30) => lambda(pgammal2(32)?),
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_ELEMENT_CAP;

    #[test]
    fn library_covers_small_cayley_cases() {
        for n in 3..=12usize {
            for k in 1..n {
                let w = library_witness(n, k, DEFAULT_ELEMENT_CAP).unwrap();
                let cayley = crate::cayley::classify(n, k).unwrap().is_cayley;
                assert_eq!(w.is_some(), cayley, "({n},{k})");
            }
        }
    }

    #[test]
    fn witness_round_trips_through_json() {
        let h = PermGroup::cyclic(5).unwrap();
        let w = Witness::product(&h, RightFactor::Symmetric, 3);
        assert_eq!(w.name, "C_5 x S_2");
        let back: Witness = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(back, w);
        assert_eq!(back.pair_group(3, 1000).unwrap().order(), 10);
    }

    #[test]
    fn malformed_witness_is_rejected() {
        let mut w = Witness::product(&PermGroup::cyclic(5).unwrap(), RightFactor::Trivial, 2);
        w.nu_generators = Some(vec![Perm::identity(5)]);
        assert!(w.pair_group(2, 100).is_err());
        w.right_factor = None;
        w.generators.push(Perm::identity(4));
        assert!(w.pair_group(2, 100).is_err());
    }
}
