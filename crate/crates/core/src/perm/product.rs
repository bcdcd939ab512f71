//! Subgroups of `S_n × S_{k−1}` acting on S(n,k).

use indexmap::IndexSet;

use super::{closure, Perm, PermGroup};
use crate::error::{Error, Result};
use crate::star::AutPair;

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
enum Repr {
    /// `left × right` with `right` permuting only `{2..k}`.
    Product { left: PermGroup, right: PermGroup },
    /// An arbitrary subgroup, fully enumerated.
    Elements {
        generators: Vec<AutPair>,
        elements: Vec<AutPair>,
    },
}

/// A group of pairs `(μ, ν)`, i.e. a group of automorphisms of S(n,k).
#[derive(Clone, Debug)]
pub struct PairGroup {
    n: usize,
    k: usize,
    name: Option<String>,
    repr: Repr,
}

impl PairGroup {
    /// Internal direct product `left × right`.
    pub fn product(left: PermGroup, right: PermGroup, k: usize) -> Result<PairGroup> {
        let n = left.degree();
        if right.degree() != n {
            return Err(Error::DegreeMismatch(n, right.degree()));
        }
        for g in right.generators() {
            AutPair::new(Perm::identity(n), g.clone(), k)?;
        }
        let name = match (left.name(), right.order()) {
            (Some(l), 1) => Some(l.to_string()),
            (Some(l), _) => Some(format!("{l} x {}", right.name().unwrap_or("K"))),
            _ => None,
        };
        Ok(PairGroup {
            n,
            k,
            name,
            repr: Repr::Product { left, right },
        })
    }

    /// `{(μ, 1) : μ ∈ h}`.
    pub fn with_trivial_right(h: PermGroup, k: usize) -> Result<PairGroup> {
        let n = h.degree();
        PairGroup::product(h, PermGroup::trivial(n), k)
    }

    /// Closure of explicit pair generators.
    pub fn generate(generators: &[AutPair], cap: usize) -> Result<PairGroup> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let (n, k) = (first.n(), first.k());
        let embedded: Vec<Perm> = generators.iter().map(AutPair::embed).collect();
        let group = closure(&embedded, cap)?;
        Ok(PairGroup::from_embedded_elements(
            n,
            k,
            generators.to_vec(),
            group.elements()?,
        ))
    }

    pub(crate) fn from_embedded_elements(
        n: usize,
        k: usize,
        generators: Vec<AutPair>,
        elements: &IndexSet<Perm>,
    ) -> PairGroup {
        PairGroup {
            n,
            k,
            name: None,
            repr: Repr::Elements {
                generators,
                elements: elements
                    .iter()
                    .map(|p| AutPair::from_embedded(p, k))
                    .collect(),
            },
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> PairGroup {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> u128 {
        match &self.repr {
            Repr::Product { left, right } => left.order() * right.order(),
            Repr::Elements { elements, .. } => elements.len() as u128,
        }
    }

    /// Factor groups when this is a direct product.
    pub fn factors(&self) -> Option<(&PermGroup, &PermGroup)> {
        match &self.repr {
            Repr::Product { left, right } => Some((left, right)),
            Repr::Elements { .. } => None,
        }
    }

    /// A generating set of pairs.
    pub fn generators(&self) -> Vec<AutPair> {
        match &self.repr {
            Repr::Product { left, right } => {
                let id = Perm::identity(self.n);
                let mut out: Vec<AutPair> = left
                    .generators()
                    .iter()
                    .map(|g| AutPair::new(g.clone(), id.clone(), self.k).expect("valid"))
                    .collect();
                out.extend(
                    right
                        .generators()
                        .iter()
                        .filter(|g| !g.is_identity())
                        .map(|g| AutPair::new(id.clone(), g.clone(), self.k).expect("valid")),
                );
                out
            }
            Repr::Elements { generators, .. } => generators.clone(),
        }
    }

    /// Calls `f(μ, ν)` once per element.
    pub fn for_each(&self, mut f: impl FnMut(&Perm, &Perm)) -> Result<()> {
        match &self.repr {
            Repr::Product { left, right } => {
                let rights = right.elements()?;
                for mu in left.elements()? {
                    for nu in rights {
                        f(mu, nu);
                    }
                }
            }
            Repr::Elements { elements, .. } => {
                for p in elements {
                    f(&p.mu, &p.nu);
                }
            }
        }
        Ok(())
    }

    /// All elements as owned pairs; intended for small groups.
    pub fn pairs(&self) -> Result<Vec<AutPair>> {
        let mut out = Vec::new();
        let k = self.k;
        self.for_each(|mu, nu| {
            out.push(AutPair::new(mu.clone(), nu.clone(), k).expect("validated factors"))
        })?;
        Ok(out)
    }
}

/// Splits `G ≤ S_n × S_{k−1}` into its projection `H = π₁(G)` and kernel
/// `T = G ∩ ker π₁` (viewed inside `S_{k−1}`), checking `|H|·|T| = |G|`.
pub fn project_and_kernel(g: &PairGroup) -> Result<(PermGroup, PermGroup)> {
    let (h, t) = match &g.repr {
        Repr::Product { left, right } => (left.clone(), right.clone()),
        Repr::Elements { elements, .. } => {
            let mus: IndexSet<Perm> = elements.iter().map(|p| p.mu.clone()).collect();
            let nus: IndexSet<Perm> = elements
                .iter()
                .filter(|p| p.mu.is_identity())
                .map(|p| p.nu.clone())
                .collect();
            let gens_h: Vec<Perm> = mus.iter().cloned().collect();
            let gens_t: Vec<Perm> = nus.iter().cloned().collect();
            (
                PermGroup::from_parts(None, gens_h, mus),
                PermGroup::from_parts(None, gens_t, nus),
            )
        }
    };
    if h.order() * t.order() != g.order() {
        return Err(Error::Internal(format!(
            "|H|·|T| = {}·{} differs from |G| = {}",
            h.order(),
            t.order(),
            g.order()
        )));
    }
    Ok((h, t))
}
