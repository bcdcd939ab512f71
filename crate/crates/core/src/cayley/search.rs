//! Exhaustive search for a regular subgroup of `S_n × S_{k−1}` on small instances.
//!
//! Every non-identity element of a regular group fixes no vertex and has order dividing
//! `P(n,k)`; call such elements free. Candidate groups are closures of tuples of free
//! elements, aborted as soon as a non-free element or more than `P(n,k)` elements
//! appear. Conjugating by Aut preserves regularity, so the first generator runs over one
//! representative per conjugacy class of Aut, i.e. per pair of cycle types of `μ` and `ν`.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::certify::sabidussi_direct;
use super::{Budget, Certificate, Check, Method, Verdict};
use crate::error::{Error, Result};
use crate::perm::{closure_filtered, PairGroup, Perm};
use crate::star::{aut_product, AutPair};
use crate::util::falling_u64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub max_gens: usize,
    pub free_elements: u64,
    pub class_representatives: u64,
    pub closures: u64,
    /// Every candidate tuple was closed.
    pub completed: bool,
    /// Why groups of order `P(n,k)` need at most `max_gens` generators, if they do.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_bound: Option<String>,
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// A reason every group of order `m` is generated by `max_gens` elements, if one of the
/// following applies:
/// - `gcd(m, φ(m)) = 1`: every such group is cyclic;
/// - `m` squarefree: all Sylow subgroups are cyclic, so the group is metacyclic;
/// - `Ω(m) ≤ max_gens`: each new generator at least multiplies the order by a prime.
pub fn generator_bound(m: u64, max_gens: usize) -> Option<String> {
    let f = factorize(m);
    let phi: u64 = f.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product();
    let omega: u32 = f.iter().map(|&(_, e)| e).sum();
    if max_gens >= 1 && m.gcd(&phi) == 1 {
        Some(format!(
            "gcd({m}, phi({m})) = 1, so every group of order {m} is cyclic"
        ))
    } else if max_gens >= 2 && f.iter().all(|&(_, e)| e == 1) {
        Some(format!(
            "{m} is squarefree, so every group of order {m} is metacyclic and 2-generated"
        ))
    } else if omega as usize <= max_gens {
        Some(format!("{m} has {omega} prime factors with multiplicity"))
    } else {
        None
    }
}

fn pair_order(p: &AutPair) -> u64 {
    let (a, b) = (p.mu.order(), p.nu.order());
    a / a.gcd(&b) * b
}

struct Search<'a> {
    m: usize,
    free: &'a HashSet<Perm>,
    candidates: &'a [Perm],
    max_gens: usize,
    closures: u64,
    limit: u64,
}

enum Outcome {
    Found(Vec<Perm>, indexmap::IndexSet<Perm>),
    Exhausted,
    Truncated,
}

impl Search<'_> {
    fn grow(&mut self, gens: &mut Vec<Perm>) -> Result<Outcome> {
        if self.closures >= self.limit {
            return Ok(Outcome::Truncated);
        }
        self.closures += 1;
        let free = self.free;
        let group = match closure_filtered(gens, self.m, |p| free.contains(p)) {
            Ok(Some(group)) => group,
            Ok(None) | Err(Error::CapExceeded { .. }) => return Ok(Outcome::Exhausted),
            Err(e) => return Err(e),
        };
        if group.len() == self.m {
            return Ok(Outcome::Found(gens.clone(), group));
        }
        if gens.len() >= self.max_gens {
            return Ok(Outcome::Exhausted);
        }
        for c in self.candidates {
            if group.contains(c) {
                continue;
            }
            gens.push(c.clone());
            let outcome = self.grow(gens)?;
            gens.pop();
            if !matches!(outcome, Outcome::Exhausted) {
                return Ok(outcome);
            }
        }
        Ok(Outcome::Exhausted)
    }
}

/// Looks for a regular subgroup generated by at most `max_gens` elements.
///
/// Cayley with a direct certificate when one is found; ExhaustiveSearchRefutation with
/// verdict NotCayley only when the search completed and [`generator_bound`] covers
/// `P(n,k)`; Unknown otherwise.
pub fn search_regular_subgroup(
    n: usize,
    k: usize,
    max_gens: usize,
    budget: &Budget,
) -> Result<Certificate> {
    if max_gens == 0 {
        return Err(Error::InvalidParameters(
            "max_gens must be at least 1".into(),
        ));
    }
    let aut = aut_product(n, k, budget.elements)?;
    if aut.order() > budget.elements as u128 {
        return Err(Error::BudgetExhausted(format!(
            "|Aut S({n},{k})| = {} exceeds the element budget",
            aut.order()
        )));
    }
    let m = falling_u64(n as u64, k as u64).expect("n!(k-1)! fits, so P(n,k) does");
    let mut free = HashSet::new();
    let mut candidates = Vec::new();
    let mut reps: HashMap<(Vec<usize>, Vec<usize>), Perm> = HashMap::new();
    let mut rep_order = Vec::new();
    for p in aut.pairs()? {
        if p.is_identity() || p.fixes_some_vertex() || !m.is_multiple_of(pair_order(&p)) {
            continue;
        }
        let e = p.embed();
        let key = (p.mu.cycle_type(), p.nu.cycle_type());
        if !reps.contains_key(&key) {
            reps.insert(key.clone(), e.clone());
            rep_order.push(key);
        }
        free.insert(e.clone());
        candidates.push(e);
    }
    let mut search = Search {
        m: m as usize,
        free: &free,
        candidates: &candidates,
        max_gens,
        closures: 0,
        limit: budget.closures,
    };
    let mut result = Outcome::Exhausted;
    for key in &rep_order {
        let mut gens = vec![reps[key].clone()];
        result = search.grow(&mut gens)?;
        if !matches!(result, Outcome::Exhausted) {
            break;
        }
    }
    let bound = generator_bound(m, max_gens);
    let mut summary = SearchSummary {
        max_gens,
        free_elements: candidates.len() as u64,
        class_representatives: rep_order.len() as u64,
        closures: search.closures,
        completed: matches!(result, Outcome::Exhausted),
        generator_bound: bound.clone(),
    };
    match result {
        Outcome::Found(gens, elements) => {
            let pairs: Vec<AutPair> = gens.iter().map(|g| AutPair::from_embedded(g, k)).collect();
            let g = PairGroup::from_embedded_elements(n, k, pairs, &elements)
                .with_name(format!("regular subgroup of order {m}"));
            let mut cert = sabidussi_direct(&g, n, k, budget)?;
            summary.completed = false;
            cert.search = Some(summary);
            Ok(cert)
        }
        Outcome::Exhausted => {
            let justified = bound.is_some();
            let checks = vec![
                Check::new("no_regular_subgroup_found", true),
                Check::new("generator_bound_justified", justified),
            ];
            Ok(Certificate {
                n,
                k,
                verdict: if justified {
                    Verdict::NotCayley
                } else {
                    Verdict::Unknown
                },
                method: Method::ExhaustiveSearchRefutation,
                witness: None,
                checks,
                evidence: Vec::new(),
                search: Some(summary),
                notes: Vec::new(),
            })
        }
        Outcome::Truncated => Ok(Certificate {
            n,
            k,
            verdict: Verdict::Unknown,
            method: Method::ExhaustiveSearchRefutation,
            witness: None,
            checks: vec![Check::new("no_regular_subgroup_found", false)],
            evidence: Vec::new(),
            search: Some(summary),
            notes: vec![format!("closure budget of {} exhausted", budget.closures)],
        }),
    }
}
