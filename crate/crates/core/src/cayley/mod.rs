//! Cayley certification of S(n,k) via Sabidussi's criterion: S(n,k) is Cayley iff some
//! subgroup of its automorphism group acts regularly on vertices.

mod certify;
mod search;
mod strategy;
mod witness;

pub use certify::{certify_via_lambda, certify_via_sharp_k, sabidussi_direct, table_certificate};
pub use search::{generator_bound, search_regular_subgroup, SearchSummary};
pub use strategy::{
    CertifyStrategy, DirectStrategy, LambdaStrategy, SearchStrategy, SharpKStrategy,
    StrategyRegistry, TableStrategy,
};
pub use witness::{library_witness, LibraryWitness, RightFactor, Witness, WitnessKind};

use serde::{Deserialize, Serialize};

use crate::arith::CaseRecord;
use crate::error::{Error, Result};
use crate::perm::DEFAULT_ELEMENT_CAP;
use crate::star::DEFAULT_VERTEX_CAP;
use crate::util::prime_power;

/// `(p, m)` with `n = p^m`; 1 is not a prime power here.
pub fn is_prime_power(n: u64) -> Option<(u64, u32)> {
    prime_power(n)
}

/// Which clause of the classification decided `(n,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Clause {
    #[serde(rename = "k=1")]
    K1,
    #[serde(rename = "k=n-1")]
    KNMinus1,
    #[serde(rename = "n=k+2")]
    NEqualsKPlus2,
    #[serde(rename = "k=2 prime-power")]
    K2PrimePower,
    #[serde(rename = "k=3 q+1")]
    K3PrimePowerPlus1,
    #[serde(rename = "sporadic")]
    Sporadic,
    #[serde(rename = "none")]
    None,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::K1 => "k=1",
            Clause::KNMinus1 => "k=n-1",
            Clause::NEqualsKPlus2 => "n=k+2",
            Clause::K2PrimePower => "k=2 prime-power",
            Clause::K3PrimePowerPlus1 => "k=3 q+1",
            Clause::Sporadic => "sporadic",
            Clause::None => "none",
        }
    }
}

pub const SPORADIC: [(usize, usize); 6] = [(9, 4), (9, 6), (11, 4), (12, 5), (33, 4), (33, 30)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub n: usize,
    pub k: usize,
    pub is_cayley: bool,
    pub clause: Clause,
}

/// Table lookup; depends on `(n,k)` alone. Clauses are tried in the order of [`Clause`]
/// and the first match is reported.
pub fn classify(n: usize, k: usize) -> Result<ClassificationResult> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "classify needs 1 <= k < n, got ({n},{k})"
        )));
    }
    let clause = if k == 1 {
        Clause::K1
    } else if k == n - 1 {
        Clause::KNMinus1
    } else if n == k + 2 {
        Clause::NEqualsKPlus2
    } else if k == 2 && prime_power(n as u64).is_some() {
        Clause::K2PrimePower
    } else if k == 3 && prime_power(n as u64 - 1).is_some() {
        Clause::K3PrimePowerPlus1
    } else if SPORADIC.contains(&(n, k)) {
        Clause::Sporadic
    } else {
        Clause::None
    };
    Ok(ClassificationResult {
        n,
        k,
        is_cayley: clause != Clause::None,
        clause,
    })
}

/// Enumeration limits shared by every strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest group that may be enumerated.
    pub elements: usize,
    /// Largest vertex set that may be covered by a bitmap.
    pub vertices: u64,
    /// Closures the regular-subgroup search may attempt.
    pub closures: u64,
    /// Generators per candidate subgroup in the search.
    pub max_gens: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            elements: DEFAULT_ELEMENT_CAP,
            vertices: DEFAULT_VERTEX_CAP,
            closures: 5_000_000,
            max_gens: 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Cayley,
    NotCayley,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    DirectRegularAction,
    SharpKTransitiveWitness,
    LambdaTransitiveWitness,
    ClassificationTable,
    ExhaustiveSearchRefutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, pass: bool) -> Check {
        Check {
            name: name.to_string(),
            pass,
        }
    }
}

/// A verdict together with everything needed to re-run it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub k: usize,
    pub verdict: Verdict,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub checks: Vec<Check>,
    /// Arithmetic case records backing a table verdict.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<CaseRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    /// Cayley exactly when a witness is present and every check passed.
    pub(crate) fn positive(
        n: usize,
        k: usize,
        method: Method,
        witness: Witness,
        checks: Vec<Check>,
    ) -> Certificate {
        let ok = !checks.is_empty() && checks.iter().all(|c| c.pass);
        Certificate {
            n,
            k,
            verdict: if ok {
                Verdict::Cayley
            } else {
                Verdict::Unknown
            },
            method,
            witness: Some(witness),
            checks,
            evidence: Vec::new(),
            search: None,
            notes: Vec::new(),
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Certificate(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        serde_json::from_str(s).map_err(|e| Error::Certificate(e.to_string()))
    }
}

/// Outcome of re-running a stored certificate.
#[derive(Clone, Debug)]
pub struct Recheck {
    pub fresh: Certificate,
    pub reproduced: bool,
}

/// Re-runs every recorded check of `cert` from its witness, never trusting stored results.
pub fn recheck(cert: &Certificate, budget: &Budget) -> Result<Recheck> {
    let (n, k) = (cert.n, cert.k);
    let witness = || {
        cert.witness.as_ref().ok_or_else(|| {
            Error::Certificate(format!("{:?} certificate without witness", cert.method))
        })
    };
    let fresh = match cert.method {
        Method::DirectRegularAction => {
            let g = witness()?.pair_group(k, budget.elements)?;
            sabidussi_direct(&g, n, k, budget)?
        }
        Method::SharpKTransitiveWitness => {
            certify_via_sharp_k(&witness()?.left_group(budget.elements)?, n, k, budget)?
        }
        Method::LambdaTransitiveWitness => {
            certify_via_lambda(&witness()?.left_group(budget.elements)?, n, k, budget)?
        }
        Method::ExhaustiveSearchRefutation => {
            let max_gens = cert.search.as_ref().map_or(budget.max_gens, |s| s.max_gens);
            search_regular_subgroup(n, k, max_gens, budget)?
        }
        Method::ClassificationTable => table_certificate(n, k)?,
    };
    let reproduced = fresh.verdict == cert.verdict && fresh.checks == cert.checks;
    Ok(Recheck { fresh, reproduced })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        let r = classify(9, 4).unwrap();
        assert!(r.is_cayley);
        assert_eq!(r.clause, Clause::Sporadic);
        assert!(!classify(6, 2).unwrap().is_cayley);
        assert_eq!(classify(7, 5).unwrap().clause, Clause::NEqualsKPlus2);
        assert_eq!(classify(10, 1).unwrap().clause, Clause::K1);
        assert_eq!(classify(10, 9).unwrap().clause, Clause::KNMinus1);
        assert_eq!(classify(8, 3).unwrap().clause, Clause::K3PrimePowerPlus1);
        assert_eq!(classify(7, 2).unwrap().clause, Clause::K2PrimePower);
        assert!(classify(5, 5).is_err());
        assert!(classify(5, 0).is_err());
    }

    #[test]
    fn sporadic_pairs_are_exactly_the_listed_ones() {
        let mut found = Vec::new();
        for n in 4..=40 {
            for k in 2..=n - 2 {
                if classify(n, k).unwrap().clause == Clause::Sporadic {
                    found.push((n, k));
                }
            }
        }
        assert_eq!(found, SPORADIC.to_vec());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(is_prime_power(32), Some((2, 5)));
        assert_eq!(is_prime_power(6), None);
        assert_eq!(is_prime_power(1), None);
    }

    #[test]
    fn clause_json_names() {
        let r = classify(9, 3).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"k=3 q+1\""), "{s}");
    }
}
