//! Named certification strategies, selected at runtime.

use super::certify::{
    certify_via_lambda, certify_via_sharp_k, sabidussi_direct, table_certificate,
};
use super::search::search_regular_subgroup;
use super::witness::{library_witness, LibraryWitness, WitnessKind};
use super::{Budget, Certificate, Verdict};
use crate::error::{Error, Result};

pub trait CertifyStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    /// A certificate for `(n,k)`; `Err` when the strategy has nothing to offer or the
    /// budget is too small.
    fn certify(&self, n: usize, k: usize, budget: &Budget) -> Result<Certificate>;
}

fn witness_for(n: usize, k: usize, budget: &Budget) -> Result<LibraryWitness> {
    library_witness(n, k, budget.elements)?
        .ok_or_else(|| Error::InvalidParameters(format!("no library witness for ({n},{k})")))
}

/// Enumerates the library witness as a group of automorphisms and checks regularity.
pub struct DirectStrategy;

impl CertifyStrategy for DirectStrategy {
    fn name(&self) -> &'static str {
        "direct"
    }

    fn certify(&self, n: usize, k: usize, budget: &Budget) -> Result<Certificate> {
        let w = witness_for(n, k, budget)?;
        let g = w.pair_group(k, budget.elements)?;
        if g.order() > budget.elements as u128 {
            return Err(Error::BudgetExhausted(format!(
                "|G| = {} exceeds the element budget",
                g.order()
            )));
        }
        sabidussi_direct(&g, n, k, budget)
    }
}

pub struct SharpKStrategy;

impl CertifyStrategy for SharpKStrategy {
    fn name(&self) -> &'static str {
        "sharp-k"
    }

    fn certify(&self, n: usize, k: usize, budget: &Budget) -> Result<Certificate> {
        let w = witness_for(n, k, budget)?;
        if w.kind != WitnessKind::SharpK {
            return Err(Error::InvalidParameters(format!(
                "library witness for ({n},{k}) is not sharply k-transitive"
            )));
        }
        certify_via_sharp_k(&w.group, n, k, budget)
    }
}

pub struct LambdaStrategy;

impl CertifyStrategy for LambdaStrategy {
    fn name(&self) -> &'static str {
        "lambda"
    }

    fn certify(&self, n: usize, k: usize, budget: &Budget) -> Result<Certificate> {
        let w = witness_for(n, k, budget)?;
        if w.kind != WitnessKind::Lambda {
            return Err(Error::InvalidParameters(format!(
                "no λ-witness for ({n},{k})"
            )));
        }
        certify_via_lambda(&w.group, n, k, budget)
    }
}

pub struct SearchStrategy;

impl CertifyStrategy for SearchStrategy {
    fn name(&self) -> &'static str {
        "search"
    }

    fn certify(&self, n: usize, k: usize, budget: &Budget) -> Result<Certificate> {
        search_regular_subgroup(n, k, budget.max_gens, budget)
    }
}

pub struct TableStrategy;

impl CertifyStrategy for TableStrategy {
    fn name(&self) -> &'static str {
        "table"
    }

    fn certify(&self, n: usize, k: usize, _: &Budget) -> Result<Certificate> {
        table_certificate(n, k)
    }
}

pub struct StrategyRegistry {
    strategies: Vec<Box<dyn CertifyStrategy>>,
    auto_order: Vec<&'static str>,
}

impl Default for StrategyRegistry {
    /// Every built-in strategy; `auto` tries the machine-verified ones only.
    fn default() -> StrategyRegistry {
        let mut r = StrategyRegistry::empty();
        r.register(Box::new(DirectStrategy));
        r.register(Box::new(LambdaStrategy));
        r.register(Box::new(SharpKStrategy));
        r.register(Box::new(SearchStrategy));
        r.register(Box::new(TableStrategy));
        r.auto_order = vec!["direct", "lambda", "sharp-k", "search"];
        r
    }
}

impl StrategyRegistry {
    pub fn empty() -> StrategyRegistry {
        StrategyRegistry {
            strategies: Vec::new(),
            auto_order: Vec::new(),
        }
    }

    /// Adds a strategy, replacing any with the same name.
    pub fn register(&mut self, s: Box<dyn CertifyStrategy>) {
        self.strategies.retain(|t| t.name() != s.name());
        self.strategies.push(s);
    }

    pub fn set_auto_order(&mut self, names: Vec<&'static str>) {
        self.auto_order = names;
    }

    pub fn get(&self, name: &str) -> Option<&dyn CertifyStrategy> {
        self.strategies
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    pub fn certify(&self, name: &str, n: usize, k: usize, budget: &Budget) -> Result<Certificate> {
        match name {
            "auto" => self.auto(n, k, budget),
            _ => self
                .get(name)
                .ok_or_else(|| {
                    Error::InvalidParameters(format!(
                        "unknown strategy {name}; known: auto, {}",
                        self.names().join(", ")
                    ))
                })?
                .certify(n, k, budget),
        }
    }

    /// First decisive certificate in auto order. An Unknown certificate is returned only
    /// when no strategy decides; if none produced a certificate at all, the collected
    /// reasons come back as `BudgetExhausted`.
    pub fn auto(&self, n: usize, k: usize, budget: &Budget) -> Result<Certificate> {
        let mut reasons = Vec::new();
        let mut undecided: Option<Certificate> = None;
        for name in &self.auto_order {
            let Some(s) = self.get(name) else { continue };
            match s.certify(n, k, budget) {
                Ok(c) if c.verdict != Verdict::Unknown => return Ok(c),
                Ok(c) => {
                    reasons.push(format!("{name}: undecided"));
                    undecided.get_or_insert(c);
                }
                Err(
                    e @ (Error::InvalidParameters(_)
                    | Error::BudgetExhausted(_)
                    | Error::CapExceeded { .. }),
                ) => reasons.push(format!("{name}: {e}")),
                Err(e) => return Err(e),
            }
        }
        match undecided {
            Some(mut c) => {
                c.notes.extend(reasons);
                Ok(c)
            }
            None => Err(Error::BudgetExhausted(reasons.join("; "))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::Method;

    #[test]
    fn registry_lookup() {
        let r = StrategyRegistry::default();
        assert_eq!(
            r.names(),
            vec!["direct", "lambda", "sharp-k", "search", "table"]
        );
        assert!(r.get("nope").is_none());
        assert!(r.certify("nope", 5, 2, &Budget::default()).is_err());
    }

    #[test]
    fn auto_picks_the_right_method() {
        let r = StrategyRegistry::default();
        let b = Budget::default();
        assert_eq!(
            r.auto(11, 4, &b).unwrap().method,
            Method::DirectRegularAction
        );
        assert_eq!(
            r.auto(6, 2, &b).unwrap().method,
            Method::ExhaustiveSearchRefutation
        );
        let c = r.auto(33, 30, &b).unwrap();
        assert_eq!(c.method, Method::LambdaTransitiveWitness);
        assert_eq!(c.verdict, Verdict::Cayley);
    }

    #[test]
    fn auto_without_options_reports_reasons() {
        let r = StrategyRegistry::default();
        match r.auto(13, 8, &Budget::default()) {
            Err(Error::BudgetExhausted(why)) => assert!(why.contains("search"), "{why}"),
            other => panic!("{other:?}"),
        }
    }

    struct Fixed;

    impl CertifyStrategy for Fixed {
        fn name(&self) -> &'static str {
            "table"
        }
        fn certify(&self, _: usize, _: usize, _: &Budget) -> Result<Certificate> {
            Err(Error::Internal("replaced".into()))
        }
    }

    #[test]
    fn register_replaces_by_name() {
        let mut r = StrategyRegistry::default();
        r.register(Box::new(Fixed));
        assert_eq!(r.names().len(), 5);
        assert!(matches!(
            r.certify("table", 6, 2, &Budget::default()),
            Err(Error::Internal(_))
        ));
    }
}
